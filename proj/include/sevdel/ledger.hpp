/*
 * Copyright 2026 The sevdel Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef SEVDEL_LEDGER_HPP_
#define SEVDEL_LEDGER_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "sevdel/clock.hpp"

namespace sevdel {

// Integer balances. Accounts spring into existence at zero.
class Ledger {
 public:
  // Genesis allocation. Not a contract transition, so it is the only way
  // the total supply changes.
  void mint(const std::string& account, std::int64_t amount);
  void transfer(const std::string& from, const std::string& to, std::int64_t amount);

  std::int64_t balance(const std::string& account) const;
  std::int64_t total() const;
  const std::map<std::string, std::int64_t>& balances() const { return balances_; }

 private:
  std::map<std::string, std::int64_t> balances_;
};

// Append-only JSON-lines record of contract transitions.
class TransitionLog {
 public:
  void append(std::string line) { lines_.push_back(std::move(line)); }
  const std::vector<std::string>& lines() const { return lines_; }
  std::uint64_t next_seq() const { return lines_.size(); }
  std::string str() const;

 private:
  std::vector<std::string> lines_;
};

// Everything contracts share: money, time and the log.
struct Chain {
  Ledger ledger;
  LogicalClock clock;
  TransitionLog log;
  std::uint64_t next_contract_id = 1;
};

}  // namespace sevdel

#endif  // SEVDEL_LEDGER_HPP_
