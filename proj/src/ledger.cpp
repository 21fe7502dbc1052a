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

#include "sevdel/ledger.hpp"

#include "sevdel/error.hpp"

namespace sevdel {

void Ledger::mint(const std::string& account, std::int64_t amount) {
  if (amount < 0) throw Error(ErrorCode::kInvalidArgument, "negative mint");
  balances_[account] += amount;
}

void Ledger::transfer(const std::string& from, const std::string& to, std::int64_t amount) {
  if (amount < 0) throw Error(ErrorCode::kInvalidArgument, "negative transfer");
  if (amount == 0) return;
  if (balance(from) < amount) {
    throw Error(ErrorCode::kInsufficientBalance,
                from + " holds " + std::to_string(balance(from)) + ", needs " +
                    std::to_string(amount));
  }
  balances_[from] -= amount;
  balances_[to] += amount;
}

std::int64_t Ledger::balance(const std::string& account) const {
  auto it = balances_.find(account);
  return it == balances_.end() ? 0 : it->second;
}

std::int64_t Ledger::total() const {
  std::int64_t sum = 0;
  for (const auto& [_, v] : balances_) sum += v;
  return sum;
}

std::string TransitionLog::str() const {
  std::string out;
  for (const auto& line : lines_) {
    out += line;
    out += '\n';
  }
  return out;
}

}  // namespace sevdel
