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

#ifndef SEVDEL_SCENARIO_HPP_
#define SEVDEL_SCENARIO_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "sevdel/bytes.hpp"
#include "sevdel/contract.hpp"

namespace sevdel {

struct ScenarioStep {
  std::uint64_t time = 0;
  std::string action;
  std::string expect;  // filled with the action's default when omitted
};

struct ScenarioFault {
  std::string kind;  // skip-encryption, tamper-block, leak-ciphertexts, double-delete
  std::vector<std::uint64_t> blocks;
};

struct Scenario {
  std::string name;
  std::uint64_t seed = 0;
  std::uint64_t file_size = 0;
  std::uint32_t s = 0;
  std::uint32_t sector_bits = 32;
  std::uint64_t challenge_count = 0;
  std::uint64_t audit_count = 0;  // 0 means challenge_count
  std::int64_t provider_balance = 1000;
  std::int64_t deposit = 1000;
  std::int64_t owner_balance = 100;
  std::int64_t stake = 10;
  Deadlines deadlines;
  std::vector<ScenarioStep> timeline;
  std::vector<ScenarioFault> faults;

  bool has_fault(std::string_view kind) const;
  const ScenarioFault* fault(std::string_view kind) const;

  // Throws kScenarioInvalid with the reason.
  static Scenario from_json(std::string_view text);
  void validate() const;
};

// Actions a timeline may contain, in no particular order.
const std::vector<std::string>& scenario_actions();
std::string default_expectation(std::string_view action);

struct RunOptions {
  std::optional<Bytes> content;  // replaces the seeded random file
  std::optional<std::filesystem::path> out_dir;
};

struct RunResult {
  std::string transcript;  // JSON lines
  bool ok = false;
  std::vector<std::string> mismatches;
};

RunResult run_scenario(const Scenario& scenario, const RunOptions& options = {});

struct BenchConfig {
  std::vector<std::uint64_t> sizes;
  unsigned reps = 3;
  std::uint32_t s = 8;
  std::uint32_t sector_bits = 32;
  std::uint64_t challenge_count = 32;
  std::uint64_t seed = 1;
};

// CSV with one row per (size, phase): median and p95 wall time in
// milliseconds, and the packed proof size.
std::string bench(const BenchConfig& config);

}  // namespace sevdel

#endif  // SEVDEL_SCENARIO_HPP_
