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

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "sevdel/error.hpp"
#include "sevdel/scenario.hpp"

namespace sevdel {
namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

Scenario load(const std::string& name) {
  return Scenario::from_json(slurp(std::filesystem::path(SEVDEL_SCENARIO_DIR) / (name + ".json")));
}

class ShippedScenario : public ::testing::TestWithParam<const char*> {};

TEST_P(ShippedScenario, MeetsEveryExpectation) {
  auto result = run_scenario(load(GetParam()));
  for (const auto& m : result.mismatches) ADD_FAILURE() << m;
  EXPECT_TRUE(result.ok);
}

INSTANTIATE_TEST_SUITE_P(All, ShippedScenario,
                         ::testing::Values("honest", "skip-encryption", "delete", "leak-audit",
                                           "tamper-block", "double-delete"));

TEST(Scenario, TranscriptIsByteIdenticalAcrossRuns) {
  for (const char* name : {"leak-audit", "double-delete"}) {
    auto sc = load(name);
    EXPECT_EQ(run_scenario(sc).transcript, run_scenario(sc).transcript) << name;
  }
}

TEST(Scenario, SeedChangesTranscript) {
  auto sc = load("double-delete");
  auto a = run_scenario(sc).transcript;
  sc.seed += 1;
  EXPECT_NE(a, run_scenario(sc).transcript);
}

TEST(Scenario, LeakAuditSettlesLedgerExactly) {
  auto result = run_scenario(load("leak-audit"));
  std::istringstream in(result.transcript);
  std::string line, last;
  while (std::getline(in, line)) last = line;
  auto summary = nlohmann::json::parse(last);
  EXPECT_EQ(summary.at("balances").at("owner"), 650);
  EXPECT_EQ(summary.at("balances").at("provider"), 400);
  EXPECT_EQ(summary.at("balances").at("escrow:1"), 0);
  EXPECT_EQ(summary.at("total_supply"), 1050);
}

TEST(Scenario, WrongExpectationIsReportedNotThrown) {
  auto sc = load("double-delete");
  for (auto& st : sc.timeline) {
    if (st.action == "delete") st.expect = "ok";
  }
  auto result = run_scenario(sc);
  EXPECT_FALSE(result.ok);
  ASSERT_EQ(result.mismatches.size(), 1u);
}

TEST(Scenario, ArtifactsWrittenToOutDir) {
  auto dir = std::filesystem::temp_directory_path() / "sevdel_scenario_test";
  std::filesystem::remove_all(dir);
  RunOptions opt;
  opt.out_dir = dir;
  auto result = run_scenario(load("leak-audit"), opt);
  ASSERT_TRUE(result.ok);
  for (const char* f : {"manifest.json", "blocks.bin", "owner_tags.bin", "ciphertext.bin",
                        "enc_tags.bin", "challenge.json", "proof.json", "audit_challenge.json",
                        "audit_response.json", "transcript.jsonl", "contract_log.jsonl"}) {
    EXPECT_TRUE(std::filesystem::exists(dir / f)) << f;
  }
  EXPECT_EQ(slurp(dir / "transcript.jsonl"), result.transcript);
  std::filesystem::remove_all(dir);
}

Scenario minimal() {
  Scenario sc;
  sc.name = "m";
  sc.seed = 9;
  sc.file_size = 64;
  sc.s = 2;
  sc.sector_bits = 8;
  sc.challenge_count = 4;
  sc.deadlines = {1, 2, 3, 4};
  sc.timeline = {{0, "outsource", "ok"}};
  return sc;
}

void expect_invalid(const Scenario& sc) {
  try {
    sc.validate();
    ADD_FAILURE() << "accepted invalid scenario";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kScenarioInvalid) << e.what();
  }
}

TEST(ScenarioValidation, RejectsBadShapes) {
  EXPECT_NO_THROW(minimal().validate());
  {
    auto sc = minimal();
    sc.sector_bits = 12;
    expect_invalid(sc);
  }
  {
    auto sc = minimal();
    sc.deadlines = {1, 1, 3, 4};
    expect_invalid(sc);
  }
  {
    auto sc = minimal();
    sc.timeline = {{0, "verify", "accept"}};
    expect_invalid(sc);
  }
  {
    auto sc = minimal();
    sc.timeline = {{0, "outsource", "ok"}, {0, "fly", "ok"}};
    expect_invalid(sc);
  }
  {
    auto sc = minimal();
    sc.timeline = {{2, "outsource", "ok"}, {1, "encrypt", "ok"}};
    expect_invalid(sc);
  }
  {
    auto sc = minimal();
    sc.challenge_count = 1000;
    expect_invalid(sc);
  }
  {
    auto sc = minimal();
    sc.faults = {{"tamper-block", {99}}};
    expect_invalid(sc);
  }
}

TEST(ScenarioValidation, JsonErrorsAreScenarioInvalid) {
  for (const char* text : {"{", "[]", R"({"name":"x"})"}) {
    try {
      Scenario::from_json(text);
      ADD_FAILURE() << text;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kScenarioInvalid) << text;
    }
  }
}

TEST(Bench, EmptySizesGiveHeaderOnly) {
  BenchConfig cfg;
  EXPECT_EQ(bench(cfg), "size_bytes,phase,reps,median_ms,p95_ms,proof_bytes\n");
}

TEST(Bench, ProofSizeIndependentOfFileSize) {
  BenchConfig cfg;
  cfg.sizes = {256, 1024};
  cfg.reps = 1;
  cfg.s = 4;
  cfg.sector_bits = 8;
  cfg.challenge_count = 8;
  std::istringstream in(bench(cfg));
  std::string line;
  std::getline(in, line);
  std::set<std::string> proof_sizes;
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    proof_sizes.insert(line.substr(line.rfind(',') + 1));
  }
  EXPECT_EQ(rows, 10);
  EXPECT_EQ(proof_sizes.size(), 1u);
}

}  // namespace
}  // namespace sevdel
