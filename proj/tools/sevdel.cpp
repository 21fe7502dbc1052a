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

// Command-line front end. Every verb runs the protocol from scratch up to
// the requested step inside one process: enclave state is never written
// to disk, so a "delete" cannot be undone by re-reading a file.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "sevdel/cloud.hpp"
#include "sevdel/group/bls12_381.hpp"
#include "sevdel/scenario.hpp"

namespace {

using sevdel::Scenario;
using sevdel::ScenarioStep;

struct Common {
  std::uint64_t seed = 1;
  std::uint32_t sectors = 8;
  std::uint32_t sector_bits = 32;
  std::uint64_t challenge_count = 16;
  std::uint64_t file_size = 4096;
  std::string input;
  std::string out;
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--seed", c.seed, "RNG seed")->capture_default_str();
  app->add_option("--sectors", c.sectors, "sectors per block (s)")->capture_default_str();
  app->add_option("--sector-bits", c.sector_bits, "bits per sector: 8, 16 or 32")
      ->capture_default_str();
  app->add_option("--challenge-count", c.challenge_count, "blocks per challenge")
      ->capture_default_str();
  app->add_option("--file-size", c.file_size, "bytes of seeded random content")
      ->capture_default_str();
  app->add_option("--input", c.input, "file to outsource instead of random content")
      ->check(CLI::ExistingFile);
  app->add_option("--out", c.out, "directory for artifacts and transcript");
}

sevdel::Bytes read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw sevdel::Error(sevdel::ErrorCode::kIo, "cannot read " + path);
  return sevdel::Bytes((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
}

sevdel::RunOptions options_of(const Common& c) {
  sevdel::RunOptions opt;
  if (!c.input.empty()) opt.content = read_file(c.input);
  if (!c.out.empty()) opt.out_dir = c.out;
  return opt;
}

Scenario base_scenario(const std::string& verb, const Common& c,
                       const sevdel::RunOptions& opt) {
  Scenario sc;
  sc.name = verb;
  sc.seed = c.seed;
  sc.file_size = opt.content ? opt.content->size() : c.file_size;
  sc.s = c.sectors;
  sc.sector_bits = c.sector_bits;
  const std::uint64_t block_bytes = std::uint64_t{c.sectors} * (c.sector_bits / 8);
  const std::uint64_t n = block_bytes ? (sc.file_size + block_bytes - 1) / block_bytes : 0;
  sc.challenge_count = std::min(c.challenge_count, n);
  sc.audit_count = sc.challenge_count;
  sc.deadlines = {1, 2, 3, 4};
  return sc;
}

void add(Scenario& sc, std::uint64_t t, const std::string& action, std::string expect = "") {
  sc.timeline.push_back({t, action, expect.empty() ? sevdel::default_expectation(action) : expect});
}

int run(const Scenario& sc, const sevdel::RunOptions& opt) {
  auto result = sevdel::run_scenario(sc, opt);
  std::cout << result.transcript;
  for (const auto& m : result.mismatches) std::cerr << "unexpected: " << m << "\n";
  return result.ok ? 0 : 1;
}

int setup(const Common& c) {
  using G = sevdel::Bls12381;
  auto params = sevdel::make_params<G>(c.sector_bits);
  auto rng = sevdel::Rng::from_u64(c.seed).derive("cloud");
  auto keys = sevdel::cloud::server_keygen(params, rng);
  nlohmann::json j = {{"group", params.group_id},
                      {"sector_bits", params.sector_bits},
                      {"g1", sevdel::to_hex(params.g1.to_bytes())},
                      {"g2", sevdel::to_hex(params.g2.to_bytes())},
                      {"hash_domains", params.hash_domains},
                      {"params_digest", sevdel::to_hex(params.digest())},
                      {"A", sevdel::to_hex(keys.A.to_bytes())}};
  std::cout << j.dump() << "\n";
  if (!c.out.empty()) {
    std::filesystem::create_directories(c.out);
    std::ofstream(std::filesystem::path(c.out) / "setup.json") << j.dump(2) << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sevdel: verifiable encrypted storage and deletion simulator"};
  app.require_subcommand(1);

  Common c;
  auto* setup_cmd = app.add_subcommand("setup", "generate system parameters and server keys");
  auto* outsource_cmd = app.add_subcommand("outsource", "split a file and tag its blocks");
  auto* encrypt_cmd = app.add_subcommand("encrypt", "outsource, then encrypt in an enclave");
  auto* verify_cmd = app.add_subcommand("verify", "challenge and verify the encryption proof");
  auto* delete_cmd = app.add_subcommand("delete", "destroy the enclave and probe afterwards");
  auto* audit_cmd = app.add_subcommand("audit", "leakage audit through the contract");
  bool no_leak = false;
  audit_cmd->add_flag("--no-leak", no_leak, "owner has no ciphertexts; audit must fail");
  for (auto* cmd : {setup_cmd, outsource_cmd, encrypt_cmd, verify_cmd, delete_cmd, audit_cmd}) {
    add_common(cmd, c);
  }

  auto* scenario_cmd = app.add_subcommand("run-scenario", "run a scenario file");
  std::string scenario_path, scenario_out;
  scenario_cmd->add_option("file", scenario_path, "scenario JSON")
      ->required()
      ->check(CLI::ExistingFile);
  scenario_cmd->add_option("--out", scenario_out, "directory for artifacts and transcript");

  auto* bench_cmd = app.add_subcommand("bench", "time each phase and print CSV");
  sevdel::BenchConfig bc;
  std::string bench_out;
  bench_cmd->add_option("--sizes", bc.sizes, "file sizes in bytes")->delimiter(',');
  bench_cmd->add_option("--reps", bc.reps, "repetitions per size")->capture_default_str();
  bench_cmd->add_option("--seed", bc.seed, "RNG seed")->capture_default_str();
  bench_cmd->add_option("--sectors", bc.s, "sectors per block")->capture_default_str();
  bench_cmd->add_option("--sector-bits", bc.sector_bits, "bits per sector")
      ->capture_default_str();
  bench_cmd->add_option("--challenge-count", bc.challenge_count, "blocks per challenge")
      ->capture_default_str();
  bench_cmd->add_option("--out", bench_out, "directory for bench.csv");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*setup_cmd) return setup(c);
    if (*scenario_cmd) {
      std::stringstream ss;
      ss << std::ifstream(scenario_path).rdbuf();
      sevdel::RunOptions opt;
      if (!scenario_out.empty()) opt.out_dir = scenario_out;
      return run(Scenario::from_json(ss.str()), opt);
    }
    if (*bench_cmd) {
      const std::string csv = sevdel::bench(bc);
      std::cout << csv;
      if (!bench_out.empty()) {
        std::filesystem::create_directories(bench_out);
        std::ofstream(std::filesystem::path(bench_out) / "bench.csv") << csv;
      }
      return 0;
    }

    const auto opt = options_of(c);
    const std::string verb = app.get_subcommands().front()->get_name();
    Scenario sc = base_scenario(verb, c, opt);
    add(sc, 0, "outsource");
    if (verb == "encrypt") add(sc, 0, "encrypt");
    if (verb == "verify") {
      add(sc, 0, "encrypt");
      add(sc, 0, "verify");
    }
    if (verb == "delete") {
      add(sc, 0, "encrypt");
      add(sc, 0, "verify");
      add(sc, 1, "delete");
      add(sc, 1, "probe-decrypt");
      add(sc, 1, "probe-prove");
    }
    if (verb == "audit") {
      if (!no_leak) sc.faults.push_back({"leak-ciphertexts", {}});
      add(sc, 0, "encrypt");
      add(sc, 0, "service");
      add(sc, 1, "agree");
      add(sc, 1, "register-tags");
      add(sc, 2, "claim");
      add(sc, 2, "audit", no_leak ? "reject" : "accept");
      add(sc, 3, no_leak ? "refund" : "penalty");
      if (!no_leak) add(sc, 5, "timer");
    }
    return run(sc, opt);
  } catch (const sevdel::Error& e) {
    std::cerr << "error: " << sevdel::to_string(e.code()) << ": " << e.what() << "\n";
    return 2;
  }
}
