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

#include "sevdel/scenario.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <map>
#include <memory>
#include <set>
#include <sstream>

#include <json.hpp>

#include "sevdel/cloud.hpp"
#include "sevdel/delete_auth.hpp"
#include "sevdel/group/bls12_381.hpp"
#include "sevdel/owner.hpp"
#include "sevdel/wire.hpp"

namespace sevdel {

using Json = nlohmann::json;
using G = Bls12381;

namespace {

[[noreturn]] void invalid(const std::string& why) { throw Error(ErrorCode::kScenarioInvalid, why); }

const std::set<std::string>& known_faults() {
  static const std::set<std::string> kinds{"skip-encryption", "tamper-block",
                                           "leak-ciphertexts", "double-delete"};
  return kinds;
}

// What each action needs to have happened earlier in the timeline.
const std::map<std::string, std::vector<std::string>>& prerequisites() {
  static const std::map<std::string, std::vector<std::string>> deps{
      {"outsource", {}},
      {"encrypt", {"outsource"}},
      {"verify", {"encrypt"}},
      {"decrypt", {"encrypt"}},
      {"delete", {"encrypt"}},
      {"probe-decrypt", {"encrypt"}},
      {"probe-prove", {"encrypt"}},
      {"service", {}},
      {"agree", {"service"}},
      {"register-tags", {"service", "encrypt"}},
      {"claim", {"service"}},
      {"audit", {"service", "encrypt"}},
      {"refund", {"service"}},
      {"penalty", {"service"}},
      {"timer", {"service"}},
  };
  return deps;
}

std::string hex_digest(ByteSpan b) { return to_hex(sha256(b)); }

}  // namespace

const std::vector<std::string>& scenario_actions() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [k, _] : prerequisites()) v.push_back(k);
    return v;
  }();
  return names;
}

std::string default_expectation(std::string_view action) {
  if (action == "verify" || action == "audit") return "accept";
  if (action == "decrypt") return "match";
  if (action == "probe-decrypt" || action == "probe-prove") return "enclave-destroyed";
  return "ok";
}

bool Scenario::has_fault(std::string_view kind) const { return fault(kind) != nullptr; }

const ScenarioFault* Scenario::fault(std::string_view kind) const {
  for (const auto& f : faults) {
    if (f.kind == kind) return &f;
  }
  return nullptr;
}

Scenario Scenario::from_json(std::string_view text) {
  Scenario sc;
  try {
    const Json j = Json::parse(text);
    sc.name = j.at("name").get<std::string>();
    sc.seed = j.at("seed").get<std::uint64_t>();
    sc.file_size = j.at("file_size").get<std::uint64_t>();
    sc.s = j.at("s").get<std::uint32_t>();
    sc.sector_bits = j.at("sector_bits").get<std::uint32_t>();
    sc.challenge_count = j.at("challenge_count").get<std::uint64_t>();
    sc.audit_count = j.value("audit_count", sc.challenge_count);
    sc.provider_balance = j.value("provider_balance", sc.provider_balance);
    sc.deposit = j.value("deposit", sc.deposit);
    sc.owner_balance = j.value("owner_balance", sc.owner_balance);
    sc.stake = j.value("stake", sc.stake);
    const Json& d = j.at("deadlines");
    sc.deadlines = {d.at("t1").get<std::uint64_t>(), d.at("t2").get<std::uint64_t>(),
                    d.at("t3").get<std::uint64_t>(), d.at("t4").get<std::uint64_t>()};
    for (const Json& step : j.at("timeline")) {
      ScenarioStep st;
      st.time = step.at("time").get<std::uint64_t>();
      st.action = step.at("action").get<std::string>();
      st.expect = step.value("expect", default_expectation(st.action));
      sc.timeline.push_back(std::move(st));
    }
    if (j.contains("faults")) {
      for (const Json& f : j.at("faults")) {
        ScenarioFault fault;
        fault.kind = f.at("kind").get<std::string>();
        if (f.contains("blocks")) fault.blocks = f.at("blocks").get<std::vector<std::uint64_t>>();
        sc.faults.push_back(std::move(fault));
      }
    }
  } catch (const Json::exception& e) {
    invalid(e.what());
  }
  sc.validate();
  return sc;
}

void Scenario::validate() const {
  if (name.empty()) invalid("name is empty");
  if (file_size == 0) invalid("file_size must be positive");
  if (s == 0) invalid("s must be positive");
  if (sector_bits != 8 && sector_bits != 16 && sector_bits != 32) {
    invalid("sector_bits must be 8, 16 or 32");
  }
  const std::uint64_t block_bytes = std::uint64_t{s} * (sector_bits / 8);
  const std::uint64_t n = (file_size + block_bytes - 1) / block_bytes;
  if (challenge_count == 0 || challenge_count > n) invalid("challenge_count not in [1, n]");
  if (audit_count > n) invalid("audit_count exceeds n");
  if (provider_balance < 0 || owner_balance < 0 || deposit <= 0 || stake <= 0) {
    invalid("balances must be non-negative, deposit and stake positive");
  }
  const auto& d = deadlines;
  if (!(d.t1 < d.t2 && d.t2 < d.t3 && d.t3 < d.t4)) invalid("deadlines not increasing");
  if (timeline.empty()) invalid("empty timeline");
  std::set<std::string> done;
  std::uint64_t last = 0;
  for (const auto& step : timeline) {
    auto it = prerequisites().find(step.action);
    if (it == prerequisites().end()) invalid("unknown action " + step.action);
    if (step.time < last) invalid("timeline goes back in time at " + step.action);
    last = step.time;
    for (const auto& need : it->second) {
      if (!done.contains(need)) invalid(step.action + " before " + need);
    }
    done.insert(step.action);
  }
  for (const auto& f : faults) {
    if (!known_faults().contains(f.kind)) invalid("unknown fault " + f.kind);
    for (auto b : f.blocks) {
      if (b < 1 || b > n) invalid("fault block " + std::to_string(b) + " out of range");
    }
    if ((f.kind == "skip-encryption" || f.kind == "tamper-block") && f.blocks.empty()) {
      invalid(f.kind + " needs blocks");
    }
  }
}

namespace {

constexpr const char* kProvider = "provider";
constexpr const char* kOwner = "owner";

class Runner {
 public:
  Runner(const Scenario& sc, const RunOptions& opt)
      : sc_(sc), opt_(opt), params_(make_params<G>(sc.sector_bits)),
        master_(Rng::from_u64(sc.seed)), owner_rng_(master_.derive("owner")),
        cloud_rng_(master_.derive("cloud")), registry_(&chain_.clock) {
    if (opt.content) {
      content_ = *opt.content;
    } else {
      content_.resize(sc.file_size);
      master_.derive("file").fill(content_);
    }
    if (opt.out_dir) std::filesystem::create_directories(*opt.out_dir);
    server_keys_ = cloud::server_keygen(params_, cloud_rng_);
  }

  RunResult run() {
    emit({{"event", "scenario"},
          {"actor", "harness"},
          {"name", sc_.name},
          {"seed", sc_.seed},
          {"params_digest", to_hex(params_.digest())},
          {"A", to_hex(server_keys_.A.to_bytes())},
          {"group", params_.group_id}});
    for (const auto& step : sc_.timeline) {
      chain_.clock.advance_to(step.time);
      Json rec = {{"event", step.action}, {"expected", step.expect}};
      std::string outcome;
      const std::size_t log_mark = chain_.log.lines().size();
      try {
        outcome = dispatch(step.action, rec);
      } catch (const Error& e) {
        outcome = std::string(to_string(e.code()));
      }
      Json entries = Json::array();
      for (std::size_t k = log_mark; k < chain_.log.lines().size(); ++k) {
        entries.push_back(Json::parse(chain_.log.lines()[k]));
      }
      if (!entries.empty()) rec["contract_log"] = entries;
      rec["outcome"] = outcome;
      if (outcome != step.expect) {
        result_.mismatches.push_back(step.action + "@" + std::to_string(step.time) + ": expected " +
                                     step.expect + ", got " + outcome);
      }
      emit(std::move(rec));
    }
    Json balances = Json::object();
    for (const auto& [acct, v] : chain_.ledger.balances()) balances[acct] = v;
    result_.ok = result_.mismatches.empty();
    emit({{"event", "summary"},
          {"actor", "harness"},
          {"ok", result_.ok},
          {"mismatches", result_.mismatches},
          {"balances", balances},
          {"total_supply", chain_.ledger.total()}});
    if (opt_.out_dir) {
      write_text("transcript.jsonl", result_.transcript);
      write_text("contract_log.jsonl", chain_.log.str());
    }
    return std::move(result_);
  }

 private:
  void emit(Json rec) {
    rec["seq"] = seq_++;
    rec["time"] = chain_.clock.now();
    result_.transcript += rec.dump();
    result_.transcript += '\n';
  }

  void write(const std::string& name, ByteSpan data) {
    if (!opt_.out_dir) return;
    std::ofstream f(*opt_.out_dir / name, std::ios::binary);
    f.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
    if (!f) throw Error(ErrorCode::kIo, "cannot write " + name);
  }
  void write_text(const std::string& name, const std::string& text) { write(name, as_bytes(text)); }
  void write_json(const std::string& name, const Json& j) { write_text(name, j.dump(2) + "\n"); }

  std::string dispatch(const std::string& action, Json& rec) {
    if (action == "outsource") return outsource(rec);
    if (action == "encrypt") return encrypt(rec);
    if (action == "verify") return verify(rec);
    if (action == "decrypt") return decrypt(rec);
    if (action == "delete") return remove(rec);
    if (action == "probe-decrypt") return probe_decrypt(rec);
    if (action == "probe-prove") return probe_prove(rec);
    return contract_op(action, rec);
  }

  std::string outsource(Json& rec) {
    rec["actor"] = "owner";
    std::tie(manifest_, blocks_) =
        split(content_, sc_.s, sc_.sector_bits, {kOwner, sc_.name});
    owner_keys_ = owner::keygen(params_, owner_rng_);
    outsourced_ = owner::outsource(params_, owner_keys_, manifest_, blocks_, owner_rng_);
    Rng delete_rng = owner_rng_.derive("delete-key");
    delete_key_ = delete_keygen(delete_rng);
    rec["delete_public_key"] = to_hex(delete_key_.public_key);
    const Bytes tags = wire::encode(outsourced_.tags);
    rec["manifest"] = wire::to_json(manifest_);
    rec["W"] = to_hex(owner_keys_.W.to_bytes());
    rec["u"] = wire::detail::hex_list(outsourced_.generators.u);
    rec["owner_tags_sha256"] = hex_digest(tags);
    write_json("manifest.json", wire::to_json(manifest_));
    write("blocks.bin", wire::encode(blocks_));
    write("owner_tags.bin", tags);
    return "ok";
  }

  // Applies the cloud-side faults: tamper-block corrupts stored plaintext
  // before encryption, skip-encryption leaves junk in place of ciphertext.
  std::string encrypt(Json& rec) {
    rec["actor"] = "cloud";
    enclave_ = registry_.create(manifest_.file_id);
    stored_blocks_ = blocks_;
    if (const auto* f = sc_.fault("tamper-block")) {
      // The low byte of a block's first sector is always file data, never
      // padding, so flipping it keeps the stored matrix well-formed.
      for (auto b : f->blocks) stored_blocks_.at(b - 1, 0) ^= 1;
    }
    ct_ = cloud::encrypt_file(params_, enclave_, manifest_, stored_blocks_, cloud_rng_);
    if (const auto* f = sc_.fault("skip-encryption")) {
      Rng junk = cloud_rng_.derive("skip");
      for (auto b : f->blocks) {
        for (std::uint32_t j = 0; j < manifest_.s; ++j) {
          ct_.ep(b - 1, j) = params_.g1 * G::Scalar::random(junk);
          ct_.edp(b - 1, j) = params_.g1 * G::Scalar::random(junk);
        }
      }
    }
    v_gens_ = derive_v_generators(params_, manifest_.file_id, manifest_.s);
    sigma_ = cloud::gen_enc_tags(params_, server_keys_, manifest_, ct_,
                                 std::span<const G::G1>(outsourced_.generators.u),
                                 std::span<const G::G1>(v_gens_));
    const Bytes ctb = wire::encode(ct_), sig = wire::encode(sigma_);
    rec["V"] = to_hex(ct_.V.to_bytes());
    rec["enclave_id"] = enclave_.id();
    rec["ciphertext_sha256"] = hex_digest(ctb);
    rec["enc_tags_sha256"] = hex_digest(sig);
    write("ciphertext.bin", ctb);
    write("enc_tags.bin", sig);
    return "ok";
  }

  std::string verify(Json& rec) {
    rec["actor"] = "owner";
    auto ch = owner::gen_challenge<G>(manifest_, sc_.challenge_count, owner_rng_);
    auto proof = cloud::prove_encryption(params_, enclave_, server_keys_.A, manifest_,
                                         stored_blocks_, ct_, outsourced_.tags,
                                         std::span<const G::G1>(outsourced_.generators.u), ch,
                                         cloud_rng_);
    const bool ok = owner::verify_encryption_proof(
        params_, manifest_, std::span<const G::G1>(outsourced_.generators.u), owner_keys_.W,
        server_keys_.A, ct_.V, ch, proof);
    rec["challenge"] = wire::to_json(ch);
    rec["proof"] = wire::to_json(proof);
    rec["proof_bytes"] = wire::encode(proof).size();
    write_json("challenge.json", wire::to_json(ch));
    write_json("proof.json", wire::to_json(proof));
    return ok ? "accept" : "reject";
  }

  std::string decrypt(Json& rec) {
    rec["actor"] = "cloud";
    auto back = cloud::decrypt_file(params_, enclave_, manifest_, ct_);
    const Bytes recovered = join(manifest_, back);
    rec["recovered_sha256"] = hex_digest(recovered);
    rec["original_sha256"] = hex_digest(content_);
    return recovered == content_ ? "match" : "mismatch";
  }

  std::string remove(Json& rec) {
    rec["actor"] = "cloud";
    // The owner asks; the cloud acts only on a request signed by the key
    // registered at outsourcing.
    const auto request = sign_delete_request(delete_key_, manifest_.file_id, chain_.clock.now());
    const Json req_json = {{"file_id", to_hex(request.file_id)},
                           {"issued_at", request.issued_at},
                           {"signature", to_hex(request.signature)}};
    rec["request"] = req_json;
    write_json("delete_request.json", req_json);
    auto receipt = cloud::delete_file(registry_, request, delete_key_.public_key);
    rec["receipt"] = wire::to_json(receipt);
    write_json("receipt.json", wire::to_json(receipt));
    if (sc_.has_fault("double-delete")) {
      rec["first_outcome"] = "ok";
      cloud::delete_file(registry_, request, delete_key_.public_key);
    }
    return "ok";
  }

  std::string probe_decrypt(Json& rec) {
    rec["actor"] = "cloud";
    rec["enclave_state"] = to_string(registry_.lookup(manifest_.file_id).state());
    cloud::decrypt_block(params_, enclave_, ct_.ep(0, 0), ct_.edp(0, 0));
    return "ok";
  }

  std::string probe_prove(Json& rec) {
    rec["actor"] = "cloud";
    auto ch = owner::gen_challenge<G>(manifest_, sc_.challenge_count, owner_rng_);
    cloud::prove_encryption(params_, enclave_, server_keys_.A, manifest_, blocks_, ct_,
                            outsourced_.tags, std::span<const G::G1>(outsourced_.generators.u),
                            ch, cloud_rng_);
    return "ok";
  }

  // Without leaked ciphertexts the owner can only re-encrypt the plaintext
  // under V with its own randomness and hope.
  std::map<std::uint64_t, CiphertextRow<G>> owner_view() {
    if (sc_.has_fault("leak-ciphertexts")) return owner::rows_of(ct_);
    Rng guess = owner_rng_.derive("guess");
    std::map<std::uint64_t, CiphertextRow<G>> rows;
    for (std::uint64_t i = 0; i < manifest_.n; ++i) {
      CiphertextRow<G> row{i + 1, {}, {}};
      for (std::uint32_t j = 0; j < manifest_.s; ++j) {
        auto r = G::Scalar::random(guess);
        row.e_prime.push_back(params_.g1 * G::Scalar::from_u64(blocks_.at(i, j)) + ct_.V * r);
        row.e_dprime.push_back(params_.g1 * r);
      }
      rows.emplace(i + 1, std::move(row));
    }
    return rows;
  }

  std::string contract_op(const std::string& action, Json& rec) {
    rec["actor"] = "contract";
    if (action == "service") {
      chain_.ledger.mint(kProvider, sc_.provider_balance);
      chain_.ledger.mint(kOwner, sc_.owner_balance);
      contract_ = std::make_unique<Contract<G>>(chain_, params_);
      contract_->service(kProvider, sc_.name, server_keys_.A, sc_.deposit, sc_.deadlines);
      return "ok";
    }
    if (action == "agree") {
      contract_->agree(kOwner, sc_.stake);
      return "ok";
    }
    if (action == "register-tags") {
      contract_->register_tags(manifest_, sigma_,
                               std::span<const G::G1>(outsourced_.generators.u));
      return "ok";
    }
    if (action == "claim") {
      contract_->claim();
      return "ok";
    }
    if (action == "audit") {
      rec["actor"] = "owner";
      auto ch = contract_->audit_challenge(kOwner, sc_.audit_count ? sc_.audit_count : sc_.challenge_count);
      auto resp = owner::audit_respond(manifest_, owner_view(), sigma_, ch);
      rec["challenge"] = wire::to_json(ch);
      rec["response"] = wire::to_json(resp);
      write_json("audit_challenge.json", wire::to_json(ch));
      write_json("audit_response.json", wire::to_json(resp));
      return contract_->audit_verify(kOwner, ch, resp) ? "accept" : "reject";
    }
    if (action == "refund") {
      contract_->refund();
      return "ok";
    }
    if (action == "penalty") {
      auto shares = contract_->penalty();
      rec["shares"] = shares;
      return "ok";
    }
    contract_->timer();
    return "ok";
  }

  const Scenario& sc_;
  const RunOptions& opt_;
  SystemParams<G> params_;
  Rng master_, owner_rng_, cloud_rng_;
  Chain chain_;
  EnclaveRegistry registry_;
  Bytes content_;
  FileManifest manifest_;
  BlockMatrix blocks_, stored_blocks_;
  OwnerKeyPair<G> owner_keys_;
  DeleteKey delete_key_;
  owner::Outsourced<G> outsourced_;
  ServerKeyPair<G> server_keys_;
  EnclaveHandle enclave_;
  CiphertextMatrix<G> ct_;
  std::vector<G::G1> v_gens_;
  EncTagSet<G> sigma_;
  std::unique_ptr<Contract<G>> contract_;
  RunResult result_;
  std::uint64_t seq_ = 0;
};

}  // namespace

RunResult run_scenario(const Scenario& scenario, const RunOptions& options) {
  scenario.validate();
  return Runner(scenario, options).run();
}

namespace {

struct Stats {
  double median = 0, p95 = 0;
};

Stats summarize(std::vector<double> xs) {
  if (xs.empty()) return {};
  std::sort(xs.begin(), xs.end());
  const std::size_t n = xs.size();
  const double median = n % 2 ? xs[n / 2] : (xs[n / 2 - 1] + xs[n / 2]) / 2;
  // Nearest-rank percentile.
  const std::size_t rank = (95 * n + 99) / 100;
  return {median, xs[std::max<std::size_t>(rank, 1) - 1]};
}

template <typename F>
double time_ms(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

std::string bench(const BenchConfig& cfg) {
  static const char* kPhases[] = {"tagging", "encryption", "proof_gen", "proof_verify",
                                  "audit_verify"};
  std::ostringstream out;
  out << "size_bytes,phase,reps,median_ms,p95_ms,proof_bytes\n";
  const auto params = make_params<G>(cfg.sector_bits);
  for (std::uint64_t size : cfg.sizes) {
    std::map<std::string, std::vector<double>> t;
    std::size_t proof_bytes = 0;
    for (unsigned rep = 0; rep < cfg.reps; ++rep) {
      Rng rng = Rng::from_u64(cfg.seed).derive("bench-" + std::to_string(size) + "-" +
                                                  std::to_string(rep));
      Bytes content(size);
      rng.fill(content);
      auto [manifest, blocks] = split(content, cfg.s, cfg.sector_bits, {"bench", "file"});
      const std::uint64_t count = std::min<std::uint64_t>(cfg.challenge_count, manifest.n);
      auto keys = owner::keygen(params, rng);
      owner::Outsourced<G> out_data;
      t["tagging"].push_back(
          time_ms([&] { out_data = owner::outsource(params, keys, manifest, blocks, rng); }));
      const std::span<const G::G1> u(out_data.generators.u);
      auto server = cloud::server_keygen(params, rng);
      EnclaveRegistry registry;
      auto enclave = registry.create(manifest.file_id);
      CiphertextMatrix<G> ct;
      EncTagSet<G> sigma;
      auto v_gens = derive_v_generators(params, manifest.file_id, manifest.s);
      t["encryption"].push_back(time_ms([&] {
        ct = cloud::encrypt_file(params, enclave, manifest, blocks, rng);
        sigma = cloud::gen_enc_tags(params, server, manifest, ct, u,
                                    std::span<const G::G1>(v_gens));
      }));
      auto ch = owner::gen_challenge<G>(manifest, count, rng);
      EncProof<G> proof;
      t["proof_gen"].push_back(time_ms([&] {
        proof = cloud::prove_encryption(params, enclave, server.A, manifest, blocks, ct,
                                        out_data.tags, u, ch, rng);
      }));
      proof_bytes = wire::encode(proof).size();
      bool ok = false;
      t["proof_verify"].push_back(time_ms([&] {
        ok = owner::verify_encryption_proof(params, manifest, u, keys.W, server.A, ct.V, ch,
                                            proof);
      }));
      if (!ok) throw std::logic_error("benchmark proof did not verify");
      Chain chain;
      chain.ledger.mint("p", 1);
      chain.ledger.mint("o", 1);
      Contract<G> contract(chain, params);
      contract.service("p", "bench", server.A, 1, {1, 2, 3, 4});
      chain.clock.advance_to(1);
      contract.agree("o", 1);
      contract.register_tags(manifest, sigma, u);
      chain.clock.advance_to(2);
      contract.claim();
      auto audit_ch = contract.audit_challenge("o", count);
      auto resp = owner::audit_respond(manifest, ct, sigma, audit_ch);
      t["audit_verify"].push_back(time_ms([&] { ok = contract.audit_verify("o", audit_ch, resp); }));
      if (!ok) throw std::logic_error("benchmark audit was rejected");
    }
    for (const char* phase : kPhases) {
      auto st = summarize(t[phase]);
      out << size << ',' << phase << ',' << t[phase].size() << ',' << st.median << ','
          << st.p95 << ',' << proof_bytes << '\n';
    }
  }
  return out.str();
}

}  // namespace sevdel
