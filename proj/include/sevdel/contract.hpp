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

#ifndef SEVDEL_CONTRACT_HPP_
#define SEVDEL_CONTRACT_HPP_

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "sevdel/bytes.hpp"
#include "sevdel/challenge.hpp"
#include "sevdel/cloud.hpp"
#include "sevdel/error.hpp"
#include "sevdel/file_codec.hpp"
#include "sevdel/hash.hpp"
#include "sevdel/ledger.hpp"
#include "sevdel/params.hpp"
#include "sevdel/types.hpp"

namespace sevdel {

enum class ContractState {
  kInit,
  kCreated,
  kAccepted,
  kClaimed,
  kUploaded,
  kFulfilled,
  kUnfulfilled,
  kFinished,
  kAborted,
};
std::string to_string(ContractState state);

enum class OwnerState { kAccepted, kUploaded };
std::string to_string(OwnerState state);

struct Deadlines {
  std::uint64_t t1 = 0, t2 = 0, t3 = 0, t4 = 0;
};

struct OwnerRecord {
  std::int64_t stake = 0;
  OwnerState state = OwnerState::kAccepted;
  bool stake_returned = false;
};

// The group-independent part of the contract: states, deadlines, money.
// Every successful transition appends one line to the chain's log.
// Operations that fail throw and leave state and ledger untouched.
class ContractCore {
 public:
  ContractCore(Chain& chain, const Digest& params_digest);

  std::uint64_t id() const { return id_; }
  std::string escrow_account() const;
  ContractState state() const;
  bool finalized() const;
  const std::string& provider() const { return provider_; }
  const std::string& file_ref() const { return file_ref_; }
  std::int64_t deposit() const { return deposit_; }
  const Deadlines& deadlines() const { return deadlines_; }
  std::uint64_t accept_count() const;
  std::map<std::string, OwnerRecord> owners() const;
  std::set<std::string> successful_auditors() const;
  const Digest& params_digest() const { return params_digest_; }

  void service(const std::string& provider, const std::string& file_ref, std::int64_t deposit,
               const Deadlines& deadlines, const Digest& args_digest);
  void agree(const std::string& owner, std::int64_t stake);
  // Tags may be registered once, while the contract is CREATED.
  void mark_tags_registered(const Digest& args_digest);
  bool tags_registered() const;
  void claim();

  // Checks state, window and membership for an audit by `owner`; throws
  // on failure. The caller verifies the response and then reports the
  // verdict through record_audit.
  void check_audit_allowed(const std::string& owner) const;
  void record_audit(const std::string& owner, bool accepted, const Digest& args_digest);

  void refund();
  // Returns the share paid to each successful auditor.
  std::map<std::string, std::int64_t> penalty();
  void timer();

  // Shares floor(deposit * R_i / sum R) for the given stakes.
  static std::map<std::string, std::int64_t> penalty_shares(
      std::int64_t deposit, const std::map<std::string, std::int64_t>& stakes);

 private:
  void require_state(ContractState expected) const;
  void require_window(std::uint64_t lo, std::uint64_t hi) const;
  void log(const std::string& op, const Digest& args_digest, ContractState before,
           const std::map<std::string, std::int64_t>& balances_before);
  void return_open_stakes();

  Chain& chain_;
  mutable std::mutex mu_;
  std::uint64_t id_;
  Digest params_digest_;
  ContractState state_ = ContractState::kInit;
  bool finalized_ = false;
  bool tags_ = false;
  std::string provider_;
  std::string file_ref_;
  std::int64_t deposit_ = 0;
  Deadlines deadlines_;
  std::map<std::string, OwnerRecord> owners_;
  std::set<std::string> ru_;
};

// The contract as deployed for one file: the core state machine plus the
// registered encrypted-block tags and the audit verifier.
template <PairingGroup G>
class Contract {
 public:
  using G1 = typename G::G1;
  using G2 = typename G::G2;

  Contract(Chain& chain, const SystemParams<G>& params)
      : params_(params), core_(chain, params.digest()) {}

  ContractCore& core() { return core_; }
  const ContractCore& core() const { return core_; }
  ContractState state() const { return core_.state(); }

  void service(const std::string& provider, const std::string& file_ref, const G2& A,
               std::int64_t deposit, const Deadlines& deadlines) {
    Sha256 h;
    h.update("sevdel/op/service").field(provider).field(file_ref).field(A.to_bytes());
    h.u64(static_cast<std::uint64_t>(deposit));
    h.u64(deadlines.t1).u64(deadlines.t2).u64(deadlines.t3).u64(deadlines.t4);
    core_.service(provider, file_ref, deposit, deadlines, h.finish());
    A_ = A;
  }

  void agree(const std::string& owner, std::int64_t stake) { core_.agree(owner, stake); }

  // Uploads (I_M, Sigma) together with the public sector generators u the
  // audit equation needs.
  void register_tags(const FileManifest& manifest, const EncTagSet<G>& sigma,
                     std::span<const G1> u) {
    if (sigma.sigma.size() != manifest.n || u.size() != manifest.s) {
      throw Error(ErrorCode::kDimensionMismatch, "tags / generators do not match manifest");
    }
    Sha256 h;
    h.update("sevdel/op/register-tags").field(manifest.file_id).u64(manifest.n).u64(manifest.s);
    for (const auto& x : sigma.sigma) h.field(x.to_bytes());
    for (const auto& x : u) h.field(x.to_bytes());
    core_.mark_tags_registered(h.finish());
    manifest_ = manifest;
    sigma_ = sigma;
    u_.assign(u.begin(), u.end());
    v_gens_ = derive_v_generators(params_, manifest.file_id, manifest.s);
  }

  const EncTagSet<G>& registered_tags() const { return sigma_; }
  const std::vector<G1>& registered_generators() const { return u_; }
  const FileManifest& registered_manifest() const { return manifest_; }

  void claim() { core_.claim(); }

  // The contract picks gamma_i so an owner cannot choose the challenge.
  // Seeded from the contract id, the owner and a per-owner counter.
  Challenge<G> audit_challenge(const std::string& owner, std::uint64_t count) {
    core_.check_audit_allowed(owner);
    std::uint64_t round = rounds_[owner]++;
    Sha256 h;
    h.update("sevdel/audit-challenge").field(core_.params_digest()).u64(core_.id());
    h.field(owner).u64(round);
    Rng rng(h.finish());
    auto ch = sample_challenge<G>(manifest_.file_id, manifest_.n, count, rng);
    issued_[owner] = ch;
    return ch;
  }

  // Accepts iff the response matches the issued challenge, Q1 aggregates
  // the revealed rows, and e(Q2, g2) == e(prod base_i^{gamma_i}, A). An
  // accepted audit returns the owner's stake and arms Penalty.
  bool audit_verify(const std::string& owner, const Challenge<G>& challenge,
                    const AuditResponse<G>& response) {
    core_.check_audit_allowed(owner);
    auto it = issued_.find(owner);
    if (it == issued_.end() || !(it->second == challenge)) {
      throw Error(ErrorCode::kInvalidArgument, "challenge was not issued to " + owner);
    }
    const bool ok = check_response(challenge, response);
    Sha256 h;
    h.update("sevdel/op/audit").field(owner);
    hash_challenge(h, challenge);
    h.field(response.q2.to_bytes());
    core_.record_audit(owner, ok, h.finish());
    issued_.erase(it);
    return ok;
  }

  // The pure verification equation, exposed for tests.
  bool check_response(const Challenge<G>& challenge, const AuditResponse<G>& r) const {
    const std::size_t s = manifest_.s;
    const std::size_t q = challenge.entries.size();
    if (r.revealed.size() != q || r.q1_prime.size() != s || r.q1_dprime.size() != s) {
      return false;
    }
    std::vector<typename G::Scalar> gammas;
    for (std::size_t k = 0; k < q; ++k) {
      const auto& row = r.revealed[k];
      if (row.index != challenge.entries[k].index || row.e_prime.size() != s ||
          row.e_dprime.size() != s) {
        return false;
      }
      gammas.push_back(challenge.entries[k].coeff);
    }
    std::vector<G1> column(q);
    for (std::size_t j = 0; j < s; ++j) {
      for (std::size_t k = 0; k < q; ++k) column[k] = r.revealed[k].e_prime[j];
      if (!(G::msm(column, gammas) == r.q1_prime[j])) return false;
      for (std::size_t k = 0; k < q; ++k) column[k] = r.revealed[k].e_dprime[j];
      if (!(G::msm(column, gammas) == r.q1_dprime[j])) return false;
    }
    std::vector<G1> bases;
    for (const auto& row : r.revealed) {
      bases.push_back(enc_tag_base<G>(params_, manifest_.file_id, row.index, row.e_prime,
                                      row.e_dprime, u_, v_gens_));
    }
    return G::pairing_eq(r.q2, params_.g2, G::msm(bases, gammas), A_);
  }

  void refund() { core_.refund(); }
  std::map<std::string, std::int64_t> penalty() { return core_.penalty(); }
  void timer() { core_.timer(); }

 private:
  SystemParams<G> params_;
  ContractCore core_;
  G2 A_;
  FileManifest manifest_;
  EncTagSet<G> sigma_;
  std::vector<G1> u_;
  std::vector<G1> v_gens_;
  std::map<std::string, std::uint64_t> rounds_;
  std::map<std::string, Challenge<G>> issued_;
};

}  // namespace sevdel

#endif  // SEVDEL_CONTRACT_HPP_
