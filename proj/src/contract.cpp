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

#include "sevdel/contract.hpp"

#include <json.hpp>

namespace sevdel {

std::string to_string(ContractState state) {
  switch (state) {
    case ContractState::kInit: return "INIT";
    case ContractState::kCreated: return "CREATED";
    case ContractState::kAccepted: return "ACCEPTED";
    case ContractState::kClaimed: return "CLAIMED";
    case ContractState::kUploaded: return "UPLOADED";
    case ContractState::kFulfilled: return "FULFILLED";
    case ContractState::kUnfulfilled: return "UNFULFILLED";
    case ContractState::kFinished: return "FINISHED";
    case ContractState::kAborted: return "ABORTED";
  }
  return "UNKNOWN";
}

std::string to_string(OwnerState state) {
  return state == OwnerState::kAccepted ? "ACCEPTED" : "UPLOADED";
}

namespace {

Digest op_digest(std::string_view op, std::uint64_t contract_id,
                 std::initializer_list<std::string_view> fields = {}) {
  Sha256 h;
  h.update("sevdel/op/").update(op).u64(contract_id);
  for (auto f : fields) h.field(f);
  return h.finish();
}

}  // namespace

ContractCore::ContractCore(Chain& chain, const Digest& params_digest)
    : chain_(chain), id_(chain.next_contract_id++), params_digest_(params_digest) {
  std::lock_guard lock(mu_);
  log("init", params_digest_, ContractState::kInit, chain_.ledger.balances());
}

std::string ContractCore::escrow_account() const { return "escrow:" + std::to_string(id_); }

ContractState ContractCore::state() const {
  std::lock_guard lock(mu_);
  return state_;
}

bool ContractCore::finalized() const {
  std::lock_guard lock(mu_);
  return finalized_;
}

std::uint64_t ContractCore::accept_count() const {
  std::lock_guard lock(mu_);
  return owners_.size();
}

std::map<std::string, OwnerRecord> ContractCore::owners() const {
  std::lock_guard lock(mu_);
  return owners_;
}

std::set<std::string> ContractCore::successful_auditors() const {
  std::lock_guard lock(mu_);
  return ru_;
}

bool ContractCore::tags_registered() const {
  std::lock_guard lock(mu_);
  return tags_;
}

void ContractCore::require_state(ContractState expected) const {
  if (state_ != expected) {
    throw Error(ErrorCode::kWrongState,
                "expected " + to_string(expected) + ", contract is " + to_string(state_));
  }
}

void ContractCore::require_window(std::uint64_t lo, std::uint64_t hi) const {
  const std::uint64_t now = chain_.clock.now();
  if (now < lo || now > hi) {
    throw Error(ErrorCode::kWrongWindow, "time " + std::to_string(now) + " outside [" +
                                             std::to_string(lo) + ", " + std::to_string(hi) +
                                             "]");
  }
}

void ContractCore::log(const std::string& op, const Digest& args_digest, ContractState before,
                       const std::map<std::string, std::int64_t>& balances_before) {
  nlohmann::json delta = nlohmann::json::object();
  const auto& after = chain_.ledger.balances();
  for (const auto& [account, value] : after) {
    auto it = balances_before.find(account);
    const std::int64_t old = it == balances_before.end() ? 0 : it->second;
    if (value != old) delta[account] = value - old;
  }
  nlohmann::json line = {
      {"seq", chain_.log.next_seq()},
      {"time", chain_.clock.now()},
      {"op", op},
      {"args_digest", to_hex(args_digest)},
      {"state_before", to_string(before)},
      {"state_after", to_string(state_)},
      {"ledger_delta", delta},
  };
  chain_.log.append(line.dump());
}

void ContractCore::service(const std::string& provider, const std::string& file_ref,
                           std::int64_t deposit, const Deadlines& d,
                           const Digest& args_digest) {
  std::lock_guard lock(mu_);
  require_state(ContractState::kInit);
  if (chain_.clock.now() > d.t1) {
    throw Error(ErrorCode::kDeadlinePassed, "service after T1");
  }
  if (!(d.t1 < d.t2 && d.t2 < d.t3 && d.t3 < d.t4)) {
    throw Error(ErrorCode::kInvalidArgument, "deadlines must satisfy T1 < T2 < T3 < T4");
  }
  if (deposit <= 0) throw Error(ErrorCode::kInvalidArgument, "deposit must be positive");
  const auto before = chain_.ledger.balances();
  chain_.ledger.transfer(provider, escrow_account(), deposit);
  provider_ = provider;
  file_ref_ = file_ref;
  deposit_ = deposit;
  deadlines_ = d;
  state_ = ContractState::kCreated;
  log("service", args_digest, ContractState::kInit, before);
}

void ContractCore::agree(const std::string& owner, std::int64_t stake) {
  std::lock_guard lock(mu_);
  require_state(ContractState::kCreated);
  require_window(deadlines_.t1, deadlines_.t2);
  if (stake <= 0) throw Error(ErrorCode::kInvalidStake, "stake must be positive");
  if (owners_.contains(owner)) throw Error(ErrorCode::kDuplicateOwner, owner);
  const auto before = chain_.ledger.balances();
  chain_.ledger.transfer(owner, escrow_account(), stake);
  owners_[owner] = OwnerRecord{stake, OwnerState::kAccepted, false};
  log("agree", op_digest("agree", id_, {owner, std::to_string(stake)}), state_, before);
}

void ContractCore::mark_tags_registered(const Digest& args_digest) {
  std::lock_guard lock(mu_);
  if (tags_) throw Error(ErrorCode::kDuplicateTags, "tags already registered");
  require_state(ContractState::kCreated);
  if (chain_.clock.now() > deadlines_.t2) {
    throw Error(ErrorCode::kWrongWindow, "tags must be registered by T2");
  }
  tags_ = true;
  log("register-tags", args_digest, state_, chain_.ledger.balances());
}

void ContractCore::claim() {
  std::lock_guard lock(mu_);
  require_state(ContractState::kCreated);
  if (chain_.clock.now() != deadlines_.t2) {
    throw Error(ErrorCode::kWrongWindow, "claim only at T2");
  }
  if (owners_.empty()) throw Error(ErrorCode::kWrongState, "no owner has accepted");
  if (!tags_) throw Error(ErrorCode::kWrongState, "tags not registered");
  state_ = ContractState::kClaimed;
  log("claim", op_digest("claim", id_), ContractState::kCreated, chain_.ledger.balances());
}

void ContractCore::check_audit_allowed(const std::string& owner) const {
  std::lock_guard lock(mu_);
  require_state(ContractState::kClaimed);
  require_window(deadlines_.t2, deadlines_.t3);
  auto it = owners_.find(owner);
  if (it == owners_.end()) throw Error(ErrorCode::kUnknownOwner, owner);
  if (it->second.state == OwnerState::kUploaded) {
    throw Error(ErrorCode::kWrongState, owner + " already proved leakage");
  }
}

void ContractCore::record_audit(const std::string& owner, bool accepted,
                                const Digest& args_digest) {
  check_audit_allowed(owner);
  std::lock_guard lock(mu_);
  const auto before = chain_.ledger.balances();
  if (accepted) {
    auto& rec = owners_.at(owner);
    chain_.ledger.transfer(escrow_account(), owner, rec.stake);
    rec.stake_returned = true;
    rec.state = OwnerState::kUploaded;
    ru_.insert(owner);
  }
  log(accepted ? "audit-accepted" : "audit-rejected", args_digest, state_, before);
}

void ContractCore::return_open_stakes() {
  for (auto& [owner, rec] : owners_) {
    if (!rec.stake_returned) {
      chain_.ledger.transfer(escrow_account(), owner, rec.stake);
      rec.stake_returned = true;
    }
  }
}

void ContractCore::refund() {
  std::lock_guard lock(mu_);
  require_state(ContractState::kClaimed);
  require_window(deadlines_.t3, deadlines_.t4);
  if (!ru_.empty()) throw Error(ErrorCode::kWrongState, "leakage was proven; refund barred");
  const auto before = chain_.ledger.balances();
  state_ = ContractState::kFulfilled;
  chain_.ledger.transfer(escrow_account(), provider_, deposit_);
  return_open_stakes();
  state_ = ContractState::kFinished;
  finalized_ = true;
  log("refund", op_digest("refund", id_), ContractState::kClaimed, before);
}

std::map<std::string, std::int64_t> ContractCore::penalty_shares(
    std::int64_t deposit, const std::map<std::string, std::int64_t>& stakes) {
  __int128 sum = 0;
  for (const auto& [_, r] : stakes) sum += r;
  std::map<std::string, std::int64_t> shares;
  if (sum <= 0) return shares;
  for (const auto& [owner, r] : stakes) {
    shares[owner] = static_cast<std::int64_t>(static_cast<__int128>(deposit) * r / sum);
  }
  return shares;
}

std::map<std::string, std::int64_t> ContractCore::penalty() {
  std::lock_guard lock(mu_);
  require_state(ContractState::kClaimed);
  require_window(deadlines_.t3, deadlines_.t4);
  if (ru_.empty()) throw Error(ErrorCode::kWrongState, "no accepted audit");
  const auto before = chain_.ledger.balances();
  std::map<std::string, std::int64_t> stakes;
  for (const auto& owner : ru_) stakes[owner] = owners_.at(owner).stake;
  const auto shares = penalty_shares(deposit_, stakes);
  state_ = ContractState::kUnfulfilled;
  for (const auto& [owner, share] : shares) {
    chain_.ledger.transfer(escrow_account(), owner, share);
  }
  return_open_stakes();
  state_ = ContractState::kAborted;
  log("penalty", op_digest("penalty", id_), ContractState::kClaimed, before);
  return shares;
}

void ContractCore::timer() {
  std::lock_guard lock(mu_);
  if (state_ == ContractState::kInit) throw Error(ErrorCode::kWrongState, "no service");
  if (chain_.clock.now() <= deadlines_.t4) {
    throw Error(ErrorCode::kWrongWindow, "timer runs only after T4");
  }
  if (finalized_) throw Error(ErrorCode::kWrongState, "escrow already finalized");
  if (state_ != ContractState::kAborted && state_ != ContractState::kCreated &&
      state_ != ContractState::kClaimed) {
    throw Error(ErrorCode::kWrongState, "nothing to finalize in " + to_string(state_));
  }
  const ContractState from = state_;
  const auto before = chain_.ledger.balances();
  return_open_stakes();
  chain_.ledger.transfer(escrow_account(), provider_,
                         chain_.ledger.balance(escrow_account()));
  state_ = ContractState::kAborted;
  finalized_ = true;
  log("timer", op_digest("timer", id_), from, before);
}

}  // namespace sevdel
