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

#include <deque>
#include <functional>
#include <json.hpp>
#include <set>

#include "pipeline.hpp"
#include "sevdel/contract.hpp"
#include "sevdel/group/bls12_381.hpp"
#include "sevdel/wire.hpp"
#include "toy_group.hpp"

namespace sevdel {
namespace {

using sevdel::testing::Pipeline;
using toy::ToyGroup;

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kFormat;
}

Digest digest_of(std::string_view s) { return sha256(as_bytes(s)); }

struct Fixture {
  Chain chain;
  SystemParams<ToyGroup> params = make_params<ToyGroup>(16);
  Fixture() {
    chain.ledger.mint("cloud", 100);
    chain.ledger.mint("alice", 10);
    chain.ledger.mint("bob", 3);
  }
};

TEST(ContractInit, StartsEmptyAndIndependent) {
  Fixture f;
  Contract<ToyGroup> a(f.chain, f.params), b(f.chain, f.params);
  EXPECT_EQ(a.state(), ContractState::kInit);
  EXPECT_NE(a.core().id(), b.core().id());
  EXPECT_EQ(a.core().accept_count(), 0u);
  EXPECT_FALSE(a.core().tags_registered());
  auto first = nlohmann::json::parse(f.chain.log.lines().at(0));
  EXPECT_EQ(first["op"], "init");
  EXPECT_EQ(first["args_digest"], to_hex(f.params.digest()));
}

TEST(ContractService, DepositBoundaryAndErrors) {
  Fixture f;
  Contract<ToyGroup> c(f.chain, f.params);
  const std::int64_t total = f.chain.ledger.total();
  EXPECT_EQ(code_of([&] { c.service("cloud", "N", {}, 101, {1, 2, 3, 4}); }),
            ErrorCode::kInsufficientBalance);
  EXPECT_EQ(c.state(), ContractState::kInit);
  EXPECT_EQ(f.chain.ledger.balance("cloud"), 100);
  EXPECT_EQ(code_of([&] { c.service("cloud", "N", {}, 10, {1, 3, 2, 4}); }),
            ErrorCode::kInvalidArgument);
  c.service("cloud", "N", {}, 100, {1, 2, 3, 4});
  EXPECT_EQ(f.chain.ledger.balance("cloud"), 0);
  EXPECT_EQ(f.chain.ledger.balance(c.core().escrow_account()), 100);
  EXPECT_EQ(f.chain.ledger.total(), total);
  EXPECT_EQ(code_of([&] { c.service("cloud", "N", {}, 1, {1, 2, 3, 4}); }),
            ErrorCode::kWrongState);

  Contract<ToyGroup> late(f.chain, f.params);
  f.chain.clock.advance_to(5);
  EXPECT_EQ(code_of([&] { late.service("alice", "M", {}, 1, {1, 6, 7, 8}); }),
            ErrorCode::kDeadlinePassed);
}

TEST(ContractAgree, StakeRulesAndWindow) {
  Fixture f;
  Contract<ToyGroup> c(f.chain, f.params);
  c.service("cloud", "N", {}, 50, {1, 3, 5, 7});
  EXPECT_EQ(code_of([&] { c.agree("alice", 1); }), ErrorCode::kWrongWindow);  // now = 0 < T1
  f.chain.clock.advance_to(1);
  EXPECT_EQ(code_of([&] { c.agree("alice", 0); }), ErrorCode::kInvalidStake);
  EXPECT_EQ(code_of([&] { c.agree("alice", 11); }), ErrorCode::kInsufficientBalance);
  c.agree("alice", 4);
  EXPECT_EQ(c.core().accept_count(), 1u);
  EXPECT_EQ(c.core().owners().at("alice").state, OwnerState::kAccepted);
  EXPECT_EQ(code_of([&] { c.agree("alice", 1); }), ErrorCode::kDuplicateOwner);
  f.chain.clock.advance_to(4);
  EXPECT_EQ(code_of([&] { c.agree("bob", 1); }), ErrorCode::kWrongWindow);
}

TEST(ContractClaim, OnlyAtT2AndTagsRoundTrip) {
  Pipeline<ToyGroup> p(1, 60, 2, 16);
  Chain chain;
  chain.ledger.mint("cloud", 10);
  chain.ledger.mint("alice", 10);
  Contract<ToyGroup> c(chain, p.params);
  c.service("cloud", "N", p.server_keys.A, 10, {1, 3, 5, 7});
  chain.clock.advance_to(1);
  c.agree("alice", 2);
  EXPECT_EQ(code_of([&] { c.claim(); }), ErrorCode::kWrongWindow);
  chain.clock.advance_to(3);
  EXPECT_EQ(code_of([&] { c.claim(); }), ErrorCode::kWrongState);  // no tags yet
  c.register_tags(p.manifest, p.sigma, p.u());
  EXPECT_EQ(code_of([&] { c.register_tags(p.manifest, p.sigma, p.u()); }),
            ErrorCode::kDuplicateTags);
  EXPECT_EQ(wire::encode(c.registered_tags()), wire::encode(p.sigma));
  c.claim();
  EXPECT_EQ(c.state(), ContractState::kClaimed);

  Contract<ToyGroup> late(chain, p.params);
  chain.ledger.mint("cloud2", 5);
  late.service("cloud2", "M", p.server_keys.A, 5, {3, 4, 5, 6});
  late.agree("alice", 1);
  late.register_tags(p.manifest, p.sigma, p.u());
  chain.clock.advance_to(5);
  EXPECT_EQ(code_of([&] { late.claim(); }), ErrorCode::kWrongWindow);
}

// Drives one file to CLAIMED with alice (stake 4) and bob (stake 2).
template <typename G>
struct AuditSetup {
  Pipeline<G> p;
  Chain chain;
  Contract<G> c;
  explicit AuditSetup(std::uint64_t seed, std::size_t len = 80)
      : p(seed, len, 2, 16), c((mint(), chain), p.params) {
    c.service("cloud", "N", p.server_keys.A, 1000, {1, 2, 3, 4});
    chain.clock.advance_to(1);
    c.agree("alice", 4);
    c.agree("bob", 2);
    c.register_tags(p.manifest, p.sigma, p.u());
    chain.clock.advance_to(2);
    c.claim();
  }
  void mint() {
    chain.ledger.mint("cloud", 1000);
    chain.ledger.mint("alice", 10);
    chain.ledger.mint("bob", 10);
  }
};

TEST(ContractAudit, LeakedCiphertextsTriggerPenalty) {
  AuditSetup<Bls12381> s(2);
  const std::int64_t total = s.chain.ledger.total();
  auto ch = s.c.audit_challenge("alice", 3);
  auto resp = owner::audit_respond(s.p.manifest, s.p.ct, s.p.sigma, ch);
  EXPECT_TRUE(s.c.audit_verify("alice", ch, resp));
  EXPECT_EQ(s.chain.ledger.balance("alice"), 10);  // stake back at acceptance
  EXPECT_EQ(code_of([&] { s.c.audit_challenge("alice", 3); }), ErrorCode::kWrongState);
  EXPECT_EQ(code_of([&] { s.c.audit_challenge("carol", 3); }), ErrorCode::kUnknownOwner);
  EXPECT_EQ(code_of([&] { s.c.refund(); }), ErrorCode::kWrongWindow);
  s.chain.clock.advance_to(3);
  EXPECT_EQ(code_of([&] { s.c.refund(); }), ErrorCode::kWrongState);
  auto shares = s.c.penalty();
  EXPECT_EQ(shares.at("alice"), 1000);
  EXPECT_EQ(s.chain.ledger.balance("alice"), 1010);
  EXPECT_EQ(s.chain.ledger.balance("bob"), 10);
  EXPECT_EQ(s.chain.ledger.balance("cloud"), 0);
  EXPECT_EQ(s.chain.ledger.total(), total);
  EXPECT_EQ(s.c.state(), ContractState::kAborted);
  EXPECT_EQ(code_of([&] { s.c.timer(); }), ErrorCode::kWrongWindow);
  s.chain.clock.advance_to(5);
  s.c.timer();
  EXPECT_EQ(code_of([&] { s.c.timer(); }), ErrorCode::kWrongState);
  EXPECT_EQ(s.chain.ledger.balance(s.c.core().escrow_account()), 0);
}

TEST(ContractAudit, ForgedSigmaRejected) {
  AuditSetup<Bls12381> s(3);
  auto ch = s.c.audit_challenge("alice", 3);
  auto resp = owner::audit_respond(s.p.manifest, s.p.ct, s.p.sigma, ch);
  resp.q2 = resp.q2 + Bls12381::G1::generator();
  EXPECT_FALSE(s.c.audit_verify("alice", ch, resp));
  EXPECT_TRUE(s.c.core().successful_auditors().empty());
  EXPECT_EQ(s.chain.ledger.balance("alice"), 6);
  // A rejected audit may be retried with a fresh challenge.
  auto ch2 = s.c.audit_challenge("alice", 3);
  EXPECT_NE(ch2, ch);
  EXPECT_TRUE(s.c.audit_verify("alice", ch2,
                               owner::audit_respond(s.p.manifest, s.p.ct, s.p.sigma, ch2)));
}

TEST(ContractAudit, ChallengeMustBeIssued) {
  AuditSetup<ToyGroup> s(4);
  auto own = owner::gen_challenge<ToyGroup>(s.p.manifest, 3, 1);
  auto resp = owner::audit_respond(s.p.manifest, s.p.ct, s.p.sigma, own);
  EXPECT_EQ(code_of([&] { s.c.audit_verify("alice", own, resp); }),
            ErrorCode::kInvalidArgument);
}

TEST(ContractAudit, GuessedComponentsRejected) {
  AuditSetup<Bls12381> s(5, 40);
  Rng rng = Rng::from_u64(77);
  auto ch = s.c.audit_challenge("bob", 2);
  const auto& g = s.p.params.g1;
  int accepted = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    // Without E the owner can re-encrypt the plaintext itself, but not hit
    // the tags the server signed.
    std::map<std::uint64_t, CiphertextRow<Bls12381>> rows;
    for (const auto& e : ch.entries) {
      CiphertextRow<Bls12381> row{e.index, {}, {}};
      for (std::uint32_t j = 0; j < s.p.manifest.s; ++j) {
        auto r = Bls12381::Scalar::random(rng);
        row.e_prime.push_back(g * Bls12381::Scalar::from_u64(s.p.blocks.at(e.index - 1, j)) +
                              s.p.ct.V * r);
        row.e_dprime.push_back(g * r);
      }
      rows.emplace(e.index, std::move(row));
    }
    auto resp = owner::audit_respond(s.p.manifest, rows, s.p.sigma, ch);
    resp.q2 = resp.q2 + g * Bls12381::Scalar::random(rng);
    accepted += s.c.check_response(ch, resp);
  }
  EXPECT_EQ(accepted, 0);
}

TEST(ContractAudit, OutsideWindowRejected) {
  AuditSetup<ToyGroup> s(6);
  auto ch = s.c.audit_challenge("alice", 2);
  s.chain.clock.advance_to(4);
  auto resp = owner::audit_respond(s.p.manifest, s.p.ct, s.p.sigma, ch);
  EXPECT_EQ(code_of([&] { s.c.audit_verify("alice", ch, resp); }), ErrorCode::kWrongWindow);
}

TEST(ContractRefund, NoLeakRestoresBalancesExactly) {
  AuditSetup<ToyGroup> s(7);
  const auto before = std::map<std::string, std::int64_t>{
      {"cloud", 1000}, {"alice", 10}, {"bob", 10}};
  EXPECT_EQ(code_of([&] { s.c.penalty(); }), ErrorCode::kWrongWindow);
  s.chain.clock.advance_to(3);
  EXPECT_EQ(code_of([&] { s.c.penalty(); }), ErrorCode::kWrongState);
  s.c.refund();
  for (const auto& [acct, v] : before) EXPECT_EQ(s.chain.ledger.balance(acct), v) << acct;
  EXPECT_EQ(s.chain.ledger.balance(s.c.core().escrow_account()), 0);
  EXPECT_EQ(s.c.state(), ContractState::kFinished);
  EXPECT_EQ(code_of([&] { s.c.penalty(); }), ErrorCode::kWrongState);
  s.chain.clock.advance_to(9);
  EXPECT_EQ(code_of([&] { s.c.timer(); }), ErrorCode::kWrongState);
}

TEST(ContractPenalty, SharesAreProRataWithRemainderInEscrow) {
  auto shares = ContractCore::penalty_shares(100, {{"a", 1}, {"b", 2}});
  EXPECT_EQ(shares.at("a"), 33);
  EXPECT_EQ(shares.at("b"), 66);
  auto big = ContractCore::penalty_shares(std::int64_t{1} << 62, {{"a", 3}, {"b", 5}});
  EXPECT_EQ(big.at("a"), (std::int64_t{1} << 62) / 8 * 3);

  AuditSetup<ToyGroup> s(8);
  s.c.core();
  for (const char* who : {"alice", "bob"}) {
    auto ch = s.c.audit_challenge(who, 2);
    ASSERT_TRUE(s.c.audit_verify(who, ch, owner::audit_respond(s.p.manifest, s.p.ct, s.p.sigma, ch)));
  }
  s.chain.clock.advance_to(3);
  auto paid = s.c.penalty();
  EXPECT_EQ(paid.at("alice"), 666);  // floor(1000 * 4 / 6)
  EXPECT_EQ(paid.at("bob"), 333);    // floor(1000 * 2 / 6)
  EXPECT_EQ(s.chain.ledger.balance(s.c.core().escrow_account()), 1);
  s.chain.clock.advance_to(5);
  s.c.timer();
  EXPECT_EQ(s.chain.ledger.balance("cloud"), 1);
  EXPECT_EQ(s.chain.ledger.total(), 1020);
}

TEST(ContractTimer, LapsedContractReturnsEverything) {
  Fixture f;
  Contract<ToyGroup> c(f.chain, f.params);
  EXPECT_EQ(code_of([&] { c.timer(); }), ErrorCode::kWrongState);
  c.service("cloud", "N", {}, 60, {1, 2, 3, 4});
  f.chain.clock.advance_to(1);
  c.agree("alice", 5);
  f.chain.clock.advance_to(4);
  EXPECT_EQ(code_of([&] { c.timer(); }), ErrorCode::kWrongWindow);
  f.chain.clock.advance_to(5);
  c.timer();
  EXPECT_EQ(f.chain.ledger.balance("cloud"), 100);
  EXPECT_EQ(f.chain.ledger.balance("alice"), 10);
  EXPECT_EQ(c.state(), ContractState::kAborted);
}

// Exhaustive exploration of the core state machine for every deadline
// layout in [0, 5]. Each operation's success is checked against an
// independent statement of its precondition; failures must leave the
// contract and ledger untouched; money is conserved on every edge.
enum class Op { kTick, kAgreeA, kAgreeB, kAgreeC, kRegister, kClaim, kAuditAOk, kAuditBBad,
                kAuditBOk, kRefund, kPenalty, kTimer };
constexpr Op kOps[] = {Op::kTick,     Op::kAgreeA,  Op::kAgreeB,   Op::kAgreeC,
                       Op::kRegister, Op::kClaim,   Op::kAuditAOk, Op::kAuditBBad,
                       Op::kAuditBOk, Op::kRefund,  Op::kPenalty,  Op::kTimer};

struct Machine {
  Chain chain;
  ContractCore core;
  explicit Machine(const Deadlines& d) : chain(genesis()), core(chain, Digest{}) {
    core.service("cloud", "N", 100, d, Digest{});
  }
  static Chain genesis() {
    Chain c;
    c.ledger.mint("cloud", 100);
    c.ledger.mint("alice", 10);
    c.ledger.mint("bob", 3);
    return c;
  }
  std::string key() const {
    std::string k = std::to_string(chain.clock.now()) + to_string(core.state()) +
                    (core.tags_registered() ? "T" : "t") + (core.finalized() ? "F" : "f");
    for (const auto& [o, r] : core.owners()) k += o + to_string(r.state);
    for (const auto& [a, v] : chain.ledger.balances()) k += a + std::to_string(v);
    return k;
  }
};

bool expected_ok(const Machine& m, Op op) {
  const auto& d = m.core.deadlines();
  const auto now = m.chain.clock.now();
  const auto st = m.core.state();
  const auto owners = m.core.owners();
  const bool uploaded_any = !m.core.successful_auditors().empty();
  auto can_audit = [&](const std::string& o) {
    return st == ContractState::kClaimed && d.t2 <= now && now <= d.t3 && owners.contains(o) &&
           owners.at(o).state == OwnerState::kAccepted;
  };
  auto can_agree = [&](const std::string& o, std::int64_t stake) {
    return st == ContractState::kCreated && d.t1 <= now && now <= d.t2 && !owners.contains(o) &&
           m.chain.ledger.balance(o) >= stake;
  };
  switch (op) {
    case Op::kTick: return true;
    case Op::kAgreeA: return can_agree("alice", 4);
    case Op::kAgreeB: return can_agree("bob", 3);
    case Op::kAgreeC: return can_agree("carol", 1);
    case Op::kRegister:
      return !m.core.tags_registered() && st == ContractState::kCreated && now <= d.t2;
    case Op::kClaim:
      return st == ContractState::kCreated && now == d.t2 && !owners.empty() &&
             m.core.tags_registered();
    case Op::kAuditAOk: return can_audit("alice");
    case Op::kAuditBBad:
    case Op::kAuditBOk: return can_audit("bob");
    case Op::kRefund:
      return st == ContractState::kClaimed && d.t3 <= now && now <= d.t4 && !uploaded_any;
    case Op::kPenalty:
      return st == ContractState::kClaimed && d.t3 <= now && now <= d.t4 && uploaded_any;
    case Op::kTimer:
      return now > d.t4 && !m.core.finalized() &&
             (st == ContractState::kCreated || st == ContractState::kClaimed ||
              st == ContractState::kAborted);
  }
  return false;
}

void apply(Machine& m, Op op) {
  switch (op) {
    case Op::kTick: m.chain.clock.tick(); break;
    case Op::kAgreeA: m.core.agree("alice", 4); break;
    case Op::kAgreeB: m.core.agree("bob", 3); break;
    case Op::kAgreeC: m.core.agree("carol", 1); break;
    case Op::kRegister: m.core.mark_tags_registered(Digest{}); break;
    case Op::kClaim: m.core.claim(); break;
    case Op::kAuditAOk:
      m.core.check_audit_allowed("alice");
      m.core.record_audit("alice", true, Digest{});
      break;
    case Op::kAuditBBad:
      m.core.check_audit_allowed("bob");
      m.core.record_audit("bob", false, Digest{});
      break;
    case Op::kAuditBOk:
      m.core.check_audit_allowed("bob");
      m.core.record_audit("bob", true, Digest{});
      break;
    case Op::kRefund: m.core.refund(); break;
    case Op::kPenalty: m.core.penalty(); break;
    case Op::kTimer: m.core.timer(); break;
  }
}

TEST(ContractModelCheck, ExhaustiveOnSmallDeadlines) {
  std::size_t explored = 0;
  for (std::uint64_t t1 = 0; t1 <= 5; ++t1)
    for (std::uint64_t t2 = t1 + 1; t2 <= 5; ++t2)
      for (std::uint64_t t3 = t2 + 1; t3 <= 5; ++t3)
        for (std::uint64_t t4 = t3 + 1; t4 <= 5; ++t4) {
          const Deadlines d{t1, t2, t3, t4};
          std::set<std::string> seen;
          std::deque<std::vector<Op>> frontier{{}};
          while (!frontier.empty()) {
            auto path = std::move(frontier.front());
            frontier.pop_front();
            for (Op op : kOps) {
              Machine m(d);
              for (Op prev : path) apply(m, prev);
              if (op == Op::kTick && m.chain.clock.now() > t4) continue;
              const bool want = expected_ok(m, op);
              const std::string before = m.key();
              const std::int64_t total = m.chain.ledger.total();
              const auto log_len = m.chain.log.lines().size();
              bool ok = true;
              try {
                apply(m, op);
              } catch (const Error&) {
                ok = false;
              }
              ASSERT_EQ(ok, want) << "op " << static_cast<int>(op) << " at " << before;
              ASSERT_EQ(m.chain.ledger.total(), total);
              for (const auto& [a, v] : m.chain.ledger.balances()) ASSERT_GE(v, 0) << a;
              if (!ok) {
                ASSERT_EQ(m.key(), before);
                ASSERT_EQ(m.chain.log.lines().size(), log_len);
                continue;
              }
              if (op != Op::kTick) ASSERT_EQ(m.chain.log.lines().size(), log_len + 1);
              const auto st = m.core.state();
              ASSERT_TRUE(st == ContractState::kCreated || st == ContractState::kClaimed ||
                          st == ContractState::kFinished || st == ContractState::kAborted);
              if (m.core.finalized()) {
                ASSERT_EQ(m.chain.ledger.balance(m.core.escrow_account()), 0);
              }
              if (seen.insert(m.key()).second) {
                auto next = path;
                next.push_back(op);
                frontier.push_back(std::move(next));
                ++explored;
              }
            }
          }
        }
  EXPECT_GT(explored, 1000u);
}

}  // namespace
}  // namespace sevdel
