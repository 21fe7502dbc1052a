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

#include <set>

#include "pipeline.hpp"
#include "sevdel/group/bls12_381.hpp"
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

template <typename G>
class Protocol : public ::testing::Test {};
using Backends = ::testing::Types<Bls12381, ToyGroup>;
TYPED_TEST_SUITE(Protocol, Backends);

TYPED_TEST(Protocol, OwnerTagsSatisfyTagEquation) {
  using G = TypeParam;
  Pipeline<G> p(1, 200, 3, 16);
  for (std::uint64_t i = 0; i < p.manifest.n; ++i) {
    std::vector<typename G::Scalar> m;
    for (std::uint32_t j = 0; j < p.manifest.s; ++j) m.push_back(G::Scalar::from_u64(p.blocks.at(i, j)));
    auto rhs = block_hash(p.params, p.manifest.file_id, i + 1) + G::msm(p.u(), m);
    EXPECT_TRUE(G::pairing_eq(p.outsourced.tags.phi[i], p.params.g2, rhs, p.owner_keys.W));
  }
}

TYPED_TEST(Protocol, EncryptedTagsSatisfyTagEquation) {
  using G = TypeParam;
  Pipeline<G> p(2, 100, 2, 16);
  for (std::uint64_t i = 0; i < p.manifest.n; ++i) {
    std::span<const typename G::G1> ep(p.ct.e_prime.data() + i * 2, 2);
    std::span<const typename G::G1> edp(p.ct.e_dprime.data() + i * 2, 2);
    auto base = enc_tag_base<G>(p.params, p.manifest.file_id, i + 1, ep, edp, p.u(), p.v_span());
    EXPECT_TRUE(G::pairing_eq(p.sigma.sigma[i], p.params.g2, base, p.server_keys.A));
  }
}

TYPED_TEST(Protocol, DecryptRoundTrip) {
  using G = TypeParam;
  Pipeline<G> p(3, 77, 3, 16);
  auto back = cloud::decrypt_file(p.params, p.enclave, p.manifest, p.ct);
  EXPECT_EQ(join(p.manifest, back), p.content);
  EXPECT_EQ(cloud::decrypt_block(p.params, p.enclave, p.ct.ep(0, 0), p.ct.edp(0, 0)),
            p.blocks.at(0, 0));
}

TYPED_TEST(Protocol, EncryptionIsProbabilistic) {
  using G = TypeParam;
  Pipeline<G> p(4, 40, 2, 16);
  auto again = cloud::encrypt_file(p.params, p.enclave, p.manifest, p.blocks, p.rng);
  EXPECT_EQ(again.V, p.ct.V);  // the enclave key is reused
  for (std::size_t k = 0; k < again.e_prime.size(); ++k) {
    EXPECT_NE(again.e_prime[k], p.ct.e_prime[k]);
    EXPECT_NE(again.e_dprime[k], p.ct.e_dprime[k]);
  }
  auto back = cloud::decrypt_file(p.params, p.enclave, p.manifest, again);
  EXPECT_EQ(back, p.blocks);
}

TYPED_TEST(Protocol, ChallengeSampling) {
  using G = TypeParam;
  Pipeline<G> p(5, 100, 2, 8);  // n = 50
  EXPECT_EQ(code_of([&] { owner::gen_challenge<G>(p.manifest, 0, 1); }),
            ErrorCode::kCountOutOfRange);
  EXPECT_EQ(code_of([&] { owner::gen_challenge<G>(p.manifest, 51, 1); }),
            ErrorCode::kCountOutOfRange);
  auto full = owner::gen_challenge<G>(p.manifest, 50, 1);
  for (std::uint64_t k = 0; k < 50; ++k) EXPECT_EQ(full.entries[k].index, k + 1);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    auto ch = owner::gen_challenge<G>(p.manifest, 10, seed);
    EXPECT_EQ(ch, owner::gen_challenge<G>(p.manifest, 10, seed));
    ASSERT_EQ(ch.entries.size(), 10u);
    for (std::size_t k = 0; k < ch.entries.size(); ++k) {
      EXPECT_FALSE(ch.entries[k].coeff.is_zero());
      if (k) EXPECT_LT(ch.entries[k - 1].index, ch.entries[k].index);
    }
    EXPECT_NO_THROW(validate_challenge(ch, p.manifest));
  }
  EXPECT_NE(owner::gen_challenge<G>(p.manifest, 10, 1), owner::gen_challenge<G>(p.manifest, 10, 2));
}

TYPED_TEST(Protocol, HonestProofAccepted) {
  using G = TypeParam;
  Pipeline<G> p(6, 300, 3, 16);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    auto ch = owner::gen_challenge<G>(p.manifest, 1 + seed % p.manifest.n, seed);
    EXPECT_TRUE(p.verify(ch, p.prove(ch))) << seed;
  }
}

TYPED_TEST(Protocol, TamperedProofsRejected) {
  using G = TypeParam;
  using G1 = typename G::G1;
  Pipeline<G> p(7, 300, 3, 16);
  auto ch = owner::gen_challenge<G>(p.manifest, 5, 9);
  const auto good = p.prove(ch);
  ASSERT_TRUE(p.verify(ch, good));
  const G1 junk = G1::generator() * G::Scalar::from_u64(5);

  auto bad = good;
  bad.p2 = bad.p2 + junk;
  EXPECT_FALSE(p.verify(ch, bad));
  bad = good;
  bad.p1_prime[1] = bad.p1_prime[1] + junk;
  EXPECT_FALSE(p.verify(ch, bad));
  bad = good;
  bad.p1_dprime[0] = bad.p1_dprime[0] + junk;
  EXPECT_FALSE(p.verify(ch, bad));
  bad = good;
  bad.u_agg = bad.u_agg + junk;
  EXPECT_FALSE(p.verify(ch, bad));
  bad = good;
  bad.nizk.z_q[2] = bad.nizk.z_q[2] + G::Scalar::one();
  EXPECT_FALSE(p.verify(ch, bad));
  bad = good;
  bad.nizk.c = bad.nizk.c + G::Scalar::one();
  EXPECT_FALSE(p.verify(ch, bad));

  // A proof for one challenge does not answer another.
  auto other = owner::gen_challenge<G>(p.manifest, 5, 10);
  EXPECT_FALSE(p.verify(other, good));

  bad = good;
  bad.p1_prime.pop_back();
  EXPECT_EQ(code_of([&] { p.verify(ch, bad); }), ErrorCode::kMalformedProof);
  bad = good;
  bad.nizk.z_r.push_back(G::Scalar::one());
  EXPECT_EQ(code_of([&] { p.verify(ch, bad); }), ErrorCode::kMalformedProof);
}

TYPED_TEST(Protocol, ProofNeverRevealsAggregatedSectors) {
  using G = TypeParam;
  Pipeline<G> p(8, 100, 2, 8);
  auto ch = owner::gen_challenge<G>(p.manifest, 4, 3);
  auto proof = p.prove(ch);
  for (std::uint32_t j = 0; j < p.manifest.s; ++j) {
    typename G::Scalar q;
    for (const auto& e : ch.entries) q += e.coeff * G::Scalar::from_u64(p.blocks.at(e.index - 1, j));
    for (const auto& z : proof.nizk.z_q) EXPECT_NE(z, q);
  }
}

TYPED_TEST(Protocol, ProveRejectsBadChallenge) {
  using G = TypeParam;
  Pipeline<G> p(9, 100, 2, 16);
  auto ch = owner::gen_challenge<G>(p.manifest, 3, 1);
  auto bad = ch;
  bad.entries.back().index = p.manifest.n + 1;
  EXPECT_EQ(code_of([&] { p.prove(bad); }), ErrorCode::kIndexOutOfRange);
  bad = ch;
  bad.entries.front().index = 0;
  EXPECT_EQ(code_of([&] { p.prove(bad); }), ErrorCode::kIndexOutOfRange);
}

TYPED_TEST(Protocol, DeletedEnclaveBlocksEverything) {
  using G = TypeParam;
  Pipeline<G> p(10, 100, 2, 16);
  auto ch = owner::gen_challenge<G>(p.manifest, 3, 1);
  auto receipt = cloud::delete_file(*p.registry, p.manifest.file_id);
  EXPECT_EQ(receipt.file_id, p.manifest.file_id);
  EXPECT_GT(receipt.zeroized_bytes, 0u);
  EXPECT_EQ(code_of([&] { p.prove(ch); }), ErrorCode::kEnclaveDestroyed);
  EXPECT_EQ(code_of([&] {
              cloud::decrypt_block(p.params, p.enclave, p.ct.ep(0, 0), p.ct.edp(0, 0));
            }),
            ErrorCode::kEnclaveDestroyed);
  EXPECT_EQ(code_of([&] { cloud::delete_file(*p.registry, p.manifest.file_id); }),
            ErrorCode::kUnknownFile);
}

TYPED_TEST(Protocol, AuditResponseNeedsLeakedBlocks) {
  using G = TypeParam;
  Pipeline<G> p(11, 100, 2, 16);
  auto ch = owner::gen_challenge<G>(p.manifest, 3, 1);
  auto rows = owner::rows_of(p.ct);
  rows.erase(ch.entries[1].index);
  EXPECT_EQ(code_of([&] { owner::audit_respond(p.manifest, rows, p.sigma, ch); }),
            ErrorCode::kMissingBlock);
  auto resp = owner::audit_respond(p.manifest, p.ct, p.sigma, ch);
  ASSERT_EQ(resp.revealed.size(), 3u);
  EXPECT_EQ(resp.revealed[1].index, ch.entries[1].index);
}

// The toy group exposes discrete logs, so the sigma protocol's algebra can
// be checked directly.
TEST(LinkProofToy, SpecialSoundnessExtractsWitness) {
  using G = ToyGroup;
  Rng rng = Rng::from_u64(51);
  const std::size_t s = 3;
  auto v = G::Scalar::random_nonzero(rng);
  G::G1 g = G::G1::generator(), V = g * v;
  std::vector<G::G1> u, p1p, p1d;
  nizk::LinkWitness<G> w;
  for (std::size_t j = 0; j < s; ++j) {
    u.push_back(g * G::Scalar::random_nonzero(rng));
    w.q.push_back(G::Scalar::random(rng));
    w.r.push_back(G::Scalar::random(rng));
    p1p.push_back(g * w.q[j] + V * w.r[j]);
    p1d.push_back(g * w.r[j]);
  }
  const auto U = G::msm(u, w.q);
  nizk::LinkStatement<G> st{g, V, u, p1p, p1d, U};
  auto [com, nonces] = nizk::commit(st, rng);
  auto c1 = G::Scalar::random(rng), c2 = G::Scalar::random(rng);
  auto [zq1, zr1] = nizk::respond(nonces, w, c1);
  auto [zq2, zr2] = nizk::respond(nonces, w, c2);
  ASSERT_TRUE(nizk::check(st, com, c1, zq1, zr1));
  ASSERT_TRUE(nizk::check(st, com, c2, zq2, zr2));
  auto ext = nizk::extract<G>(c1, zq1, zr1, c2, zq2, zr2);
  EXPECT_EQ(ext.q, w.q);
  EXPECT_EQ(ext.r, w.r);
}

TYPED_TEST(Protocol, LinkProofTranscriptsAreSimulatable) {
  using G = TypeParam;
  Rng rng = Rng::from_u64(52);
  auto g = G::G1::generator();
  auto V = g * G::Scalar::random_nonzero(rng);
  std::vector<typename G::G1> u{g * G::Scalar::random(rng), g * G::Scalar::random(rng)};
  std::vector<typename G::G1> p1p{g * G::Scalar::random(rng), g * G::Scalar::random(rng)};
  std::vector<typename G::G1> p1d{g * G::Scalar::random(rng), g * G::Scalar::random(rng)};
  auto U = g * G::Scalar::random(rng);
  // Pick c and z first, then solve for the commitments: no witness needed.
  nizk::LinkStatement<G> st{g, V, u, p1p, p1d, U};
  auto c = G::Scalar::random(rng);
  std::vector<typename G::Scalar> zq{G::Scalar::random(rng), G::Scalar::random(rng)};
  std::vector<typename G::Scalar> zr{G::Scalar::random(rng), G::Scalar::random(rng)};
  nizk::LinkCommitment<G> com;
  for (std::size_t j = 0; j < 2; ++j) {
    com.t_prime.push_back(g * zq[j] + V * zr[j] - p1p[j] * c);
    com.t_dprime.push_back(g * zr[j] - p1d[j] * c);
  }
  com.t_u = G::msm(u, zq) - U * c;
  EXPECT_TRUE(nizk::check(st, com, c, zq, zr));
}

}  // namespace
}  // namespace sevdel
