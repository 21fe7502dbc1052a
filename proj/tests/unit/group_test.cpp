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

#include <gmpxx.h>
#include <gtest/gtest.h>

#include <vector>

#include "sevdel/group/bls12_381.hpp"
#include "sevdel/params.hpp"
#include "toy_group.hpp"

namespace sevdel {
namespace {

using toy::ToyGroup;

const char* kOrderHex = "73eda753299d7d483339d80809a1d80553bda402fffe5bfeffffffff00000001";

mpz_class to_mpz(const Bytes& be) { return mpz_class(to_hex(be), 16); }

Bytes from_mpz(const mpz_class& v, std::size_t width) {
  std::string h = v.get_str(16);
  h.insert(0, 2 * width - h.size(), '0');
  return from_hex(h);
}

TEST(Bls12381Scalar, ArithmeticMatchesGmp) {
  const mpz_class r(kOrderHex, 16);
  Rng rng = Rng::from_u64(11);
  for (int trial = 0; trial < 200; ++trial) {
    auto a = bls::Scalar::random(rng), b = bls::Scalar::random(rng);
    mpz_class ma = to_mpz(a.to_bytes()), mb = to_mpz(b.to_bytes());
    ASSERT_LT(ma, r);
    EXPECT_EQ(to_mpz((a + b).to_bytes()), mpz_class((ma + mb) % r));
    EXPECT_EQ(to_mpz((a - b).to_bytes()), mpz_class(((ma - mb) % r + r) % r));
    EXPECT_EQ(to_mpz((a * b).to_bytes()), mpz_class((ma * mb) % r));
    if (!a.is_zero()) EXPECT_EQ(a * a.inverse(), bls::Scalar::one());
  }
}

TEST(Bls12381Scalar, ReduceMatchesGmp) {
  const mpz_class r(kOrderHex, 16);
  Rng rng = Rng::from_u64(12);
  for (std::size_t len : {0, 1, 31, 32, 33, 64, 100}) {
    Bytes raw(len);
    rng.fill(raw);
    mpz_class expect = len == 0 ? mpz_class(0) : mpz_class(to_mpz(raw) % r);
    EXPECT_EQ(to_mpz(bls::Scalar::from_bytes_reduce(raw).to_bytes()), expect) << len;
  }
}

TEST(Bls12381Scalar, RejectsNonCanonical) {
  const mpz_class r(kOrderHex, 16);
  EXPECT_THROW(bls::Scalar::from_bytes(Bytes(32, 0xFF)), Error);
  EXPECT_THROW(bls::Scalar::from_bytes(from_mpz(r, 32)), Error);
  EXPECT_NO_THROW(bls::Scalar::from_bytes(from_mpz(r - 1, 32)));
  EXPECT_THROW(bls::Scalar::from_bytes(Bytes(31, 0)), Error);
}

TEST(Bls12381Points, GeneratorEncodings) {
  EXPECT_EQ(to_hex(bls::G1::generator().to_bytes()),
            "97f1d3a73197d7942695638c4fa9ac0fc3688c4f9774b905a14e3a3f171bac586c55e83ff97a1aeffb3"
            "af00adb22c6bb");
  EXPECT_EQ(to_hex(bls::G1::identity().to_bytes()), "c0" + std::string(94, '0'));
}

TEST(Bls12381Points, RejectsInvalidEncodings) {
  EXPECT_THROW(bls::G1::from_bytes(Bytes(48, 0xFF)), Error);
  EXPECT_THROW(bls::G2::from_bytes(Bytes(96, 0xFF)), Error);
  EXPECT_THROW(bls::G1::from_bytes(Bytes(47, 0)), Error);
  // x = 0 has no point on y^2 = x^3 + 4 with the compressed flag set.
  Bytes not_on_curve(48, 0);
  not_on_curve[0] = 0x80;
  EXPECT_THROW(bls::G1::from_bytes(not_on_curve), Error);
  try {
    bls::G1::from_bytes(Bytes(48, 0xFF));
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidElement);
  }
}

TEST(Bls12381HashToG1, MatchesReferenceVector) {
  // Suite BLS12381G1_XMD:SHA-256_SSWU_RO_, empty message; x-coordinate only
  // (the top three bits of a compressed encoding are flags).
  const std::string dst = "QUUX-V01-CS02-with-BLS12381G1_XMD:SHA-256_SSWU_RO_";
  Bytes enc = Bls12381::hash_to_g1(as_bytes(dst), {}).to_bytes();
  enc[0] &= 0x1F;
  EXPECT_EQ(to_hex(enc),
            "052926add2207b76ca4fa57a8734416c8dc95e24501772c814278700eed6d1e4e8cf62d9c09db0fac"
            "349612b759e79a1");
}

TEST(Bls12381Params, ElemToScalarOfIdentityIsPinned) {
  EXPECT_EQ(to_hex(elem_to_scalar<Bls12381>(bls::G1::identity()).to_bytes()),
            "5f0657f37554c781402a22917dee2f75def7ab966d7b770905398eba3c444014");
}

TEST(Bls12381FixedBase, MatchesVariableBase) {
  Rng rng = Rng::from_u64(13);
  auto base = bls::G1::generator() * bls::Scalar::random(rng);
  bls::G1FixedBase table(base);
  for (int trial = 0; trial < 20; ++trial) {
    auto k = bls::Scalar::random(rng);
    EXPECT_EQ(table.mul(k), base * k);
  }
  EXPECT_EQ(table.mul(bls::Scalar::zero()), bls::G1::identity());
  EXPECT_EQ(table.mul(-bls::Scalar::one()), -base);
  EXPECT_EQ(bls::G1FixedBase(bls::G1::identity()).mul(bls::Scalar::random(rng)),
            bls::G1::identity());
}

TEST(ToyGroupParams, ElemToScalarOfIdentityIsPinned) {
  EXPECT_EQ(elem_to_scalar<ToyGroup>(ToyGroup::G1::identity()).value(), 245695599136058643u);
}

// Laws every backend must satisfy.
template <typename G>
class GroupLaws : public ::testing::Test {};
using Backends = ::testing::Types<Bls12381, ToyGroup>;
TYPED_TEST_SUITE(GroupLaws, Backends);

TYPED_TEST(GroupLaws, Bilinearity) {
  using G = TypeParam;
  Rng rng = Rng::from_u64(21);
  const auto P = G::G1::generator(), Q = G::G2::generator();
  for (int trial = 0; trial < 3; ++trial) {
    auto a = G::Scalar::random(rng), b = G::Scalar::random(rng);
    EXPECT_EQ(G::pairing(P * a, Q * b), G::pairing(P, Q).pow(a * b));
    EXPECT_EQ(G::pairing(P * a + P * b, Q), G::pairing(P * a, Q) * G::pairing(P * b, Q));
    EXPECT_TRUE(G::pairing_eq(P * a, Q * b, P * (a * b), Q));
    EXPECT_FALSE(G::pairing_eq(P * a, Q * b, P * (a * b + G::Scalar::one()), Q));
  }
  EXPECT_FALSE(G::pairing(P, Q).is_one());
  EXPECT_TRUE(G::pairing(G::G1::identity(), Q).is_one());
  EXPECT_TRUE(G::pairing_eq(G::G1::identity(), Q, P, G::G2::identity()));
}

TYPED_TEST(GroupLaws, EncodingRoundTrip) {
  using G = TypeParam;
  Rng rng = Rng::from_u64(22);
  for (int trial = 0; trial < 10; ++trial) {
    auto k = G::Scalar::random(rng);
    EXPECT_EQ(G::Scalar::from_bytes(k.to_bytes()), k);
    auto p = G::G1::generator() * k;
    EXPECT_EQ(G::G1::from_bytes(p.to_bytes()), p);
    auto q = G::G2::generator() * k;
    EXPECT_EQ(G::G2::from_bytes(q.to_bytes()), q);
    EXPECT_EQ(p.to_bytes().size(), G::G1::kEncodedSize);
  }
  EXPECT_EQ(G::G1::from_bytes(G::G1::identity().to_bytes()), G::G1::identity());
}

TYPED_TEST(GroupLaws, MsmMatchesNaiveSum) {
  using G = TypeParam;
  Rng rng = Rng::from_u64(23);
  for (std::size_t n : {0, 1, 2, 3, 7, 40}) {
    std::vector<typename G::G1> pts;
    std::vector<typename G::Scalar> ks;
    typename G::G1 expect = G::G1::identity();
    for (std::size_t k = 0; k < n; ++k) {
      pts.push_back(G::G1::generator() * G::Scalar::random(rng));
      ks.push_back(k % 5 == 4 ? G::Scalar::zero() : G::Scalar::random(rng));
      if (k % 7 == 3) pts.back() = G::G1::identity();
      expect = expect + pts.back() * ks.back();
    }
    EXPECT_EQ(G::msm(pts, ks), expect) << n;
  }
  // Small scalars take the short-exponent path.
  std::vector<typename G::G1> pts{G::G1::generator(), G::G1::generator() * G::Scalar::from_u64(9)};
  std::vector<typename G::Scalar> ks{G::Scalar::from_u64(3), G::Scalar::from_u64(2)};
  EXPECT_EQ(G::msm(pts, ks), G::G1::generator() * G::Scalar::from_u64(21));
  EXPECT_THROW(G::msm(pts, std::span<const typename G::Scalar>(ks).first(1)), Error);
}

TYPED_TEST(GroupLaws, HashToG1IsDeterministicAndSeparated) {
  using G = TypeParam;
  const ByteSpan m1 = as_bytes("block-1"), m2 = as_bytes("block-2");
  auto a = G::hash_to_g1(as_bytes("d1"), m1);
  EXPECT_EQ(a, G::hash_to_g1(as_bytes("d1"), m1));
  EXPECT_NE(a, G::hash_to_g1(as_bytes("d1"), m2));
  EXPECT_NE(a, G::hash_to_g1(as_bytes("d2"), m1));
  EXPECT_FALSE(a.is_identity());
}

TYPED_TEST(GroupLaws, FingerprintsAgreeOnEqualPoints) {
  using G = TypeParam;
  Rng rng = Rng::from_u64(24);
  auto k = G::Scalar::random(rng);
  // Same point reached by different projective representations.
  std::vector<typename G::G1> pts{G::G1::generator() * k,
                                  G::G1::generator() * (k + G::Scalar::one()) -
                                      G::G1::generator(),
                                  G::G1::generator() * (k + G::Scalar::one())};
  std::vector<std::uint64_t> fps(3);
  G::fingerprint(pts, fps);
  EXPECT_EQ(fps[0], fps[1]);
  EXPECT_NE(fps[0], fps[2]);
}

TYPED_TEST(GroupLaws, ParamsRejectUnknownDomain) {
  using G = TypeParam;
  auto params = make_params<G>(16);
  EXPECT_THROW(hash_to_g1(params, "other", {}), Error);
  EXPECT_THROW(make_params<G>(12), Error);
  EXPECT_NE(make_params<G>(16).digest(), make_params<G>(32).digest());
}

}  // namespace
}  // namespace sevdel
