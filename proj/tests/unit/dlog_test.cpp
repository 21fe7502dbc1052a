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

#include "sevdel/cloud.hpp"
#include "sevdel/dlog.hpp"
#include "sevdel/group/bls12_381.hpp"
#include "toy_group.hpp"

namespace sevdel {
namespace {

using G = Bls12381;
using toy::ToyGroup;

TEST(Bsgs, BoundariesAt16Bits) {
  const auto& t = generator_bsgs<G>(16);
  for (std::uint64_t m : {0ull, 1ull, 255ull, 256ull, 65534ull, 65535ull}) {
    EXPECT_EQ(t.solve(G::G1::generator() * G::Scalar::from_u64(m)), m) << m;
  }
  EXPECT_EQ(t.solve(G::G1::generator() * G::Scalar::from_u64(65536)), std::nullopt);
}

TEST(Bsgs, BoundariesAt32Bits) {
  const auto& t = generator_bsgs<G>(32);
  for (std::uint64_t m : {0ull, 65535ull, 65536ull, 0xFFFFFFFFull}) {
    EXPECT_EQ(t.solve(G::G1::generator() * G::Scalar::from_u64(m)), m) << m;
  }
}

TEST(Bsgs, ToyMatchesRandomExponents) {
  Rng rng = Rng::from_u64(41);
  BsgsTable<ToyGroup> t(ToyGroup::G1::generator() * ToyGroup::Scalar::from_u64(7), 20, 10);
  for (int k = 0; k < 100; ++k) {
    std::uint64_t m = rng.uniform(1u << 20);
    EXPECT_EQ(t.solve(ToyGroup::G1::generator() * ToyGroup::Scalar::from_u64(7 * m)), m);
  }
  EXPECT_THROW(BsgsTable<ToyGroup>(ToyGroup::G1::generator(), 8, 9), Error);
}

TEST(Decrypt, CorruptedCiphertextIsOutOfRange) {
  auto params = make_params<G>(32);
  Rng rng = Rng::from_u64(42);
  auto v = G::Scalar::random_nonzero(rng);
  auto r = G::Scalar::random(rng);
  auto V = params.g1 * v;
  auto e2 = params.g1 * r;
  auto e1 = params.g1 * G::Scalar::from_u64(123456789) + V * r;
  EXPECT_EQ(cloud::decrypt_with_key<G>(params, v, e1, e2), 123456789u);
  auto bump = params.g1 * G::Scalar::from_u64(1ull << 40);
  try {
    cloud::decrypt_with_key<G>(params, v, e1 + bump, e2);
    FAIL() << "expected dlog-out-of-range";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDlogOutOfRange);
  }
}

}  // namespace
}  // namespace sevdel
