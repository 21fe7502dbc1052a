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

#include "pipeline.hpp"
#include "sevdel/group/bls12_381.hpp"
#include "sevdel/wire.hpp"

namespace sevdel {
namespace {

using G = Bls12381;
using sevdel::testing::Pipeline;

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kIo;
}

class Wire : public ::testing::Test {
 protected:
  static void SetUpTestSuite() { p_ = new Pipeline<G>(91, 70, 3, 16); }
  static void TearDownTestSuite() { delete p_; }
  static Pipeline<G>* p_;
};
Pipeline<G>* Wire::p_ = nullptr;

TEST_F(Wire, BinaryRoundTrips) {
  auto& p = *p_;
  EXPECT_EQ(wire::decode_ciphertext<G>(wire::encode(p.ct)), p.ct);
  EXPECT_EQ(wire::decode_owner_tags<G>(wire::encode(p.outsourced.tags)), p.outsourced.tags);
  EXPECT_EQ(wire::decode_enc_tags<G>(wire::encode(p.sigma)), p.sigma);
  EXPECT_EQ(wire::decode_blocks(wire::encode(p.blocks)), p.blocks);
  auto ch = owner::gen_challenge<G>(p.manifest, 4, 2);
  auto proof = p.prove(ch);
  EXPECT_EQ(wire::decode_proof<G>(wire::encode(proof)), proof);
}

TEST_F(Wire, CiphertextHeader) {
  Bytes b = wire::encode(p_->ct);
  EXPECT_EQ(std::string(b.begin(), b.begin() + 9), "sevdel/ct");
  EXPECT_EQ(b[9], 0);
  EXPECT_EQ(b[16], wire::kVersion);
  EXPECT_EQ(b.size(), 17 + 8 + 4 + 48 + p_->ct.e_prime.size() * 96);
}

TEST_F(Wire, RejectsCorruptBinary) {
  Bytes b = wire::encode(p_->ct);
  Bytes bad = b;
  bad[0] ^= 1;
  EXPECT_EQ(code_of([&] { wire::decode_ciphertext<G>(bad); }), ErrorCode::kFormat);
  bad = b;
  bad[16] = 9;
  EXPECT_EQ(code_of([&] { wire::decode_ciphertext<G>(bad); }), ErrorCode::kFormat);
  bad.assign(b.begin(), b.end() - 1);
  EXPECT_EQ(code_of([&] { wire::decode_ciphertext<G>(bad); }), ErrorCode::kFormat);
  bad = b;
  bad.push_back(0);
  EXPECT_EQ(code_of([&] { wire::decode_ciphertext<G>(bad); }), ErrorCode::kFormat);
  bad = b;
  std::fill(bad.begin() + 29, bad.begin() + 29 + 48, 0xFF);  // V
  EXPECT_EQ(code_of([&] { wire::decode_ciphertext<G>(bad); }), ErrorCode::kInvalidElement);
  // Tag files are not interchangeable.
  EXPECT_EQ(code_of([&] { wire::decode_enc_tags<G>(wire::encode(p_->outsourced.tags)); }),
            ErrorCode::kFormat);
  // A huge length field fails cleanly instead of allocating.
  bad = wire::encode(p_->sigma);
  for (int k = 17; k < 25; ++k) bad[k] = 0xFF;
  EXPECT_EQ(code_of([&] { wire::decode_enc_tags<G>(bad); }), ErrorCode::kFormat);
}

TEST_F(Wire, JsonRoundTripsAndIsCanonical) {
  auto& p = *p_;
  auto m = wire::to_json(p.manifest);
  EXPECT_EQ(wire::manifest_from_json(m), p.manifest);
  EXPECT_EQ(m.dump().substr(0, 11), "{\"file_id\":");
  auto ch = owner::gen_challenge<G>(p.manifest, 3, 5);
  EXPECT_EQ(wire::challenge_from_json<G>(wire::to_json(ch)), ch);
  auto proof = p.prove(ch);
  auto pj = wire::to_json(proof);
  EXPECT_EQ(wire::proof_from_json<G>(nlohmann::json::parse(pj.dump())), proof);
  auto resp = owner::audit_respond(p.manifest, p.ct, p.sigma, ch);
  EXPECT_EQ(wire::audit_response_from_json<G>(wire::to_json(resp)), resp);
  EXPECT_EQ(code_of([] { wire::manifest_from_json(nlohmann::json::object()); }),
            ErrorCode::kFormat);
  auto broken = pj;
  broken["p2"] = "zz";
  EXPECT_EQ(code_of([&] { wire::proof_from_json<G>(broken); }), ErrorCode::kFormat);
}

TEST_F(Wire, ProofSizeDependsOnlyOnSectorCount) {
  auto& p = *p_;
  auto small = p.prove(owner::gen_challenge<G>(p.manifest, 1, 1));
  auto large = p.prove(owner::gen_challenge<G>(p.manifest, p.manifest.n, 1));
  EXPECT_EQ(wire::encode(small).size(), wire::encode(large).size());
  EXPECT_EQ(wire::encode(small).size(), 17 + 4 + 3 * (4 * 48 + 2 * 32) + 3 * 48 + 32);
}

}  // namespace
}  // namespace sevdel
