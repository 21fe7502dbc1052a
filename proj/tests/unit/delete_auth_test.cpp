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

#include "sevdel/delete_auth.hpp"
#include "sevdel/error.hpp"

namespace sevdel {
namespace {

Bytes id_of(std::uint8_t b) { return Bytes(32, b); }

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kFormat;
}

TEST(DeleteAuth, SignedRequestDestroysEnclave) {
  Rng rng = Rng::from_u64(1);
  auto key = delete_keygen(rng);
  EXPECT_EQ(key.public_key.size(), 32u);
  EnclaveRegistry reg;
  auto e = reg.create(id_of(1));
  e.seal("v", Bytes(32, 7));
  auto req = sign_delete_request(key, id_of(1), 0);
  EXPECT_TRUE(verify_delete_request(key.public_key, req));
  auto receipt = cloud::delete_file(reg, req, key.public_key);
  EXPECT_EQ(receipt.zeroized_bytes, 32u);
  EXPECT_FALSE(e.alive());
  EXPECT_EQ(code_of([&] { cloud::delete_file(reg, req, key.public_key); }),
            ErrorCode::kUnknownFile);
}

TEST(DeleteAuth, KeygenIsSeeded) {
  Rng a = Rng::from_u64(5), b = Rng::from_u64(5), c = Rng::from_u64(6);
  EXPECT_EQ(delete_keygen(a).public_key, delete_keygen(b).public_key);
  EXPECT_NE(delete_keygen(a).public_key, delete_keygen(c).public_key);
}

TEST(DeleteAuth, BadRequestsLeaveEnclaveAlive) {
  Rng rng = Rng::from_u64(2);
  auto owner = delete_keygen(rng);
  auto stranger = delete_keygen(rng);
  EnclaveRegistry reg;
  auto e = reg.create(id_of(2));
  reg.create(id_of(3));

  auto by_stranger = sign_delete_request(stranger, id_of(2), 0);
  EXPECT_EQ(code_of([&] { cloud::delete_file(reg, by_stranger, owner.public_key); }),
            ErrorCode::kUnauthorized);

  auto req = sign_delete_request(owner, id_of(2), 4);
  auto moved = req;
  moved.file_id = id_of(3);  // signature does not transfer to another file
  EXPECT_EQ(code_of([&] { cloud::delete_file(reg, moved, owner.public_key); }),
            ErrorCode::kUnauthorized);
  auto retimed = req;
  retimed.issued_at = 5;
  EXPECT_FALSE(verify_delete_request(owner.public_key, retimed));
  for (std::size_t bit = 0; bit < req.signature.size() * 8; bit += 37) {
    auto flipped = req;
    flipped.signature[bit / 8] ^= static_cast<std::uint8_t>(1u << (bit % 8));
    EXPECT_FALSE(verify_delete_request(owner.public_key, flipped)) << bit;
  }
  auto truncated = req;
  truncated.signature.pop_back();
  EXPECT_FALSE(verify_delete_request(owner.public_key, truncated));
  EXPECT_FALSE(verify_delete_request(Bytes(31, 0), req));
  EXPECT_TRUE(e.alive());
  EXPECT_NO_THROW(cloud::delete_file(reg, req, owner.public_key));
}

}  // namespace
}  // namespace sevdel
