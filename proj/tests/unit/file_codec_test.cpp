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

#include "sevdel/error.hpp"
#include "sevdel/file_codec.hpp"
#include "sevdel/rng.hpp"

namespace sevdel {
namespace {

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kFormat;
}

TEST(Split, EmptyFileRejected) {
  EXPECT_EQ(code_of([] { split({}, 4, 32); }), ErrorCode::kEmptyFile);
}

TEST(Split, RejectsBadShape) {
  Bytes f(10, 1);
  EXPECT_EQ(code_of([&] { split(f, 0, 32); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(code_of([&] { split(f, 4, 24); }), ErrorCode::kInvalidArgument);
}

TEST(Split, SixteenBytesIsOneBlockOfWords) {
  Bytes f;
  for (int k = 0; k < 16; ++k) f.push_back(static_cast<std::uint8_t>(k));
  auto [m, b] = split(f, 4, 32);
  EXPECT_EQ(m.n, 1u);
  EXPECT_EQ(b.at(0, 0), 0x03020100u);
  EXPECT_EQ(b.at(0, 1), 0x07060504u);
  EXPECT_EQ(b.at(0, 2), 0x0b0a0908u);
  EXPECT_EQ(b.at(0, 3), 0x0f0e0d0cu);
}

TEST(Split, SeventeenBytesPadsSecondBlock) {
  Bytes f(17, 0xAB);
  auto [m, b] = split(f, 4, 32);
  EXPECT_EQ(m.n, 2u);
  EXPECT_EQ(m.original_len, 17u);
  EXPECT_EQ(b.at(1, 0), 0xABu);
  EXPECT_EQ(b.at(1, 1), 0u);
  EXPECT_EQ(b.at(1, 2), 0u);
  EXPECT_EQ(b.at(1, 3), 0u);
}

TEST(Join, SingleByte) {
  Bytes f{0x5A};
  for (std::uint32_t bits : {8u, 16u, 32u}) {
    auto [m, b] = split(f, 3, bits);
    EXPECT_EQ(join(m, b), f);
  }
}

TEST(Join, RandomRoundTrip) {
  Rng rng = Rng::from_u64(31);
  for (int trial = 0; trial < 1000; ++trial) {
    Bytes f(1 + rng.uniform(64 * 1024));
    rng.fill(f);
    const std::uint32_t s = 1 + static_cast<std::uint32_t>(rng.uniform(16));
    const std::uint32_t bits = 8u << rng.uniform(3);
    auto [m, b] = split(f, s, bits);
    ASSERT_EQ(m.n * s * (bits / 8) >= f.size(), true);
    if (bits < 32) {
      for (auto v : b.values()) ASSERT_LT(v, 1u << bits);
    }
    ASSERT_EQ(join(m, b), f) << "trial " << trial;
  }
}

TEST(Join, TamperedManifestRejected) {
  Bytes f(100, 7);
  auto [m, b] = split(f, 4, 16);
  auto bad = m;
  bad.n += 1;
  EXPECT_EQ(code_of([&] { join(bad, b); }), ErrorCode::kDimensionMismatch);
  bad = m;
  bad.original_len = 8;  // would leave a whole block of padding
  EXPECT_EQ(code_of([&] { join(bad, b); }), ErrorCode::kDimensionMismatch);
  auto wide = b;
  wide.at(0, 0) = 1u << 16;
  EXPECT_EQ(code_of([&] { check_dimensions(m, wide); }), ErrorCode::kDimensionMismatch);
  auto dirty = b;
  dirty.at(m.n - 1, 3) = 1;  // byte 100 onward is padding
  EXPECT_EQ(code_of([&] { check_dimensions(m, dirty); }), ErrorCode::kDimensionMismatch);
}

TEST(FileId, DeterministicAndBound) {
  Bytes f(10, 1), g(10, 2);
  EXPECT_EQ(derive_file_id({"alice", "a.txt"}, f), derive_file_id({"alice", "a.txt"}, f));
  EXPECT_EQ(derive_file_id({"alice", "a.txt"}, f).size(), 32u);
  EXPECT_NE(derive_file_id({"alice", "a.txt"}, f), derive_file_id({"bob", "a.txt"}, f));
  EXPECT_NE(derive_file_id({"alice", "a.txt"}, f), derive_file_id({"alice", "b.txt"}, f));
  EXPECT_NE(derive_file_id({"alice", "a.txt"}, f), derive_file_id({"alice", "a.txt"}, g));
  // Length prefixes keep field boundaries unambiguous.
  EXPECT_NE(derive_file_id({"ab", "c"}, f), derive_file_id({"a", "bc"}, f));
}

}  // namespace
}  // namespace sevdel
