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

#include <map>
#include <thread>

#include "sevdel/clock.hpp"
#include "sevdel/enclave.hpp"
#include "sevdel/error.hpp"
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

Bytes id_of(int k) { return Bytes(32, static_cast<std::uint8_t>(k)); }

TEST(Enclave, SealUnsealAndMissingKey) {
  EnclaveRegistry reg;
  auto e = reg.create(id_of(1));
  EXPECT_TRUE(e.alive());
  EXPECT_EQ(to_string(e.state()), "ALIVE");
  Bytes secret{1, 2, 3};
  e.seal("k", secret);
  auto out = e.unseal("k");
  EXPECT_TRUE(std::equal(out.view().begin(), out.view().end(), secret.begin(), secret.end()));
  EXPECT_EQ(code_of([&] { e.unseal("other"); }), ErrorCode::kNotFound);
}

TEST(Enclave, DuplicateCreateRejectedUntilDestroyed) {
  EnclaveRegistry reg;
  auto e = reg.create(id_of(1));
  EXPECT_EQ(code_of([&] { reg.create(id_of(1)); }), ErrorCode::kDuplicateEnclave);
  e.destroy();
  auto again = reg.create(id_of(1));
  EXPECT_NE(again.id(), e.id());
  EXPECT_EQ(reg.history(id_of(1)).size(), 2u);
}

TEST(Enclave, StoresAreIsolated) {
  EnclaveRegistry reg;
  auto a = reg.create(id_of(1));
  auto b = reg.create(id_of(2));
  a.seal("v", Bytes{9});
  EXPECT_EQ(code_of([&] { b.unseal("v"); }), ErrorCode::kNotFound);
  a.destroy();
  EXPECT_TRUE(b.alive());
  b.seal("v", Bytes{8});
  EXPECT_EQ(b.unseal("v").view()[0], 8);
}

TEST(Enclave, DestroyIsFinal) {
  LogicalClock clock;
  clock.advance_to(17);
  EnclaveRegistry reg(&clock);
  auto e = reg.create(id_of(3));
  e.seal("v", Bytes(32, 0xAA));
  e.seal("r", Bytes(64, 0x55));
  auto receipt = e.destroy();
  EXPECT_EQ(receipt.destroyed_at, 17u);
  EXPECT_EQ(receipt.zeroized_bytes, 96u);
  EXPECT_EQ(receipt.enclave_id, e.id());
  EXPECT_EQ(code_of([&] { e.unseal("v"); }), ErrorCode::kEnclaveDestroyed);
  EXPECT_EQ(code_of([&] { e.seal("v", Bytes{1}); }), ErrorCode::kEnclaveDestroyed);
  EXPECT_EQ(code_of([&] { e.contains("v"); }), ErrorCode::kEnclaveDestroyed);
  EXPECT_EQ(code_of([&] { e.destroy(); }), ErrorCode::kAlreadyDestroyed);
  // Tombstone, not absence.
  auto found = reg.lookup(id_of(3));
  EXPECT_EQ(found.state(), EnclaveState::kDestroyed);
  EXPECT_EQ(code_of([&] { reg.lookup(id_of(4)); }), ErrorCode::kUnknownFile);
}

TEST(SecretBytes, WipeZeroizes) {
  SecretBytes s(Bytes{1, 2, 3, 4});
  EXPECT_FALSE(s.is_zero());
  s.wipe();
  EXPECT_TRUE(s.is_zero());
  EXPECT_EQ(s.size(), 4u);
}

// Random operation sequences against a reference model: once destroyed, no
// path returns a secret, and destroy's own zeroization check never trips.
TEST(Enclave, RandomSequencesNeverLeakAfterDestroy) {
  Rng rng = Rng::from_u64(61);
  for (int run = 0; run < 300; ++run) {
    EnclaveRegistry reg;
    std::map<int, std::vector<EnclaveHandle>> handles;
    std::map<std::uint64_t, std::map<std::string, std::uint8_t>> model;
    for (int step = 0; step < 40; ++step) {
      const int f = static_cast<int>(rng.uniform(3));
      const std::string key = "k" + std::to_string(rng.uniform(3));
      auto& hs = handles[f];
      const bool live = !hs.empty() && hs.back().alive();
      const int pick = hs.empty() ? 0 : static_cast<int>(rng.uniform(hs.size()));
      switch (rng.uniform(5)) {
        case 0:
          if (live) {
            ASSERT_EQ(code_of([&] { reg.create(id_of(f)); }), ErrorCode::kDuplicateEnclave);
          } else {
            hs.push_back(reg.create(id_of(f)));
          }
          break;
        case 1:
          if (!hs.empty()) {
            auto& h = hs[pick];
            const auto val = static_cast<std::uint8_t>(rng.uniform(256));
            if (h.alive()) {
              h.seal(key, Bytes{val});
              model[h.id()][key] = val;
            } else {
              ASSERT_EQ(code_of([&] { h.seal(key, Bytes{val}); }),
                        ErrorCode::kEnclaveDestroyed);
            }
          }
          break;
        case 2:
        case 3:
          if (!hs.empty()) {
            auto& h = hs[pick];
            if (!h.alive()) {
              ASSERT_EQ(code_of([&] { h.unseal(key); }), ErrorCode::kEnclaveDestroyed);
            } else if (model[h.id()].contains(key)) {
              ASSERT_EQ(h.unseal(key).view()[0], model[h.id()][key]);
            } else {
              ASSERT_EQ(code_of([&] { h.unseal(key); }), ErrorCode::kNotFound);
            }
          }
          break;
        case 4:
          if (!hs.empty()) {
            auto& h = hs[pick];
            if (h.alive()) {
              ASSERT_NO_THROW(h.destroy());
              model.erase(h.id());
            } else {
              ASSERT_EQ(code_of([&] { h.destroy(); }), ErrorCode::kAlreadyDestroyed);
            }
          }
          break;
      }
    }
  }
}

TEST(EnclaveRegistry, ConcurrentCreateAndLookup) {
  EnclaveRegistry reg;
  std::vector<std::thread> threads;
  for (int t = 0; t < 4; ++t) {
    threads.emplace_back([&, t] {
      for (int k = 0; k < 50; ++k) {
        auto h = reg.create(id_of(t * 50 + k));
        h.seal("v", Bytes{static_cast<std::uint8_t>(k)});
        EXPECT_EQ(reg.lookup(id_of(t * 50 + k)).unseal("v").view()[0], k);
        h.destroy();
      }
    });
  }
  for (auto& th : threads) th.join();
  EXPECT_EQ(reg.size(), 200u);
}

}  // namespace
}  // namespace sevdel
