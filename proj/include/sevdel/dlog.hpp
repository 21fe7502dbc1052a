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

#ifndef SEVDEL_DLOG_HPP_
#define SEVDEL_DLOG_HPP_

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <utility>
#include <vector>

#include "sevdel/error.hpp"
#include "sevdel/group/concepts.hpp"

namespace sevdel {

// Baby-step/giant-step search for m in [0, 2^bits) with base^m = target.
// The baby table holds fingerprints of j*base for j < 2^baby_bits; giant
// steps subtract 2^baby_bits * base and are fingerprinted in batches so a
// backend can share one field inversion across a batch.
template <PairingGroup G>
class BsgsTable {
 public:
  using G1 = typename G::G1;

  BsgsTable(const G1& base, unsigned bits, unsigned baby_bits)
      : base_(base), bits_(bits), baby_bits_(baby_bits) {
    if (bits == 0 || bits > 40 || baby_bits == 0 || baby_bits > bits) {
      throw Error(ErrorCode::kInvalidArgument, "unsupported BSGS split");
    }
    const std::uint64_t baby = std::uint64_t{1} << baby_bits_;
    std::vector<G1> points;
    points.reserve(baby);
    G1 acc = G1::identity();
    for (std::uint64_t j = 0; j < baby; ++j) {
      points.push_back(acc);
      acc = acc + base_;
    }
    giant_stride_ = -acc;  // -(2^baby_bits * base)
    std::vector<std::uint64_t> fps(baby);
    G::fingerprint(points, fps);
    table_.reserve(baby);
    for (std::uint64_t j = 0; j < baby; ++j) table_.emplace_back(fps[j], j);
    std::sort(table_.begin(), table_.end());
  }

  unsigned bits() const { return bits_; }

  std::optional<std::uint64_t> solve(const G1& target) const {
    constexpr std::size_t kBatch = 128;
    const std::uint64_t giants = std::uint64_t{1} << (bits_ - baby_bits_);
    std::vector<G1> batch;
    std::vector<std::uint64_t> fps;
    batch.reserve(kBatch);
    G1 cur = target;
    for (std::uint64_t k0 = 0; k0 < giants; k0 += kBatch) {
      const std::uint64_t count = std::min<std::uint64_t>(kBatch, giants - k0);
      batch.clear();
      for (std::uint64_t k = 0; k < count; ++k) {
        batch.push_back(cur);
        cur = cur + giant_stride_;
      }
      fps.resize(count);
      G::fingerprint(batch, fps);
      for (std::uint64_t k = 0; k < count; ++k) {
        auto [lo, hi] = std::equal_range(
            table_.begin(), table_.end(), std::pair<std::uint64_t, std::uint64_t>{fps[k], 0},
            [](const auto& a, const auto& b) { return a.first < b.first; });
        for (auto it = lo; it != hi; ++it) {
          std::uint64_t m = ((k0 + k) << baby_bits_) + it->second;
          if (base_ * G::Scalar::from_u64(m) == target) return m;
        }
      }
    }
    return std::nullopt;
  }

 private:
  G1 base_;
  unsigned bits_;
  unsigned baby_bits_;
  G1 giant_stride_;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> table_;
};

// Process-wide table for the group generator, built on first use. The
// split is 2^ceil(bits/2) baby steps by 2^floor(bits/2) giant steps, i.e.
// 2^16 x 2^16 for 32-bit sectors.
template <PairingGroup G>
const BsgsTable<G>& generator_bsgs(unsigned bits) {
  static std::mutex mu;
  static std::map<unsigned, std::unique_ptr<BsgsTable<G>>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[bits];
  if (!slot) {
    slot = std::make_unique<BsgsTable<G>>(G::G1::generator(), bits, (bits + 1) / 2);
  }
  return *slot;
}

}  // namespace sevdel

#endif  // SEVDEL_DLOG_HPP_
