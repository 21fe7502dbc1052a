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

#ifndef SEVDEL_RNG_HPP_
#define SEVDEL_RNG_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string_view>

#include "sevdel/bytes.hpp"

namespace sevdel {

// ChaCha20 keystream generator. A seeded instance is fully reproducible,
// which the scenario runner relies on for byte-identical transcripts.
// Satisfies UniformRandomBitGenerator.
class Rng {
 public:
  using result_type = std::uint64_t;
  using Seed = std::array<std::uint8_t, 32>;

  explicit Rng(const Seed& seed);
  static Rng from_u64(std::uint64_t seed);
  static Rng from_os();

  // Independent child stream; the parent is not advanced.
  Rng derive(std::string_view label) const;

  void fill(std::span<std::uint8_t> out);
  std::uint64_t next_u64();
  // Uniform in [0, bound), bound > 0.
  std::uint64_t uniform(std::uint64_t bound);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }
  result_type operator()() { return next_u64(); }

 private:
  void refill();

  Seed key_;
  std::uint64_t block_counter_ = 0;
  std::array<std::uint8_t, 512> buffer_{};
  std::size_t pos_ = sizeof(buffer_);
};

}  // namespace sevdel

#endif  // SEVDEL_RNG_HPP_
