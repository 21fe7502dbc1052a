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

#ifndef SEVDEL_CHALLENGE_HPP_
#define SEVDEL_CHALLENGE_HPP_

#include <cstdint>
#include <set>
#include <string>

#include "sevdel/error.hpp"
#include "sevdel/file_codec.hpp"
#include "sevdel/hash.hpp"
#include "sevdel/rng.hpp"
#include "sevdel/types.hpp"

namespace sevdel {

// `count` distinct block indices from [1, n] (Floyd's sampling, so memory
// is O(count)), sorted ascending, each with a uniform nonzero coefficient.
template <PairingGroup G>
Challenge<G> sample_challenge(ByteSpan file_id, std::uint64_t n, std::uint64_t count,
                              Rng& rng) {
  if (count == 0 || count > n) {
    throw Error(ErrorCode::kCountOutOfRange,
                "count " + std::to_string(count) + " not in [1, " + std::to_string(n) + "]");
  }
  std::set<std::uint64_t> picked;
  for (std::uint64_t j = n - count + 1; j <= n; ++j) {
    std::uint64_t t = 1 + rng.uniform(j);
    if (!picked.insert(t).second) picked.insert(j);
  }
  Challenge<G> ch;
  ch.file_id.assign(file_id.begin(), file_id.end());
  ch.nonce.resize(16);
  rng.fill(ch.nonce);
  for (std::uint64_t index : picked) {
    ch.entries.push_back({index, G::Scalar::random_nonzero(rng)});
  }
  return ch;
}

// Throws kIndexOutOfRange / kInvalidArgument if the challenge is not a
// well-formed challenge over this file.
template <PairingGroup G>
void validate_challenge(const Challenge<G>& ch, const FileManifest& manifest) {
  if (ch.file_id != manifest.file_id) {
    throw Error(ErrorCode::kInvalidArgument, "challenge is for a different file");
  }
  if (ch.entries.empty()) throw Error(ErrorCode::kInvalidArgument, "empty challenge");
  std::set<std::uint64_t> seen;
  for (const auto& e : ch.entries) {
    if (e.index < 1 || e.index > manifest.n) {
      throw Error(ErrorCode::kIndexOutOfRange, "block " + std::to_string(e.index));
    }
    if (!seen.insert(e.index).second) {
      throw Error(ErrorCode::kInvalidArgument, "duplicate block " + std::to_string(e.index));
    }
    if (e.coeff.is_zero()) throw Error(ErrorCode::kInvalidArgument, "zero coefficient");
  }
}

template <PairingGroup G>
void hash_challenge(Sha256& h, const Challenge<G>& ch) {
  h.field(ch.file_id).field(ch.nonce).u64(ch.entries.size());
  for (const auto& e : ch.entries) h.u64(e.index).field(e.coeff.to_bytes());
}

}  // namespace sevdel

#endif  // SEVDEL_CHALLENGE_HPP_
