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

#include "sevdel/hash.hpp"

#include <sodium.h>

#include <algorithm>
#include <stdexcept>

#include "sevdel/rng.hpp"

namespace sevdel {

Sha256& Sha256::u64(std::uint64_t v) {
  std::uint8_t be[8];
  for (int i = 0; i < 8; ++i) be[i] = static_cast<std::uint8_t>(v >> (56 - 8 * i));
  return update(ByteSpan(be, 8));
}

Sha256& Sha256::field(ByteSpan data) {
  u64(data.size());
  return update(data);
}

Digest Sha256::finish() {
  Digest out;
  crypto_hash_sha256_final(&state_, out.data());
  return out;
}

Digest sha256(ByteSpan data) {
  Digest out;
  crypto_hash_sha256(out.data(), data.data(), data.size());
  return out;
}

namespace {

struct SodiumInit {
  SodiumInit() {
    if (sodium_init() < 0) throw std::runtime_error("libsodium init failed");
  }
};

void ensure_sodium() { static SodiumInit init; }

}  // namespace

Rng::Rng(const Seed& seed) : key_(seed) { ensure_sodium(); }

Rng Rng::from_u64(std::uint64_t seed) {
  Digest d = Sha256().update("sevdel/rng-seed").u64(seed).finish();
  return Rng(d);
}

Rng Rng::from_os() {
  ensure_sodium();
  Seed seed;
  randombytes_buf(seed.data(), seed.size());
  return Rng(seed);
}

Rng Rng::derive(std::string_view label) const {
  Digest d = Sha256().update("sevdel/rng-derive").update(key_).field(label).finish();
  return Rng(d);
}

void Rng::refill() {
  static constexpr std::uint8_t kNonce[crypto_stream_chacha20_NONCEBYTES] = {};
  buffer_.fill(0);
  crypto_stream_chacha20_xor_ic(buffer_.data(), buffer_.data(), buffer_.size(),
                                kNonce, block_counter_, key_.data());
  block_counter_ += buffer_.size() / 64;
  pos_ = 0;
}

void Rng::fill(std::span<std::uint8_t> out) {
  std::size_t done = 0;
  while (done < out.size()) {
    if (pos_ == buffer_.size()) refill();
    std::size_t take = std::min(out.size() - done, buffer_.size() - pos_);
    std::copy_n(buffer_.begin() + static_cast<std::ptrdiff_t>(pos_), take,
                out.begin() + static_cast<std::ptrdiff_t>(done));
    pos_ += take;
    done += take;
  }
}

std::uint64_t Rng::next_u64() {
  std::uint8_t b[8];
  fill(b);
  std::uint64_t v = 0;
  for (std::uint8_t x : b) v = (v << 8) | x;
  return v;
}

std::uint64_t Rng::uniform(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("uniform: zero bound");
  // Rejection sampling on the largest multiple of bound.
  const std::uint64_t limit = max() - max() % bound;
  for (;;) {
    std::uint64_t v = next_u64();
    if (v < limit) return v % bound;
  }
}

}  // namespace sevdel
