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

#ifndef SEVDEL_HASH_HPP_
#define SEVDEL_HASH_HPP_

#include <sodium.h>

#include <cstdint>
#include <string_view>

#include "sevdel/bytes.hpp"

namespace sevdel {

// Incremental SHA-256. Length-prefixes nothing on its own; callers that
// hash variable-length fields use field() which prepends a u64 length.
class Sha256 {
 public:
  Sha256() { crypto_hash_sha256_init(&state_); }

  Sha256& update(ByteSpan data) {
    crypto_hash_sha256_update(&state_, data.data(), data.size());
    return *this;
  }
  Sha256& update(std::string_view s) { return update(as_bytes(s)); }
  Sha256& u64(std::uint64_t v);
  Sha256& field(ByteSpan data);
  Sha256& field(std::string_view s) { return field(as_bytes(s)); }

  Digest finish();

 private:
  crypto_hash_sha256_state state_;
};

Digest sha256(ByteSpan data);
inline Digest sha256(std::string_view s) { return sha256(as_bytes(s)); }

}  // namespace sevdel

#endif  // SEVDEL_HASH_HPP_
