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

#ifndef SEVDEL_DELETE_AUTH_HPP_
#define SEVDEL_DELETE_AUTH_HPP_

#include <cstdint>

#include "sevdel/bytes.hpp"
#include "sevdel/enclave.hpp"
#include "sevdel/rng.hpp"

namespace sevdel {

// Ed25519 key the owner uses to authorize deletion of its files.
struct DeleteKey {
  Bytes public_key;   // 32 bytes
  SecretBytes secret;  // 64 bytes
};

struct DeleteRequest {
  Bytes file_id;
  std::uint64_t issued_at = 0;  // logical time
  Bytes signature;              // 64 bytes
  bool operator==(const DeleteRequest&) const = default;
};

DeleteKey delete_keygen(Rng& rng);
DeleteRequest sign_delete_request(const DeleteKey& key, ByteSpan file_id,
                                  std::uint64_t issued_at);
bool verify_delete_request(ByteSpan public_key, const DeleteRequest& request);

namespace cloud {

// Checks the owner's signature, then destroys the file's enclave. Throws
// kUnauthorized on a bad signature, kUnknownFile when nothing is live.
DeletionReceipt delete_file(EnclaveRegistry& registry, const DeleteRequest& request,
                            ByteSpan owner_public_key);

}  // namespace cloud
}  // namespace sevdel

#endif  // SEVDEL_DELETE_AUTH_HPP_
