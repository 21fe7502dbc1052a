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

#include "sevdel/delete_auth.hpp"

#include <sodium.h>

#include "sevdel/cloud.hpp"
#include "sevdel/error.hpp"

namespace sevdel {
namespace {

Bytes request_message(ByteSpan file_id, std::uint64_t issued_at) {
  ByteWriter w;
  w.raw(as_bytes("sevdel/delete"));
  w.u64(file_id.size());
  w.raw(file_id);
  w.u64(issued_at);
  return std::move(w).take();
}

}  // namespace

DeleteKey delete_keygen(Rng& rng) {
  Bytes seed(crypto_sign_SEEDBYTES);
  rng.fill(seed);
  DeleteKey key;
  key.public_key.resize(crypto_sign_PUBLICKEYBYTES);
  Bytes sk(crypto_sign_SECRETKEYBYTES);
  crypto_sign_seed_keypair(key.public_key.data(), sk.data(), seed.data());
  sodium_memzero(seed.data(), seed.size());
  key.secret = SecretBytes(std::move(sk));
  return key;
}

DeleteRequest sign_delete_request(const DeleteKey& key, ByteSpan file_id,
                                  std::uint64_t issued_at) {
  DeleteRequest req{Bytes(file_id.begin(), file_id.end()), issued_at,
                    Bytes(crypto_sign_BYTES)};
  const Bytes msg = request_message(file_id, issued_at);
  crypto_sign_detached(req.signature.data(), nullptr, msg.data(), msg.size(),
                       key.secret.view().data());
  return req;
}

bool verify_delete_request(ByteSpan public_key, const DeleteRequest& request) {
  if (public_key.size() != crypto_sign_PUBLICKEYBYTES ||
      request.signature.size() != crypto_sign_BYTES) {
    return false;
  }
  const Bytes msg = request_message(request.file_id, request.issued_at);
  return crypto_sign_verify_detached(request.signature.data(), msg.data(), msg.size(),
                                     public_key.data()) == 0;
}

namespace cloud {

DeletionReceipt delete_file(EnclaveRegistry& registry, const DeleteRequest& request,
                            ByteSpan owner_public_key) {
  if (!verify_delete_request(owner_public_key, request)) {
    throw Error(ErrorCode::kUnauthorized, "delete request not signed by the file owner");
  }
  return delete_file(registry, request.file_id);
}

}  // namespace cloud
}  // namespace sevdel
