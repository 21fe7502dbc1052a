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

#ifndef SEVDEL_ENCLAVE_HPP_
#define SEVDEL_ENCLAVE_HPP_

#include <atomic>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <vector>

#include "sevdel/bytes.hpp"
#include "sevdel/clock.hpp"

// Software stand-in for a per-file SGX enclave. It enforces the API
// contract only: secrets are reachable solely through a live handle and
// are overwritten with zeros when the enclave is destroyed. A host that
// reads process memory directly is outside what this can model; the
// provider is assumed rational.
namespace sevdel {

enum class EnclaveState { kAlive, kDestroyed };

std::string to_string(EnclaveState state);

struct DeletionReceipt {
  Bytes file_id;
  std::uint64_t enclave_id = 0;
  std::uint64_t destroyed_at = 0;   // logical time
  std::uint64_t zeroized_bytes = 0;

  bool operator==(const DeletionReceipt&) const = default;
};

class Enclave;

class EnclaveHandle {
 public:
  EnclaveHandle() = default;

  std::uint64_t id() const;
  const Bytes& file_id() const;
  EnclaveState state() const;
  bool alive() const { return state() == EnclaveState::kAlive; }

  // Both throw kEnclaveDestroyed once the enclave is gone; unseal throws
  // kNotFound for a key that was never sealed.
  void seal(const std::string& key, ByteSpan secret) const;
  void seal(const std::string& key, SecretBytes secret) const;
  SecretBytes unseal(const std::string& key) const;
  bool contains(const std::string& key) const;

  // Throws kAlreadyDestroyed on the second call.
  DeletionReceipt destroy() const;

  explicit operator bool() const { return static_cast<bool>(enclave_); }

 private:
  friend class EnclaveRegistry;
  explicit EnclaveHandle(std::shared_ptr<Enclave> enclave) : enclave_(std::move(enclave)) {}

  std::shared_ptr<Enclave> enclave_;
};

// Owns every enclave ever created. Destroyed enclaves stay as tombstones so
// deletion receipts remain auditable.
class EnclaveRegistry {
 public:
  // Receipts use `clock` for timestamps when given, otherwise an internal
  // event counter.
  explicit EnclaveRegistry(const LogicalClock* clock = nullptr) : clock_(clock) {}

  // Throws kDuplicateEnclave if a live enclave is already bound to file_id.
  EnclaveHandle create(ByteSpan file_id);
  // Most recent enclave bound to file_id, live or destroyed; throws kUnknownFile.
  EnclaveHandle lookup(ByteSpan file_id) const;
  std::vector<EnclaveHandle> history(ByteSpan file_id) const;
  std::size_t size() const;

 private:
  friend class Enclave;
  std::uint64_t timestamp() const;

  const LogicalClock* clock_;
  mutable std::shared_mutex mu_;
  std::map<Bytes, std::vector<std::shared_ptr<Enclave>>> by_file_;
  std::uint64_t next_id_ = 1;
  mutable std::atomic<std::uint64_t> events_{0};
};

}  // namespace sevdel

#endif  // SEVDEL_ENCLAVE_HPP_
