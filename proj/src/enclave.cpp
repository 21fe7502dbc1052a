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

#include "sevdel/enclave.hpp"

#include <stdexcept>

#include "sevdel/error.hpp"

namespace sevdel {

std::string to_string(EnclaveState state) {
  return state == EnclaveState::kAlive ? "ALIVE" : "DESTROYED";
}

class Enclave {
 public:
  Enclave(std::uint64_t id, Bytes file_id, const EnclaveRegistry* registry)
      : id_(id), file_id_(std::move(file_id)), registry_(registry) {}

  std::uint64_t id() const { return id_; }
  const Bytes& file_id() const { return file_id_; }

  EnclaveState state() const {
    std::lock_guard lock(mu_);
    return state_;
  }

  void seal(const std::string& key, SecretBytes secret) {
    std::lock_guard lock(mu_);
    require_alive();
    secrets_[key] = std::move(secret);
  }

  SecretBytes unseal(const std::string& key) const {
    std::lock_guard lock(mu_);
    require_alive();
    auto it = secrets_.find(key);
    if (it == secrets_.end()) throw Error(ErrorCode::kNotFound, key);
    return it->second;
  }

  bool contains(const std::string& key) const {
    std::lock_guard lock(mu_);
    require_alive();
    return secrets_.count(key) != 0;
  }

  DeletionReceipt destroy() {
    std::lock_guard lock(mu_);
    if (state_ == EnclaveState::kDestroyed) {
      throw Error(ErrorCode::kAlreadyDestroyed, "enclave " + std::to_string(id_));
    }
    std::uint64_t wiped = 0;
    for (auto& [key, secret] : secrets_) {
      secret.wipe();
      wiped += secret.size();
    }
    // Post-destroy assertion: every byte that backed a secret reads zero
    // before the storage is released.
    for (const auto& [key, secret] : secrets_) {
      if (!secret.is_zero()) {
        throw std::logic_error("enclave zeroization failed for " + key);
      }
    }
    secrets_.clear();
    state_ = EnclaveState::kDestroyed;
    return DeletionReceipt{file_id_, id_, registry_->timestamp(), wiped};
  }

 private:
  void require_alive() const {
    if (state_ != EnclaveState::kAlive) {
      throw Error(ErrorCode::kEnclaveDestroyed, "enclave " + std::to_string(id_));
    }
  }

  const std::uint64_t id_;
  const Bytes file_id_;
  const EnclaveRegistry* registry_;
  mutable std::mutex mu_;
  EnclaveState state_ = EnclaveState::kAlive;
  std::map<std::string, SecretBytes> secrets_;
};

std::uint64_t EnclaveHandle::id() const { return enclave_->id(); }
const Bytes& EnclaveHandle::file_id() const { return enclave_->file_id(); }
EnclaveState EnclaveHandle::state() const { return enclave_->state(); }

void EnclaveHandle::seal(const std::string& key, ByteSpan secret) const {
  enclave_->seal(key, SecretBytes(secret));
}

void EnclaveHandle::seal(const std::string& key, SecretBytes secret) const {
  enclave_->seal(key, std::move(secret));
}

SecretBytes EnclaveHandle::unseal(const std::string& key) const {
  return enclave_->unseal(key);
}

bool EnclaveHandle::contains(const std::string& key) const {
  return enclave_->contains(key);
}

DeletionReceipt EnclaveHandle::destroy() const { return enclave_->destroy(); }

EnclaveHandle EnclaveRegistry::create(ByteSpan file_id) {
  std::unique_lock lock(mu_);
  Bytes key(file_id.begin(), file_id.end());
  auto& chain = by_file_[key];
  if (!chain.empty() && chain.back()->state() == EnclaveState::kAlive) {
    throw Error(ErrorCode::kDuplicateEnclave, "live enclave already bound to " + to_hex(key));
  }
  chain.push_back(std::make_shared<Enclave>(next_id_++, key, this));
  return EnclaveHandle(chain.back());
}

EnclaveHandle EnclaveRegistry::lookup(ByteSpan file_id) const {
  std::shared_lock lock(mu_);
  auto it = by_file_.find(Bytes(file_id.begin(), file_id.end()));
  if (it == by_file_.end() || it->second.empty()) {
    throw Error(ErrorCode::kUnknownFile, to_hex(file_id));
  }
  return EnclaveHandle(it->second.back());
}

std::vector<EnclaveHandle> EnclaveRegistry::history(ByteSpan file_id) const {
  std::shared_lock lock(mu_);
  std::vector<EnclaveHandle> out;
  auto it = by_file_.find(Bytes(file_id.begin(), file_id.end()));
  if (it != by_file_.end()) {
    for (const auto& e : it->second) out.push_back(EnclaveHandle(e));
  }
  return out;
}

std::size_t EnclaveRegistry::size() const {
  std::shared_lock lock(mu_);
  std::size_t total = 0;
  for (const auto& [id, chain] : by_file_) total += chain.size();
  return total;
}

std::uint64_t EnclaveRegistry::timestamp() const {
  if (clock_ != nullptr) return clock_->now();
  return ++events_;
}

}  // namespace sevdel
