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

#ifndef SEVDEL_FILE_CODEC_HPP_
#define SEVDEL_FILE_CODEC_HPP_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "sevdel/bytes.hpp"

namespace sevdel {

struct FileIdentity {
  std::string owner_id;
  std::string file_name;
};

struct FileManifest {
  Bytes file_id;  // I_M, 32 bytes
  std::uint64_t n = 0;
  std::uint32_t s = 0;
  std::uint32_t sector_bits = 0;
  std::uint64_t original_len = 0;

  std::size_t sector_bytes() const { return sector_bits / 8; }
  bool operator==(const FileManifest&) const = default;
};

// Row-major n x s matrix of sector values, each < 2^sector_bits.
class BlockMatrix {
 public:
  BlockMatrix() = default;
  BlockMatrix(std::uint64_t n, std::uint32_t s) : n_(n), s_(s), values_(n * s, 0) {}

  std::uint64_t n() const { return n_; }
  std::uint32_t s() const { return s_; }

  // 0-based row i, column j.
  std::uint32_t at(std::uint64_t i, std::uint32_t j) const { return values_[i * s_ + j]; }
  std::uint32_t& at(std::uint64_t i, std::uint32_t j) { return values_[i * s_ + j]; }
  const std::vector<std::uint32_t>& values() const { return values_; }

  bool operator==(const BlockMatrix&) const = default;

 private:
  std::uint64_t n_ = 0;
  std::uint32_t s_ = 0;
  std::vector<std::uint32_t> values_;
};

// digest(owner_id || file_name || SHA-256(content)), each field length-prefixed.
Bytes derive_file_id(const FileIdentity& identity, ByteSpan content);

// Splits into ceil(len / (s * sector_bits / 8)) blocks; sectors are the
// little-endian value of their bytes and the tail is zero-padded.
std::pair<FileManifest, BlockMatrix> split(ByteSpan file, std::uint32_t s,
                                           std::uint32_t sector_bits,
                                           const FileIdentity& identity = {});

Bytes join(const FileManifest& manifest, const BlockMatrix& blocks);

// Throws kDimensionMismatch unless the matrix shape and value range agree
// with the manifest.
void check_dimensions(const FileManifest& manifest, const BlockMatrix& blocks);

}  // namespace sevdel

#endif  // SEVDEL_FILE_CODEC_HPP_
