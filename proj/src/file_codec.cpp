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

#include "sevdel/file_codec.hpp"

#include "sevdel/error.hpp"
#include "sevdel/hash.hpp"

namespace sevdel {

Bytes derive_file_id(const FileIdentity& identity, ByteSpan content) {
  Digest content_digest = sha256(content);
  Digest id = Sha256()
                  .update("sevdel/file-id")
                  .field(identity.owner_id)
                  .field(identity.file_name)
                  .field(content_digest)
                  .finish();
  return Bytes(id.begin(), id.end());
}

std::pair<FileManifest, BlockMatrix> split(ByteSpan file, std::uint32_t s,
                                           std::uint32_t sector_bits,
                                           const FileIdentity& identity) {
  if (sector_bits != 8 && sector_bits != 16 && sector_bits != 32) {
    throw Error(ErrorCode::kInvalidArgument, "sector_bits must be 8, 16 or 32");
  }
  if (s == 0) throw Error(ErrorCode::kInvalidArgument, "s must be positive");
  if (file.empty()) throw Error(ErrorCode::kEmptyFile, "nothing to outsource");

  const std::size_t sector_bytes = sector_bits / 8;
  const std::size_t block_bytes = sector_bytes * s;
  FileManifest manifest;
  manifest.file_id = derive_file_id(identity, file);
  manifest.n = (file.size() + block_bytes - 1) / block_bytes;
  manifest.s = s;
  manifest.sector_bits = sector_bits;
  manifest.original_len = file.size();

  BlockMatrix blocks(manifest.n, s);
  for (std::size_t pos = 0; pos < file.size(); ++pos) {
    std::size_t sector = pos / sector_bytes;
    std::size_t shift = 8 * (pos % sector_bytes);
    blocks.at(sector / s, static_cast<std::uint32_t>(sector % s)) |=
        static_cast<std::uint32_t>(file[pos]) << shift;
  }
  return {std::move(manifest), std::move(blocks)};
}

void check_dimensions(const FileManifest& manifest, const BlockMatrix& blocks) {
  if (manifest.s == 0 || manifest.n == 0 || blocks.n() != manifest.n ||
      blocks.s() != manifest.s) {
    throw Error(ErrorCode::kDimensionMismatch, "block matrix does not match manifest");
  }
  const std::uint64_t block_bytes =
      static_cast<std::uint64_t>(manifest.s) * manifest.sector_bytes();
  if (block_bytes == 0 || manifest.original_len > manifest.n * block_bytes ||
      manifest.original_len <= (manifest.n - 1) * block_bytes) {
    throw Error(ErrorCode::kDimensionMismatch, "block count inconsistent with length");
  }
  if (manifest.sector_bits < 32) {
    const std::uint32_t bound = 1u << manifest.sector_bits;
    for (std::uint32_t v : blocks.values()) {
      if (v >= bound) throw Error(ErrorCode::kDimensionMismatch, "sector value out of range");
    }
  }
  // Padding past original_len must be zero.
  const std::size_t sector_bytes = manifest.sector_bytes();
  const std::uint64_t padded = manifest.n * block_bytes;
  for (std::uint64_t pos = manifest.original_len; pos < padded; ++pos) {
    std::uint64_t sector = pos / sector_bytes;
    std::uint32_t shift = static_cast<std::uint32_t>(8 * (pos % sector_bytes));
    if ((blocks.at(sector / manifest.s, static_cast<std::uint32_t>(sector % manifest.s)) >>
         shift) & 0xffu) {
      throw Error(ErrorCode::kDimensionMismatch, "non-zero padding");
    }
  }
}

Bytes join(const FileManifest& manifest, const BlockMatrix& blocks) {
  check_dimensions(manifest, blocks);
  const std::size_t sector_bytes = manifest.sector_bytes();
  Bytes out(manifest.original_len);
  for (std::size_t pos = 0; pos < out.size(); ++pos) {
    std::size_t sector = pos / sector_bytes;
    std::size_t shift = 8 * (pos % sector_bytes);
    out[pos] = static_cast<std::uint8_t>(
        blocks.at(sector / manifest.s, static_cast<std::uint32_t>(sector % manifest.s)) >>
        shift);
  }
  return out;
}

}  // namespace sevdel
