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

#ifndef SEVDEL_PARAMS_HPP_
#define SEVDEL_PARAMS_HPP_

#include <algorithm>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "sevdel/bytes.hpp"
#include "sevdel/error.hpp"
#include "sevdel/group/concepts.hpp"
#include "sevdel/hash.hpp"

namespace sevdel {

// Domain-separation tags for hash_to_g1. Block hashes H(I_M || i) and the
// publicly derived encrypted-tag generators v_j never share a domain.
inline constexpr std::string_view kDomainBlock = "sevdel/H";
inline constexpr std::string_view kDomainVGen = "sevdel/vgen";

template <PairingGroup G>
struct SystemParams {
  std::string group_id{G::kName};
  typename G::G1 g1 = G::G1::generator();
  typename G::G2 g2 = G::G2::generator();
  unsigned sector_bits = 32;
  std::vector<std::string> hash_domains{std::string(kDomainBlock),
                                        std::string(kDomainVGen)};

  // Binds transcripts and the contract to these exact parameters.
  Digest digest() const {
    Sha256 h;
    h.update("sevdel/params").field(group_id).field(g1.to_bytes()).field(g2.to_bytes());
    h.u64(sector_bits).u64(hash_domains.size());
    for (const auto& d : hash_domains) h.field(d);
    return h.finish();
  }
};

template <PairingGroup G>
SystemParams<G> make_params(unsigned sector_bits = 32) {
  if (sector_bits != 8 && sector_bits != 16 && sector_bits != 32) {
    throw Error(ErrorCode::kInvalidArgument, "sector_bits must be 8, 16 or 32");
  }
  SystemParams<G> params;
  params.sector_bits = sector_bits;
  return params;
}

template <PairingGroup G>
typename G::G1 hash_to_g1(const SystemParams<G>& params, std::string_view domain,
                          ByteSpan msg) {
  if (std::find(params.hash_domains.begin(), params.hash_domains.end(), domain) ==
      params.hash_domains.end()) {
    throw Error(ErrorCode::kUnknownDomain, std::string(domain));
  }
  return G::hash_to_g1(as_bytes(domain), msg);
}

// Maps a group element into the exponent: SHA-256 of the canonical
// compressed encoding, read big-endian and reduced mod p.
template <PairingGroup G>
typename G::Scalar elem_to_scalar(const typename G::G1& x) {
  Digest d = sha256(x.to_bytes());
  return G::Scalar::from_bytes_reduce(d);
}

// file_id || u64be(index); index is 1-based.
inline Bytes indexed_message(ByteSpan file_id, std::uint64_t index) {
  ByteWriter w;
  w.raw(file_id);
  w.u64(index);
  return std::move(w).take();
}

template <PairingGroup G>
typename G::G1 block_hash(const SystemParams<G>& params, ByteSpan file_id,
                          std::uint64_t index) {
  return hash_to_g1(params, kDomainBlock, indexed_message(file_id, index));
}

template <PairingGroup G>
std::vector<typename G::G1> derive_v_generators(const SystemParams<G>& params,
                                                ByteSpan file_id, std::size_t s) {
  std::vector<typename G::G1> out;
  out.reserve(s);
  for (std::size_t j = 1; j <= s; ++j) {
    out.push_back(hash_to_g1(params, kDomainVGen, indexed_message(file_id, j)));
  }
  return out;
}

}  // namespace sevdel

#endif  // SEVDEL_PARAMS_HPP_
