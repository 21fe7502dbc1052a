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

#ifndef SEVDEL_TYPES_HPP_
#define SEVDEL_TYPES_HPP_

#include <cstdint>
#include <vector>

#include "sevdel/bytes.hpp"
#include "sevdel/group/concepts.hpp"

// Protocol messages and key material shared by the owner, cloud and
// contract sides. Indices are 1-based block numbers throughout.
namespace sevdel {

template <PairingGroup G>
struct OwnerKeyPair {
  typename G::Scalar w;  // never leaves the owner
  typename G::G2 W;
};

template <PairingGroup G>
struct SectorGenerators {
  std::vector<typename G::Scalar> x;  // private to the owner
  std::vector<typename G::G1> u;      // u_j = g1^{x_j}, published
};

template <PairingGroup G>
struct TagSet {
  std::vector<typename G::G1> phi;
  bool operator==(const TagSet&) const = default;
};

template <PairingGroup G>
struct ChallengeEntry {
  std::uint64_t index = 0;
  typename G::Scalar coeff;
  bool operator==(const ChallengeEntry&) const = default;
};

// Used both for the encryption check (l_i) and the leakage audit (gamma_i).
template <PairingGroup G>
struct Challenge {
  Bytes file_id;
  Bytes nonce;
  std::vector<ChallengeEntry<G>> entries;
  bool operator==(const Challenge&) const = default;
};

template <PairingGroup G>
struct ServerKeyPair {
  typename G::Scalar a;
  typename G::G2 A;
};

// Lifted ElGamal ciphertexts, row-major n x s: E'_ij = g1^m V^r, E''_ij = g1^r.
template <PairingGroup G>
struct CiphertextMatrix {
  std::uint64_t n = 0;
  std::uint32_t s = 0;
  std::vector<typename G::G1> e_prime;
  std::vector<typename G::G1> e_dprime;
  typename G::G1 V;

  // 0-based row/column.
  const typename G::G1& ep(std::uint64_t i, std::uint32_t j) const { return e_prime[i * s + j]; }
  const typename G::G1& edp(std::uint64_t i, std::uint32_t j) const { return e_dprime[i * s + j]; }
  typename G::G1& ep(std::uint64_t i, std::uint32_t j) { return e_prime[i * s + j]; }
  typename G::G1& edp(std::uint64_t i, std::uint32_t j) { return e_dprime[i * s + j]; }

  bool operator==(const CiphertextMatrix&) const = default;
};

// One encrypted block as revealed during an audit.
template <PairingGroup G>
struct CiphertextRow {
  std::uint64_t index = 0;
  std::vector<typename G::G1> e_prime;
  std::vector<typename G::G1> e_dprime;
  bool operator==(const CiphertextRow&) const = default;
};

template <PairingGroup G>
struct EncTagSet {
  std::vector<typename G::G1> sigma;
  bool operator==(const EncTagSet&) const = default;
};

// Sigma-protocol transcript for
//   P1'_j = g1^{Q_j} V^{R_j},  P1''_j = g1^{R_j},  U = prod_j u_j^{Q_j}.
// The responses z are the only scalars that leave the prover, each blinded
// by a fresh nonce.
template <PairingGroup G>
struct LinkProof {
  std::vector<typename G::G1> t_prime;
  std::vector<typename G::G1> t_dprime;
  typename G::G1 t_u;
  typename G::Scalar c;
  std::vector<typename G::Scalar> z_q;
  std::vector<typename G::Scalar> z_r;
  bool operator==(const LinkProof&) const = default;
};

template <PairingGroup G>
struct EncProof {
  std::vector<typename G::G1> p1_prime;   // per sector
  std::vector<typename G::G1> p1_dprime;  // per sector
  typename G::G1 p2;                      // prod phi_i^{l_i}
  typename G::G1 u_agg;                   // prod u_j^{Q_j}
  LinkProof<G> nizk;
  bool operator==(const EncProof&) const = default;
};

template <PairingGroup G>
struct AuditResponse {
  std::vector<typename G::G1> q1_prime;
  std::vector<typename G::G1> q1_dprime;
  typename G::G1 q2;
  std::vector<CiphertextRow<G>> revealed;  // in challenge order
  bool operator==(const AuditResponse&) const = default;
};

}  // namespace sevdel

#endif  // SEVDEL_TYPES_HPP_
