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

#ifndef SEVDEL_NIZK_HPP_
#define SEVDEL_NIZK_HPP_

#include <span>
#include <utility>
#include <vector>

#include "sevdel/bytes.hpp"
#include "sevdel/error.hpp"
#include "sevdel/group/concepts.hpp"
#include "sevdel/hash.hpp"
#include "sevdel/rng.hpp"
#include "sevdel/types.hpp"

// Schnorr-style proof that the aggregated ciphertexts P1 and the aggregate
// U = prod u_j^{Q_j} open to the same exponents Q_j. Made non-interactive
// by hashing a caller-supplied context together with the statement and the
// commitments.
namespace sevdel::nizk {

template <PairingGroup G>
struct LinkStatement {
  typename G::G1 g1;
  typename G::G1 V;
  std::span<const typename G::G1> u;
  std::span<const typename G::G1> p1_prime;
  std::span<const typename G::G1> p1_dprime;
  typename G::G1 u_agg;
};

template <PairingGroup G>
struct LinkWitness {
  std::vector<typename G::Scalar> q;
  std::vector<typename G::Scalar> r;
};

template <PairingGroup G>
struct LinkNonces {
  std::vector<typename G::Scalar> k_q;
  std::vector<typename G::Scalar> k_r;
};

template <PairingGroup G>
struct LinkCommitment {
  std::vector<typename G::G1> t_prime;
  std::vector<typename G::G1> t_dprime;
  typename G::G1 t_u;
};

template <PairingGroup G>
std::pair<LinkCommitment<G>, LinkNonces<G>> commit(const LinkStatement<G>& st, Rng& rng) {
  using Scalar = typename G::Scalar;
  const std::size_t s = st.u.size();
  LinkNonces<G> nonces;
  LinkCommitment<G> com;
  for (std::size_t j = 0; j < s; ++j) {
    nonces.k_q.push_back(Scalar::random(rng));
    nonces.k_r.push_back(Scalar::random(rng));
    com.t_prime.push_back(st.g1 * nonces.k_q[j] + st.V * nonces.k_r[j]);
    com.t_dprime.push_back(st.g1 * nonces.k_r[j]);
  }
  com.t_u = G::msm(st.u, nonces.k_q);
  return {std::move(com), std::move(nonces)};
}

// z = k + c * witness, component-wise.
template <PairingGroup G>
std::pair<std::vector<typename G::Scalar>, std::vector<typename G::Scalar>> respond(
    const LinkNonces<G>& nonces, const LinkWitness<G>& witness, const typename G::Scalar& c) {
  std::vector<typename G::Scalar> z_q, z_r;
  for (std::size_t j = 0; j < nonces.k_q.size(); ++j) {
    z_q.push_back(nonces.k_q[j] + c * witness.q[j]);
    z_r.push_back(nonces.k_r[j] + c * witness.r[j]);
  }
  return {std::move(z_q), std::move(z_r)};
}

template <PairingGroup G>
typename G::Scalar challenge(const Digest& context, const LinkStatement<G>& st,
                             const LinkCommitment<G>& com) {
  Sha256 h;
  h.update("sevdel/fs").update(context);
  h.field(st.g1.to_bytes()).field(st.V.to_bytes()).u64(st.u.size());
  for (const auto& x : st.u) h.field(x.to_bytes());
  for (const auto& x : st.p1_prime) h.field(x.to_bytes());
  for (const auto& x : st.p1_dprime) h.field(x.to_bytes());
  h.field(st.u_agg.to_bytes());
  for (const auto& x : com.t_prime) h.field(x.to_bytes());
  for (const auto& x : com.t_dprime) h.field(x.to_bytes());
  h.field(com.t_u.to_bytes());
  const Digest seed = h.finish();
  // 512 bits reduced mod p keeps the challenge statistically uniform.
  Bytes wide;
  for (std::uint64_t k = 0; k < 2; ++k) {
    Digest part = Sha256().update(seed).u64(k).finish();
    wide.insert(wide.end(), part.begin(), part.end());
  }
  return G::Scalar::from_bytes_reduce(wide);
}

template <PairingGroup G>
bool check(const LinkStatement<G>& st, const LinkCommitment<G>& com,
           const typename G::Scalar& c, std::span<const typename G::Scalar> z_q,
           std::span<const typename G::Scalar> z_r) {
  using G1 = typename G::G1;
  const std::size_t s = st.u.size();
  if (st.p1_prime.size() != s || st.p1_dprime.size() != s || com.t_prime.size() != s ||
      com.t_dprime.size() != s || z_q.size() != s || z_r.size() != s) {
    throw Error(ErrorCode::kMalformedProof, "sector count mismatch in link proof");
  }
  for (std::size_t j = 0; j < s; ++j) {
    const G1 bases1[3] = {st.g1, st.V, st.p1_prime[j]};
    const typename G::Scalar ks1[3] = {z_q[j], z_r[j], -c};
    if (!(G::msm(bases1, ks1) == com.t_prime[j])) return false;
    const G1 bases2[2] = {st.g1, st.p1_dprime[j]};
    const typename G::Scalar ks2[2] = {z_r[j], -c};
    if (!(G::msm(bases2, ks2) == com.t_dprime[j])) return false;
  }
  return G::msm(st.u, z_q) == com.t_u + st.u_agg * c;
}

// Special soundness: two accepting transcripts on one commitment with
// distinct challenges determine the witness.
template <PairingGroup G>
LinkWitness<G> extract(const typename G::Scalar& c1, std::span<const typename G::Scalar> z_q1,
                       std::span<const typename G::Scalar> z_r1, const typename G::Scalar& c2,
                       std::span<const typename G::Scalar> z_q2,
                       std::span<const typename G::Scalar> z_r2) {
  const auto inv = (c1 - c2).inverse();
  LinkWitness<G> w;
  for (std::size_t j = 0; j < z_q1.size(); ++j) {
    w.q.push_back((z_q1[j] - z_q2[j]) * inv);
    w.r.push_back((z_r1[j] - z_r2[j]) * inv);
  }
  return w;
}

}  // namespace sevdel::nizk

#endif  // SEVDEL_NIZK_HPP_
