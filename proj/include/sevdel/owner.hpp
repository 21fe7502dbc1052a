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

#ifndef SEVDEL_OWNER_HPP_
#define SEVDEL_OWNER_HPP_

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "sevdel/challenge.hpp"
#include "sevdel/cloud.hpp"
#include "sevdel/error.hpp"
#include "sevdel/file_codec.hpp"
#include "sevdel/nizk.hpp"
#include "sevdel/params.hpp"
#include "sevdel/rng.hpp"
#include "sevdel/types.hpp"

namespace sevdel {

// Memoizes H(I_M || i) for one file. Verifiers that check many challenges
// over the same file share one of these.
template <PairingGroup G>
class BlockHashCache {
 public:
  BlockHashCache(const SystemParams<G>& params, Bytes file_id)
      : params_(&params), file_id_(std::move(file_id)) {}

  const typename G::G1& get(std::uint64_t index) {
    auto it = cache_.find(index);
    if (it == cache_.end()) {
      it = cache_.emplace(index, block_hash(*params_, file_id_, index)).first;
    }
    return it->second;
  }

  const Bytes& file_id() const { return file_id_; }

 private:
  const SystemParams<G>* params_;
  Bytes file_id_;
  std::unordered_map<std::uint64_t, typename G::G1> cache_;
};

namespace owner {

template <PairingGroup G>
OwnerKeyPair<G> keygen(const SystemParams<G>& params, Rng& rng) {
  auto w = G::Scalar::random_nonzero(rng);
  return {w, params.g2 * w};
}

template <PairingGroup G>
SectorGenerators<G> gen_sector_generators(const SystemParams<G>& params, std::uint32_t s,
                                          Rng& rng) {
  SectorGenerators<G> gens;
  const typename G::G1FixedBase table(params.g1);
  for (std::uint32_t j = 0; j < s; ++j) {
    gens.x.push_back(G::Scalar::random_nonzero(rng));
    gens.u.push_back(table.mul(gens.x.back()));
  }
  return gens;
}

// phi_i = (H(I_M || i) * prod_j u_j^{m_ij})^w.
template <PairingGroup G>
TagSet<G> gen_tags(const SystemParams<G>& params, const typename G::Scalar& w,
                   std::span<const typename G::G1> u, const FileManifest& manifest,
                   const BlockMatrix& blocks) {
  check_dimensions(manifest, blocks);
  if (u.size() != manifest.s) {
    throw Error(ErrorCode::kDimensionMismatch, "generator count differs from s");
  }
  TagSet<G> tags;
  tags.phi.reserve(manifest.n);
  std::vector<typename G::Scalar> m(manifest.s);
  for (std::uint64_t i = 0; i < manifest.n; ++i) {
    for (std::uint32_t j = 0; j < manifest.s; ++j) m[j] = G::Scalar::from_u64(blocks.at(i, j));
    tags.phi.push_back((block_hash(params, manifest.file_id, i + 1) + G::msm(u, m)) * w);
  }
  return tags;
}

template <PairingGroup G>
struct Outsourced {
  SectorGenerators<G> generators;
  TagSet<G> tags;
};

template <PairingGroup G>
Outsourced<G> outsource(const SystemParams<G>& params, const OwnerKeyPair<G>& keys,
                        const FileManifest& manifest, const BlockMatrix& blocks, Rng& rng) {
  Outsourced<G> out;
  out.generators = gen_sector_generators(params, manifest.s, rng);
  out.tags = gen_tags(params, keys.w, out.generators.u, manifest, blocks);
  return out;
}

template <PairingGroup G>
Challenge<G> gen_challenge(const FileManifest& manifest, std::uint64_t count, Rng& rng) {
  return sample_challenge<G>(manifest.file_id, manifest.n, count, rng);
}

template <PairingGroup G>
Challenge<G> gen_challenge(const FileManifest& manifest, std::uint64_t count,
                           std::uint64_t seed) {
  Rng rng = Rng::from_u64(seed).derive("challenge");
  return gen_challenge<G>(manifest, count, rng);
}

// Accepts iff the link proof verifies and e(P2, g2) == e(prod H_i^{l_i} * U, W).
// Throws kMalformedProof for a proof whose shape does not match the file.
template <PairingGroup G>
bool verify_encryption_proof(const SystemParams<G>& params, const FileManifest& manifest,
                             std::span<const typename G::G1> u, const typename G::G2& W,
                             const typename G::G2& A, const typename G::G1& V,
                             const Challenge<G>& challenge, const EncProof<G>& proof,
                             BlockHashCache<G>& hashes) {
  const std::size_t s = manifest.s;
  if (u.size() != s || proof.p1_prime.size() != s || proof.p1_dprime.size() != s ||
      proof.nizk.t_prime.size() != s || proof.nizk.t_dprime.size() != s ||
      proof.nizk.z_q.size() != s || proof.nizk.z_r.size() != s) {
    throw Error(ErrorCode::kMalformedProof, "proof shape does not match the file");
  }
  if (hashes.file_id() != manifest.file_id) {
    throw Error(ErrorCode::kInvalidArgument, "hash cache is for a different file");
  }
  validate_challenge(challenge, manifest);

  const nizk::LinkStatement<G> st{params.g1, V, u, proof.p1_prime, proof.p1_dprime,
                                  proof.u_agg};
  const nizk::LinkCommitment<G> com{proof.nizk.t_prime, proof.nizk.t_dprime, proof.nizk.t_u};
  const Digest ctx = encryption_proof_context<G>(params, A, challenge, u, V, proof.p2);
  if (!(nizk::challenge(ctx, st, com) == proof.nizk.c)) return false;
  if (!nizk::check(st, com, proof.nizk.c, proof.nizk.z_q, proof.nizk.z_r)) return false;

  std::vector<typename G::G1> h;
  std::vector<typename G::Scalar> l;
  for (const auto& e : challenge.entries) {
    h.push_back(hashes.get(e.index));
    l.push_back(e.coeff);
  }
  return G::pairing_eq(proof.p2, params.g2, G::msm(h, l) + proof.u_agg, W);
}

template <PairingGroup G>
bool verify_encryption_proof(const SystemParams<G>& params, const FileManifest& manifest,
                             std::span<const typename G::G1> u, const typename G::G2& W,
                             const typename G::G2& A, const typename G::G1& V,
                             const Challenge<G>& challenge, const EncProof<G>& proof) {
  BlockHashCache<G> hashes(params, manifest.file_id);
  return verify_encryption_proof(params, manifest, u, W, A, V, challenge, proof, hashes);
}

// Builds an audit response from whatever encrypted blocks leaked. Throws
// kMissingBlock when a challenged block is not among them.
template <PairingGroup G>
AuditResponse<G> audit_respond(const FileManifest& manifest,
                               const std::map<std::uint64_t, CiphertextRow<G>>& leaked,
                               const EncTagSet<G>& sigma, const Challenge<G>& challenge) {
  validate_challenge(challenge, manifest);
  if (sigma.sigma.size() != manifest.n) {
    throw Error(ErrorCode::kDimensionMismatch, "encrypted tag count differs from n");
  }
  const std::size_t s = manifest.s;
  AuditResponse<G> resp;
  std::vector<typename G::Scalar> gammas;
  std::vector<typename G::G1> sig;
  for (const auto& e : challenge.entries) {
    auto it = leaked.find(e.index);
    if (it == leaked.end()) {
      throw Error(ErrorCode::kMissingBlock, "block " + std::to_string(e.index) + " not leaked");
    }
    if (it->second.e_prime.size() != s || it->second.e_dprime.size() != s) {
      throw Error(ErrorCode::kDimensionMismatch, "leaked row width differs from s");
    }
    resp.revealed.push_back(it->second);
    gammas.push_back(e.coeff);
    sig.push_back(sigma.sigma[e.index - 1]);
  }
  std::vector<typename G::G1> column(gammas.size());
  for (std::size_t j = 0; j < s; ++j) {
    for (std::size_t k = 0; k < column.size(); ++k) column[k] = resp.revealed[k].e_prime[j];
    resp.q1_prime.push_back(G::msm(column, gammas));
    for (std::size_t k = 0; k < column.size(); ++k) column[k] = resp.revealed[k].e_dprime[j];
    resp.q1_dprime.push_back(G::msm(column, gammas));
  }
  resp.q2 = G::msm(sig, gammas);
  return resp;
}

template <PairingGroup G>
std::map<std::uint64_t, CiphertextRow<G>> rows_of(const CiphertextMatrix<G>& ct) {
  std::map<std::uint64_t, CiphertextRow<G>> rows;
  for (std::uint64_t i = 0; i < ct.n; ++i) {
    CiphertextRow<G> row{i + 1, {}, {}};
    for (std::uint32_t j = 0; j < ct.s; ++j) {
      row.e_prime.push_back(ct.ep(i, j));
      row.e_dprime.push_back(ct.edp(i, j));
    }
    rows.emplace(i + 1, std::move(row));
  }
  return rows;
}

template <PairingGroup G>
AuditResponse<G> audit_respond(const FileManifest& manifest, const CiphertextMatrix<G>& leaked,
                               const EncTagSet<G>& sigma, const Challenge<G>& challenge) {
  return audit_respond(manifest, rows_of(leaked), sigma, challenge);
}

}  // namespace owner
}  // namespace sevdel

#endif  // SEVDEL_OWNER_HPP_
