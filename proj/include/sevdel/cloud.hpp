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

#ifndef SEVDEL_CLOUD_HPP_
#define SEVDEL_CLOUD_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sevdel/bytes.hpp"
#include "sevdel/challenge.hpp"
#include "sevdel/dlog.hpp"
#include "sevdel/enclave.hpp"
#include "sevdel/error.hpp"
#include "sevdel/file_codec.hpp"
#include "sevdel/nizk.hpp"
#include "sevdel/params.hpp"
#include "sevdel/rng.hpp"
#include "sevdel/types.hpp"

namespace sevdel {

// Sealed-secret names inside a file's enclave.
inline const std::string kSealedKey = "v";
inline const std::string kSealedRandomness = "r";

// Context bound into the Fiat-Shamir challenge of an encryption proof.
template <PairingGroup G>
Digest encryption_proof_context(const SystemParams<G>& params, const typename G::G2& A,
                                const Challenge<G>& challenge,
                                std::span<const typename G::G1> u, const typename G::G1& V,
                                const typename G::G1& p2) {
  Sha256 h;
  h.update("sevdel/enc-proof").update(params.digest()).field(A.to_bytes());
  hash_challenge(h, challenge);
  h.u64(u.size());
  for (const auto& x : u) h.field(x.to_bytes());
  h.field(V.to_bytes()).field(p2.to_bytes());
  return h.finish();
}

// H(I_M || i) * prod_j u_j^{h(E'_ij)} v_j^{h(E''_ij)}: the value an
// encrypted-block tag signs. Also recomputed by the contract during audits.
template <PairingGroup G>
typename G::G1 enc_tag_base(const SystemParams<G>& params, ByteSpan file_id,
                            std::uint64_t index, std::span<const typename G::G1> e_prime,
                            std::span<const typename G::G1> e_dprime,
                            std::span<const typename G::G1> u,
                            std::span<const typename G::G1> v_gens) {
  const std::size_t s = u.size();
  if (e_prime.size() != s || e_dprime.size() != s || v_gens.size() != s) {
    throw Error(ErrorCode::kDimensionMismatch, "ciphertext row / generator count");
  }
  std::vector<typename G::G1> bases;
  std::vector<typename G::Scalar> exps;
  bases.reserve(2 * s);
  exps.reserve(2 * s);
  for (std::size_t j = 0; j < s; ++j) {
    bases.push_back(u[j]);
    exps.push_back(elem_to_scalar<G>(e_prime[j]));
    bases.push_back(v_gens[j]);
    exps.push_back(elem_to_scalar<G>(e_dprime[j]));
  }
  return block_hash(params, file_id, index) + G::msm(bases, exps);
}

namespace cloud {

template <PairingGroup G>
ServerKeyPair<G> server_keygen(const SystemParams<G>& params, Rng& rng) {
  auto a = G::Scalar::random_nonzero(rng);
  return {a, params.g2 * a};
}

namespace detail {

template <PairingGroup G>
void check_enclave_binding(const EnclaveHandle& enclave, const FileManifest& manifest) {
  if (!enclave) throw Error(ErrorCode::kInvalidArgument, "null enclave handle");
  if (enclave.file_id() != manifest.file_id) {
    throw Error(ErrorCode::kInvalidArgument, "enclave bound to a different file");
  }
}

template <PairingGroup G>
void check_ciphertext_shape(const FileManifest& manifest, const CiphertextMatrix<G>& ct) {
  const std::uint64_t cells = manifest.n * manifest.s;
  if (ct.n != manifest.n || ct.s != manifest.s || ct.e_prime.size() != cells ||
      ct.e_dprime.size() != cells) {
    throw Error(ErrorCode::kDimensionMismatch, "ciphertext matrix does not match manifest");
  }
}

template <PairingGroup G>
typename G::Scalar unseal_scalar(const EnclaveHandle& enclave, const std::string& key) {
  SecretBytes raw = enclave.unseal(key);
  return G::Scalar::from_bytes(raw.view());
}

}  // namespace detail

// Blockwise lifted ElGamal under the file's enclave key. A fresh key v is
// sealed on first use; the per-sector randomness r_ij is sealed alongside
// it because proofs of encryption need it later.
template <PairingGroup G>
CiphertextMatrix<G> encrypt_file(const SystemParams<G>& params, const EnclaveHandle& enclave,
                                 const FileManifest& manifest, const BlockMatrix& blocks,
                                 Rng& rng) {
  using Scalar = typename G::Scalar;
  detail::check_enclave_binding<G>(enclave, manifest);
  check_dimensions(manifest, blocks);

  Scalar v;
  if (enclave.contains(kSealedKey)) {
    v = detail::unseal_scalar<G>(enclave, kSealedKey);
  } else {
    v = Scalar::random_nonzero(rng);
    enclave.seal(kSealedKey, SecretBytes(v.to_bytes()));
  }

  CiphertextMatrix<G> ct;
  ct.n = manifest.n;
  ct.s = manifest.s;
  ct.V = params.g1 * v;
  const typename G::G1FixedBase g_table(params.g1);
  const typename G::G1FixedBase v_table(ct.V);

  const std::size_t cells = static_cast<std::size_t>(manifest.n) * manifest.s;
  ct.e_prime.reserve(cells);
  ct.e_dprime.reserve(cells);
  Bytes randomness;
  randomness.reserve(cells * Scalar::kEncodedSize);
  for (std::uint64_t i = 0; i < manifest.n; ++i) {
    for (std::uint32_t j = 0; j < manifest.s; ++j) {
      Scalar r = Scalar::random(rng);
      Bytes rb = r.to_bytes();
      randomness.insert(randomness.end(), rb.begin(), rb.end());
      ct.e_prime.push_back(g_table.mul(Scalar::from_u64(blocks.at(i, j))) + v_table.mul(r));
      ct.e_dprime.push_back(g_table.mul(r));
    }
  }
  enclave.seal(kSealedRandomness, SecretBytes(std::move(randomness)));
  return ct;
}

// Recovers m in [0, 2^sector_bits) from g1^m = E' / E''^v.
template <PairingGroup G>
std::uint64_t decrypt_with_key(const SystemParams<G>& params, const typename G::Scalar& v,
                               const typename G::G1& e_prime, const typename G::G1& e_dprime) {
  if (!(params.g1 == G::G1::generator())) {
    throw Error(ErrorCode::kInvalidArgument, "BSGS table assumes the standard generator");
  }
  const auto target = e_prime - e_dprime * v;
  auto m = generator_bsgs<G>(params.sector_bits).solve(target);
  if (!m) {
    throw Error(ErrorCode::kDlogOutOfRange,
                "plaintext exceeds 2^" + std::to_string(params.sector_bits));
  }
  return *m;
}

template <PairingGroup G>
std::uint64_t decrypt_block(const SystemParams<G>& params, const EnclaveHandle& enclave,
                            const typename G::G1& e_prime, const typename G::G1& e_dprime) {
  const auto v = detail::unseal_scalar<G>(enclave, kSealedKey);
  return decrypt_with_key<G>(params, v, e_prime, e_dprime);
}

template <PairingGroup G>
BlockMatrix decrypt_file(const SystemParams<G>& params, const EnclaveHandle& enclave,
                         const FileManifest& manifest, const CiphertextMatrix<G>& ct) {
  detail::check_enclave_binding<G>(enclave, manifest);
  detail::check_ciphertext_shape<G>(manifest, ct);
  const auto v = detail::unseal_scalar<G>(enclave, kSealedKey);
  BlockMatrix out(manifest.n, manifest.s);
  for (std::uint64_t i = 0; i < manifest.n; ++i) {
    for (std::uint32_t j = 0; j < manifest.s; ++j) {
      out.at(i, j) =
          static_cast<std::uint32_t>(decrypt_with_key<G>(params, v, ct.ep(i, j), ct.edp(i, j)));
    }
  }
  return out;
}

template <PairingGroup G>
EncTagSet<G> gen_enc_tags(const SystemParams<G>& params, const ServerKeyPair<G>& keys,
                          const FileManifest& manifest, const CiphertextMatrix<G>& ct,
                          std::span<const typename G::G1> u,
                          std::span<const typename G::G1> v_gens) {
  detail::check_ciphertext_shape<G>(manifest, ct);
  if (u.size() != manifest.s || v_gens.size() != manifest.s) {
    throw Error(ErrorCode::kDimensionMismatch, "generator count differs from s");
  }
  EncTagSet<G> tags;
  tags.sigma.reserve(manifest.n);
  const std::size_t s = manifest.s;
  for (std::uint64_t i = 0; i < manifest.n; ++i) {
    std::span<const typename G::G1> ep(ct.e_prime.data() + i * s, s);
    std::span<const typename G::G1> edp(ct.e_dprime.data() + i * s, s);
    tags.sigma.push_back(
        enc_tag_base<G>(params, manifest.file_id, i + 1, ep, edp, u, v_gens) * keys.a);
  }
  return tags;
}

// Aggregates the challenged ciphertexts, plaintext sectors and owner tags,
// then proves in zero knowledge that P1 encrypts the same Q_j that the tag
// aggregate commits to.
template <PairingGroup G>
EncProof<G> prove_encryption(const SystemParams<G>& params, const EnclaveHandle& enclave,
                             const typename G::G2& A, const FileManifest& manifest,
                             const BlockMatrix& blocks, const CiphertextMatrix<G>& ct,
                             const TagSet<G>& tags, std::span<const typename G::G1> u,
                             const Challenge<G>& challenge, Rng& rng) {
  using Scalar = typename G::Scalar;
  using G1 = typename G::G1;
  detail::check_enclave_binding<G>(enclave, manifest);
  const SecretBytes randomness = enclave.unseal(kSealedRandomness);
  validate_challenge(challenge, manifest);
  check_dimensions(manifest, blocks);
  detail::check_ciphertext_shape<G>(manifest, ct);
  if (tags.phi.size() != manifest.n || u.size() != manifest.s ||
      randomness.size() != manifest.n * manifest.s * Scalar::kEncodedSize) {
    throw Error(ErrorCode::kDimensionMismatch, "tags / generators / sealed randomness");
  }

  const std::size_t s = manifest.s;
  const std::size_t q = challenge.entries.size();
  std::vector<Scalar> coeffs;
  std::vector<G1> phis;
  for (const auto& e : challenge.entries) {
    coeffs.push_back(e.coeff);
    phis.push_back(tags.phi[e.index - 1]);
  }

  EncProof<G> proof;
  nizk::LinkWitness<G> witness;
  std::vector<G1> column(q);
  for (std::size_t j = 0; j < s; ++j) {
    Scalar qj, rj;
    for (std::size_t k = 0; k < q; ++k) {
      const std::uint64_t row = challenge.entries[k].index - 1;
      const auto& l = coeffs[k];
      qj += l * Scalar::from_u64(blocks.at(row, static_cast<std::uint32_t>(j)));
      ByteSpan rb = randomness.view().subspan((row * s + j) * Scalar::kEncodedSize,
                                              Scalar::kEncodedSize);
      rj += l * Scalar::from_bytes(rb);
    }
    witness.q.push_back(qj);
    witness.r.push_back(rj);
    for (std::size_t k = 0; k < q; ++k) {
      column[k] = ct.ep(challenge.entries[k].index - 1, static_cast<std::uint32_t>(j));
    }
    proof.p1_prime.push_back(G::msm(column, coeffs));
    for (std::size_t k = 0; k < q; ++k) {
      column[k] = ct.edp(challenge.entries[k].index - 1, static_cast<std::uint32_t>(j));
    }
    proof.p1_dprime.push_back(G::msm(column, coeffs));
  }
  proof.p2 = G::msm(phis, coeffs);
  proof.u_agg = G::msm(u, witness.q);

  const nizk::LinkStatement<G> st{params.g1, ct.V, u, proof.p1_prime, proof.p1_dprime,
                                  proof.u_agg};
  const Digest ctx = encryption_proof_context<G>(params, A, challenge, u, ct.V, proof.p2);
  auto [com, nonces] = nizk::commit(st, rng);
  const Scalar c = nizk::challenge(ctx, st, com);
  auto [z_q, z_r] = nizk::respond(nonces, witness, c);
  proof.nizk = LinkProof<G>{std::move(com.t_prime), std::move(com.t_dprime), com.t_u, c,
                            std::move(z_q), std::move(z_r)};
  return proof;
}

// Destroys the live enclave bound to file_id. Throws kUnknownFile when no
// live enclave exists, including on a second delete.
inline DeletionReceipt delete_file(EnclaveRegistry& registry, ByteSpan file_id) {
  EnclaveHandle handle = registry.lookup(file_id);
  if (!handle.alive()) {
    throw Error(ErrorCode::kUnknownFile, "no live enclave for " + to_hex(file_id));
  }
  return handle.destroy();
}

}  // namespace cloud
}  // namespace sevdel

#endif  // SEVDEL_CLOUD_HPP_
