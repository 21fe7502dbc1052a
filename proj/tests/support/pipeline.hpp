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

#ifndef SEVDEL_TESTS_PIPELINE_HPP_
#define SEVDEL_TESTS_PIPELINE_HPP_

#include <memory>
#include <string>

#include "sevdel/cloud.hpp"
#include "sevdel/owner.hpp"

namespace sevdel::testing {

// One file taken through outsource and encryption, for tests that start
// from an honest state and then tamper with a single piece.
template <PairingGroup G>
struct Pipeline {
  SystemParams<G> params;
  Rng rng;
  Bytes content;
  FileManifest manifest;
  BlockMatrix blocks;
  OwnerKeyPair<G> owner_keys;
  owner::Outsourced<G> outsourced;
  ServerKeyPair<G> server_keys;
  std::unique_ptr<EnclaveRegistry> registry = std::make_unique<EnclaveRegistry>();
  EnclaveHandle enclave;
  CiphertextMatrix<G> ct;
  std::vector<typename G::G1> v_gens;
  EncTagSet<G> sigma;

  Pipeline(std::uint64_t seed, std::size_t file_len, std::uint32_t s, unsigned sector_bits)
      : params(make_params<G>(sector_bits)), rng(Rng::from_u64(seed)) {
    content.resize(file_len);
    rng.fill(content);
    std::tie(manifest, blocks) =
        split(content, s, sector_bits, {"owner-" + std::to_string(seed), "file"});
    owner_keys = owner::keygen(params, rng);
    outsourced = owner::outsource(params, owner_keys, manifest, blocks, rng);
    server_keys = cloud::server_keygen(params, rng);
    enclave = registry->create(manifest.file_id);
    ct = cloud::encrypt_file(params, enclave, manifest, blocks, rng);
    v_gens = derive_v_generators(params, manifest.file_id, manifest.s);
    sigma = cloud::gen_enc_tags(params, server_keys, manifest, ct, u(), v_span());
  }

  std::span<const typename G::G1> u() const { return outsourced.generators.u; }
  std::span<const typename G::G1> v_span() const { return v_gens; }

  EncProof<G> prove(const Challenge<G>& ch) {
    return cloud::prove_encryption(params, enclave, server_keys.A, manifest, blocks, ct,
                                   outsourced.tags, u(), ch, rng);
  }

  bool verify(const Challenge<G>& ch, const EncProof<G>& proof) const {
    return owner::verify_encryption_proof(params, manifest, u(), owner_keys.W,
                                          server_keys.A, ct.V, ch, proof);
  }
};

}  // namespace sevdel::testing

#endif  // SEVDEL_TESTS_PIPELINE_HPP_
