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

#ifndef SEVDEL_WIRE_HPP_
#define SEVDEL_WIRE_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "sevdel/bytes.hpp"
#include "sevdel/enclave.hpp"
#include "sevdel/error.hpp"
#include "sevdel/file_codec.hpp"
#include "sevdel/types.hpp"

// Canonical JSON (sorted keys, hex group elements) for the small protocol
// messages; packed binary with a 16-byte magic and a version byte for the
// bulky per-block data.
namespace sevdel::wire {

using Json = nlohmann::json;

inline constexpr std::uint8_t kVersion = 1;
inline constexpr std::string_view kMagicCiphertext = "sevdel/ct";
inline constexpr std::string_view kMagicOwnerTags = "sevdel/phi";
inline constexpr std::string_view kMagicEncTags = "sevdel/sigma";
inline constexpr std::string_view kMagicBlocks = "sevdel/blocks";
inline constexpr std::string_view kMagicProof = "sevdel/proof";

namespace detail {

inline void write_header(ByteWriter& w, std::string_view magic) {
  std::uint8_t buf[16] = {};
  std::copy(magic.begin(), magic.end(), buf);
  w.raw(ByteSpan(buf, 16));
  w.u8(kVersion);
}

inline void read_header(ByteReader& r, std::string_view magic) {
  std::uint8_t expect[16] = {};
  std::copy(magic.begin(), magic.end(), expect);
  ByteSpan got = r.raw(16);
  if (!std::equal(got.begin(), got.end(), expect)) {
    throw Error(ErrorCode::kFormat, "bad magic, expected " + std::string(magic));
  }
  if (r.u8() != kVersion) throw Error(ErrorCode::kFormat, "unsupported version");
}

template <typename E>
void put(ByteWriter& w, const E& x) {
  w.raw(x.to_bytes());
}

template <typename E>
E get(ByteReader& r) {
  return E::from_bytes(r.raw(E::kEncodedSize));
}

// Guards length fields against absurd allocations on corrupt input.
inline std::uint64_t checked_count(ByteReader& r, std::uint64_t count, std::size_t unit) {
  if (unit != 0 && count > r.remaining() / unit) {
    throw Error(ErrorCode::kFormat, "length field exceeds payload");
  }
  return count;
}

template <typename E>
std::string hex(const E& x) {
  return to_hex(x.to_bytes());
}

template <typename E>
E unhex(const Json& j) {
  if (!j.is_string()) throw Error(ErrorCode::kFormat, "expected hex string");
  return E::from_bytes(from_hex(j.get<std::string>()));
}

template <typename E>
Json hex_list(const std::vector<E>& xs) {
  Json a = Json::array();
  for (const auto& x : xs) a.push_back(hex(x));
  return a;
}

template <typename E>
std::vector<E> unhex_list(const Json& j) {
  if (!j.is_array()) throw Error(ErrorCode::kFormat, "expected array");
  std::vector<E> out;
  for (const auto& x : j) out.push_back(unhex<E>(x));
  return out;
}

template <typename F>
auto guarded(F&& f) {
  try {
    return f();
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kFormat, e.what());
  }
}

}  // namespace detail

inline Json to_json(const FileManifest& m) {
  return {{"file_id", to_hex(m.file_id)},
          {"n", m.n},
          {"s", m.s},
          {"sector_bits", m.sector_bits},
          {"original_len", m.original_len}};
}

inline FileManifest manifest_from_json(const Json& j) {
  return detail::guarded([&] {
    FileManifest m;
    m.file_id = from_hex(j.at("file_id").get<std::string>());
    m.n = j.at("n").get<std::uint64_t>();
    m.s = j.at("s").get<std::uint32_t>();
    m.sector_bits = j.at("sector_bits").get<std::uint32_t>();
    m.original_len = j.at("original_len").get<std::uint64_t>();
    return m;
  });
}

inline Json to_json(const DeletionReceipt& r) {
  return {{"file_id", to_hex(r.file_id)},
          {"enclave_id", r.enclave_id},
          {"destroyed_at", r.destroyed_at},
          {"zeroized_bytes", r.zeroized_bytes}};
}

template <PairingGroup G>
Json to_json(const Challenge<G>& c) {
  Json entries = Json::array();
  for (const auto& e : c.entries) {
    entries.push_back({{"index", e.index}, {"coeff", detail::hex(e.coeff)}});
  }
  return {{"file_id", to_hex(c.file_id)}, {"nonce", to_hex(c.nonce)}, {"entries", entries}};
}

template <PairingGroup G>
Challenge<G> challenge_from_json(const Json& j) {
  return detail::guarded([&] {
    Challenge<G> c;
    c.file_id = from_hex(j.at("file_id").get<std::string>());
    c.nonce = from_hex(j.at("nonce").get<std::string>());
    for (const auto& e : j.at("entries")) {
      c.entries.push_back({e.at("index").get<std::uint64_t>(),
                           detail::unhex<typename G::Scalar>(e.at("coeff"))});
    }
    return c;
  });
}

template <PairingGroup G>
Json to_json(const EncProof<G>& p) {
  Json z_q = Json::array(), z_r = Json::array();
  for (const auto& x : p.nizk.z_q) z_q.push_back(detail::hex(x));
  for (const auto& x : p.nizk.z_r) z_r.push_back(detail::hex(x));
  return {{"p1_prime", detail::hex_list(p.p1_prime)},
          {"p1_dprime", detail::hex_list(p.p1_dprime)},
          {"p2", detail::hex(p.p2)},
          {"u_agg", detail::hex(p.u_agg)},
          {"nizk",
           {{"t_prime", detail::hex_list(p.nizk.t_prime)},
            {"t_dprime", detail::hex_list(p.nizk.t_dprime)},
            {"t_u", detail::hex(p.nizk.t_u)},
            {"c", detail::hex(p.nizk.c)},
            {"z_q", z_q},
            {"z_r", z_r}}}};
}

template <PairingGroup G>
EncProof<G> proof_from_json(const Json& j) {
  using G1 = typename G::G1;
  using Scalar = typename G::Scalar;
  return detail::guarded([&] {
    EncProof<G> p;
    p.p1_prime = detail::unhex_list<G1>(j.at("p1_prime"));
    p.p1_dprime = detail::unhex_list<G1>(j.at("p1_dprime"));
    p.p2 = detail::unhex<G1>(j.at("p2"));
    p.u_agg = detail::unhex<G1>(j.at("u_agg"));
    const Json& n = j.at("nizk");
    p.nizk.t_prime = detail::unhex_list<G1>(n.at("t_prime"));
    p.nizk.t_dprime = detail::unhex_list<G1>(n.at("t_dprime"));
    p.nizk.t_u = detail::unhex<G1>(n.at("t_u"));
    p.nizk.c = detail::unhex<Scalar>(n.at("c"));
    p.nizk.z_q = detail::unhex_list<Scalar>(n.at("z_q"));
    p.nizk.z_r = detail::unhex_list<Scalar>(n.at("z_r"));
    return p;
  });
}

template <PairingGroup G>
Json to_json(const AuditResponse<G>& r) {
  Json rows = Json::array();
  for (const auto& row : r.revealed) {
    rows.push_back({{"index", row.index},
                    {"e_prime", detail::hex_list(row.e_prime)},
                    {"e_dprime", detail::hex_list(row.e_dprime)}});
  }
  return {{"q1_prime", detail::hex_list(r.q1_prime)},
          {"q1_dprime", detail::hex_list(r.q1_dprime)},
          {"q2", detail::hex(r.q2)},
          {"revealed", rows}};
}

template <PairingGroup G>
AuditResponse<G> audit_response_from_json(const Json& j) {
  using G1 = typename G::G1;
  return detail::guarded([&] {
    AuditResponse<G> r;
    r.q1_prime = detail::unhex_list<G1>(j.at("q1_prime"));
    r.q1_dprime = detail::unhex_list<G1>(j.at("q1_dprime"));
    r.q2 = detail::unhex<G1>(j.at("q2"));
    for (const auto& row : j.at("revealed")) {
      r.revealed.push_back({row.at("index").get<std::uint64_t>(),
                            detail::unhex_list<G1>(row.at("e_prime")),
                            detail::unhex_list<G1>(row.at("e_dprime"))});
    }
    return r;
  });
}

template <PairingGroup G>
Bytes encode(const CiphertextMatrix<G>& ct) {
  ByteWriter w;
  detail::write_header(w, kMagicCiphertext);
  w.u64(ct.n);
  w.u32(ct.s);
  detail::put(w, ct.V);
  for (std::size_t k = 0; k < ct.e_prime.size(); ++k) {
    detail::put(w, ct.e_prime[k]);
    detail::put(w, ct.e_dprime[k]);
  }
  return std::move(w).take();
}

template <PairingGroup G>
CiphertextMatrix<G> decode_ciphertext(ByteSpan data) {
  using G1 = typename G::G1;
  ByteReader r(data);
  detail::read_header(r, kMagicCiphertext);
  CiphertextMatrix<G> ct;
  ct.n = r.u64();
  ct.s = r.u32();
  ct.V = detail::get<G1>(r);
  const std::uint64_t cells =
      detail::checked_count(r, ct.n * ct.s, 2 * G1::kEncodedSize);
  if (ct.s != 0 && cells / ct.s != ct.n) throw Error(ErrorCode::kFormat, "size overflow");
  for (std::uint64_t k = 0; k < cells; ++k) {
    ct.e_prime.push_back(detail::get<G1>(r));
    ct.e_dprime.push_back(detail::get<G1>(r));
  }
  r.expect_end();
  return ct;
}

namespace detail {

template <PairingGroup G>
Bytes encode_points(std::string_view magic, const std::vector<typename G::G1>& xs) {
  ByteWriter w;
  write_header(w, magic);
  w.u64(xs.size());
  for (const auto& x : xs) put(w, x);
  return std::move(w).take();
}

template <PairingGroup G>
std::vector<typename G::G1> decode_points(std::string_view magic, ByteSpan data) {
  using G1 = typename G::G1;
  ByteReader r(data);
  read_header(r, magic);
  const std::uint64_t count = checked_count(r, r.u64(), G1::kEncodedSize);
  std::vector<G1> xs;
  xs.reserve(count);
  for (std::uint64_t k = 0; k < count; ++k) xs.push_back(get<G1>(r));
  r.expect_end();
  return xs;
}

}  // namespace detail

template <PairingGroup G>
Bytes encode(const TagSet<G>& t) {
  return detail::encode_points<G>(kMagicOwnerTags, t.phi);
}

template <PairingGroup G>
TagSet<G> decode_owner_tags(ByteSpan data) {
  return {detail::decode_points<G>(kMagicOwnerTags, data)};
}

template <PairingGroup G>
Bytes encode(const EncTagSet<G>& t) {
  return detail::encode_points<G>(kMagicEncTags, t.sigma);
}

template <PairingGroup G>
EncTagSet<G> decode_enc_tags(ByteSpan data) {
  return {detail::decode_points<G>(kMagicEncTags, data)};
}

inline Bytes encode(const BlockMatrix& b) {
  ByteWriter w;
  detail::write_header(w, kMagicBlocks);
  w.u64(b.n());
  w.u32(b.s());
  for (std::uint32_t v : b.values()) w.u32(v);
  return std::move(w).take();
}

inline BlockMatrix decode_blocks(ByteSpan data) {
  ByteReader r(data);
  detail::read_header(r, kMagicBlocks);
  const std::uint64_t n = r.u64();
  const std::uint32_t s = r.u32();
  detail::checked_count(r, n * s, 4);
  BlockMatrix b(n, s);
  for (std::uint64_t i = 0; i < n; ++i) {
    for (std::uint32_t j = 0; j < s; ++j) b.at(i, j) = r.u32();
  }
  r.expect_end();
  return b;
}

// Fixed-width packing of a proof; its length is what "proof size" means in
// the benchmark report.
template <PairingGroup G>
Bytes encode(const EncProof<G>& p) {
  ByteWriter w;
  detail::write_header(w, kMagicProof);
  w.u32(static_cast<std::uint32_t>(p.p1_prime.size()));
  for (std::size_t j = 0; j < p.p1_prime.size(); ++j) {
    detail::put(w, p.p1_prime[j]);
    detail::put(w, p.p1_dprime[j]);
    detail::put(w, p.nizk.t_prime[j]);
    detail::put(w, p.nizk.t_dprime[j]);
    detail::put(w, p.nizk.z_q[j]);
    detail::put(w, p.nizk.z_r[j]);
  }
  detail::put(w, p.p2);
  detail::put(w, p.u_agg);
  detail::put(w, p.nizk.t_u);
  detail::put(w, p.nizk.c);
  return std::move(w).take();
}

template <PairingGroup G>
EncProof<G> decode_proof(ByteSpan data) {
  using G1 = typename G::G1;
  using Scalar = typename G::Scalar;
  ByteReader r(data);
  detail::read_header(r, kMagicProof);
  const std::uint32_t s = static_cast<std::uint32_t>(detail::checked_count(
      r, r.u32(), 4 * G1::kEncodedSize + 2 * Scalar::kEncodedSize));
  EncProof<G> p;
  for (std::uint32_t j = 0; j < s; ++j) {
    p.p1_prime.push_back(detail::get<G1>(r));
    p.p1_dprime.push_back(detail::get<G1>(r));
    p.nizk.t_prime.push_back(detail::get<G1>(r));
    p.nizk.t_dprime.push_back(detail::get<G1>(r));
    p.nizk.z_q.push_back(detail::get<Scalar>(r));
    p.nizk.z_r.push_back(detail::get<Scalar>(r));
  }
  p.p2 = detail::get<G1>(r);
  p.u_agg = detail::get<G1>(r);
  p.nizk.t_u = detail::get<G1>(r);
  p.nizk.c = detail::get<Scalar>(r);
  r.expect_end();
  return p;
}

}  // namespace sevdel::wire

#endif  // SEVDEL_WIRE_HPP_
