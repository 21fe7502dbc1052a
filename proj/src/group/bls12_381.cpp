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

#include "sevdel/group/bls12_381.hpp"

#include <blst_aux.h>

#include <algorithm>
#include <bit>
#include <cstring>

#include "sevdel/error.hpp"

namespace sevdel::bls {

namespace {

blst_fr fr_from_limbs(std::uint64_t l0, std::uint64_t l1, std::uint64_t l2,
                      std::uint64_t l3) {
  const std::uint64_t limbs[4] = {l0, l1, l2, l3};
  blst_fr out;
  blst_fr_from_uint64(&out, limbs);
  return out;
}

std::uint64_t load_be(const std::uint8_t* p, std::size_t n) {
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < n; ++i) v = (v << 8) | p[i];
  return v;
}

}  // namespace

// ---- Scalar ---------------------------------------------------------------

Scalar Scalar::from_u64(std::uint64_t v) {
  Scalar s;
  s.v_ = fr_from_limbs(v, 0, 0, 0);
  return s;
}

Scalar Scalar::random(Rng& rng) {
  std::uint8_t buf[32];
  for (;;) {
    rng.fill(buf);
    buf[0] &= 0x7f;  // r < 2^255
    blst_scalar s;
    blst_scalar_from_bendian(&s, buf);
    if (blst_scalar_fr_check(&s)) {
      Scalar out;
      blst_fr_from_scalar(&out.v_, &s);
      return out;
    }
  }
}

Scalar Scalar::random_nonzero(Rng& rng) {
  for (;;) {
    Scalar s = random(rng);
    if (!s.is_zero()) return s;
  }
}

Scalar Scalar::from_bytes(ByteSpan bytes) {
  if (bytes.size() != kEncodedSize) {
    throw Error(ErrorCode::kInvalidElement, "scalar encoding must be 32 bytes");
  }
  blst_scalar s;
  blst_scalar_from_bendian(&s, bytes.data());
  if (!blst_scalar_fr_check(&s)) {
    throw Error(ErrorCode::kInvalidElement, "scalar not below group order");
  }
  Scalar out;
  blst_fr_from_scalar(&out.v_, &s);
  return out;
}

Scalar Scalar::from_bytes_reduce(ByteSpan bytes) {
  // Horner evaluation in 128-bit digits; every digit is below r.
  Scalar radix;
  radix.v_ = fr_from_limbs(0, 0, 1, 0);
  Scalar acc;
  std::size_t head = bytes.size() % 16;
  std::size_t pos = 0;
  auto digit = [&](std::size_t len) {
    std::size_t hi_len = len > 8 ? len - 8 : 0;
    std::size_t lo_len = len - hi_len;
    std::uint64_t hi = load_be(bytes.data() + pos, hi_len);
    std::uint64_t lo = load_be(bytes.data() + pos + hi_len, lo_len);
    pos += len;
    Scalar d;
    d.v_ = fr_from_limbs(lo, hi, 0, 0);
    return d;
  };
  if (head != 0) acc = digit(head);
  while (pos < bytes.size()) acc = acc * radix + digit(16);
  return acc;
}

Scalar Scalar::operator+(const Scalar& o) const {
  Scalar r;
  blst_fr_add(&r.v_, &v_, &o.v_);
  return r;
}

Scalar Scalar::operator-(const Scalar& o) const {
  Scalar r;
  blst_fr_sub(&r.v_, &v_, &o.v_);
  return r;
}

Scalar Scalar::operator*(const Scalar& o) const {
  Scalar r;
  blst_fr_mul(&r.v_, &v_, &o.v_);
  return r;
}

Scalar Scalar::operator-() const { return Scalar() - *this; }

Scalar Scalar::inverse() const {
  Scalar r;
  if (!is_zero()) blst_fr_eucl_inverse(&r.v_, &v_);
  return r;
}

bool Scalar::is_zero() const {
  static const blst_fr kZero{};
  return std::memcmp(&v_, &kZero, sizeof(v_)) == 0;
}

bool Scalar::operator==(const Scalar& o) const {
  return std::memcmp(&v_, &o.v_, sizeof(v_)) == 0;
}

blst_scalar Scalar::to_blst() const {
  blst_scalar s;
  blst_scalar_from_fr(&s, &v_);
  return s;
}

Bytes Scalar::to_bytes() const {
  blst_scalar s = to_blst();
  Bytes out(kEncodedSize);
  blst_bendian_from_scalar(out.data(), &s);
  return out;
}

std::size_t Scalar::bit_length() const {
  std::uint64_t limbs[4];
  blst_uint64_from_fr(limbs, &v_);
  for (int i = 3; i >= 0; --i) {
    if (limbs[i] != 0) {
      return static_cast<std::size_t>(64 * i) + std::bit_width(limbs[i]);
    }
  }
  return 0;
}

// ---- G1 -------------------------------------------------------------------

G1::G1() : p_{} {}

G1::G1(const blst_p1_affine& a) { blst_p1_from_affine(&p_, &a); }

G1 G1::generator() { return G1(*blst_p1_generator()); }

G1 G1::from_bytes(ByteSpan bytes) {
  if (bytes.size() != kEncodedSize) {
    throw Error(ErrorCode::kInvalidElement, "G1 encoding must be 48 bytes");
  }
  blst_p1_affine a;
  if (blst_p1_uncompress(&a, bytes.data()) != BLST_SUCCESS) {
    throw Error(ErrorCode::kInvalidElement, "G1 point not on curve");
  }
  if (!blst_p1_affine_in_g1(&a)) {
    throw Error(ErrorCode::kInvalidElement, "G1 point outside prime-order subgroup");
  }
  return G1(a);
}

G1 G1::operator+(const G1& o) const {
  G1 r;
  blst_p1_add_or_double(&r.p_, &p_, &o.p_);
  return r;
}

G1 G1::operator-() const {
  G1 r = *this;
  blst_p1_cneg(&r.p_, true);
  return r;
}

G1 G1::operator*(const Scalar& k) const {
  blst_scalar s = k.to_blst();
  G1 r;
  blst_p1_mult(&r.p_, &p_, s.b, 255);
  return r;
}

G1 G1::mul_u64(std::uint64_t k) const {
  if (k == 0) return G1();
  std::uint8_t le[8];
  for (int i = 0; i < 8; ++i) le[i] = static_cast<std::uint8_t>(k >> (8 * i));
  G1 r;
  blst_p1_mult(&r.p_, &p_, le, static_cast<std::size_t>(std::bit_width(k)));
  return r;
}

Bytes G1::to_bytes() const {
  Bytes out(kEncodedSize);
  blst_p1_compress(out.data(), &p_);
  return out;
}

blst_p1_affine G1::to_affine() const {
  blst_p1_affine a;
  blst_p1_to_affine(&a, &p_);
  return a;
}

// ---- G2 -------------------------------------------------------------------

G2::G2() : p_{} {}

G2 G2::generator() { return G2(*blst_p2_generator()); }

G2 G2::from_bytes(ByteSpan bytes) {
  if (bytes.size() != kEncodedSize) {
    throw Error(ErrorCode::kInvalidElement, "G2 encoding must be 96 bytes");
  }
  blst_p2_affine a;
  if (blst_p2_uncompress(&a, bytes.data()) != BLST_SUCCESS) {
    throw Error(ErrorCode::kInvalidElement, "G2 point not on curve");
  }
  if (!blst_p2_affine_in_g2(&a)) {
    throw Error(ErrorCode::kInvalidElement, "G2 point outside prime-order subgroup");
  }
  blst_p2 p;
  blst_p2_from_affine(&p, &a);
  return G2(p);
}

G2 G2::operator+(const G2& o) const {
  G2 r;
  blst_p2_add_or_double(&r.p_, &p_, &o.p_);
  return r;
}

G2 G2::operator-() const {
  G2 r = *this;
  blst_p2_cneg(&r.p_, true);
  return r;
}

G2 G2::operator*(const Scalar& k) const {
  blst_scalar s = k.to_blst();
  G2 r;
  blst_p2_mult(&r.p_, &p_, s.b, 255);
  return r;
}

Bytes G2::to_bytes() const {
  Bytes out(kEncodedSize);
  blst_p2_compress(out.data(), &p_);
  return out;
}

blst_p2_affine G2::to_affine() const {
  blst_p2_affine a;
  blst_p2_to_affine(&a, &p_);
  return a;
}

// ---- GT -------------------------------------------------------------------

GT GT::operator*(const GT& o) const {
  GT r;
  blst_fp12_mul(&r.v_, &v_, &o.v_);
  return r;
}

GT GT::pow(const Scalar& k) const {
  blst_scalar s = k.to_blst();
  GT acc;
  for (int bit = 254; bit >= 0; --bit) {
    blst_fp12_sqr(&acc.v_, &acc.v_);
    if ((s.b[bit / 8] >> (bit % 8)) & 1) blst_fp12_mul(&acc.v_, &acc.v_, &v_);
  }
  return acc;
}

Bytes GT::to_bytes() const {
  Bytes out(kEncodedSize);
  blst_bendian_from_fp12(out.data(), &v_);
  return out;
}

// ---- G1FixedBase ----------------------------------------------------------

G1FixedBase::G1FixedBase(const G1& base) {
  if (base.is_identity()) return;
  std::vector<blst_p1> proj(kWindows * kPerWindow);
  blst_p1 window_base = base.raw();
  for (std::size_t w = 0; w < kWindows; ++w) {
    blst_p1 acc = window_base;
    for (std::size_t d = 0; d < kPerWindow; ++d) {
      proj[w * kPerWindow + d] = acc;
      blst_p1_add_or_double(&acc, &acc, &window_base);
    }
    window_base = acc;  // 256 * previous window base
  }
  std::vector<const blst_p1*> ptrs(proj.size());
  for (std::size_t i = 0; i < proj.size(); ++i) ptrs[i] = &proj[i];
  table_.resize(proj.size());
  blst_p1s_to_affine(table_.data(), ptrs.data(), proj.size());
}

G1 G1FixedBase::mul(const Scalar& k) const {
  if (table_.empty()) return G1();
  blst_scalar s = k.to_blst();
  blst_p1 acc{};
  for (std::size_t w = 0; w < kWindows; ++w) {
    std::uint8_t digit = s.b[w];
    if (digit != 0) {
      blst_p1_add_or_double_affine(&acc, &acc, &table_[w * kPerWindow + digit - 1]);
    }
  }
  return G1(acc);
}

}  // namespace sevdel::bls

namespace sevdel {

using bls::G1;
using bls::G2;
using bls::GT;
using bls::Scalar;

GT Bls12381::pairing(const G1& p, const G2& q) {
  if (p.is_identity() || q.is_identity()) return GT::one();
  blst_p1_affine pa = p.to_affine();
  blst_p2_affine qa = q.to_affine();
  blst_fp12 ml, out;
  blst_miller_loop(&ml, &qa, &pa);
  blst_final_exp(&out, &ml);
  return GT(out);
}

bool Bls12381::pairing_eq(const G1& a, const G2& b, const G1& c, const G2& d) {
  if (a.is_identity() || b.is_identity()) return pairing(c, d).is_one();
  if (c.is_identity() || d.is_identity()) return pairing(a, b).is_one();
  blst_p1_affine ps[2] = {a.to_affine(), (-c).to_affine()};
  blst_p2_affine qs[2] = {b.to_affine(), d.to_affine()};
  const blst_p1_affine* pp[2] = {&ps[0], &ps[1]};
  const blst_p2_affine* qq[2] = {&qs[0], &qs[1]};
  blst_fp12 ml, out;
  blst_miller_loop_n(&ml, qq, pp, 2);
  blst_final_exp(&out, &ml);
  return blst_fp12_is_one(&out);
}

G1 Bls12381::hash_to_g1(ByteSpan dst, ByteSpan msg) {
  blst_p1 out;
  blst_hash_to_g1(&out, msg.data(), msg.size(), dst.data(), dst.size(), nullptr, 0);
  return G1(out);
}

G1 Bls12381::msm(std::span<const G1> points, std::span<const Scalar> scalars) {
  if (points.size() != scalars.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "msm: points/scalars length differ");
  }
  std::vector<const blst_p1*> proj;
  std::vector<blst_scalar> ks;
  proj.reserve(points.size());
  ks.reserve(points.size());
  std::size_t nbits = 1;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].is_identity() || scalars[i].is_zero()) continue;
    proj.push_back(&points[i].raw());
    ks.push_back(scalars[i].to_blst());
    nbits = std::max(nbits, scalars[i].bit_length());
  }
  const std::size_t n = proj.size();
  if (n == 0) return G1();
  if (n <= 2) {
    blst_p1 acc{};
    for (std::size_t i = 0; i < n; ++i) {
      blst_p1 t;
      blst_p1_mult(&t, proj[i], ks[i].b, nbits);
      blst_p1_add_or_double(&acc, &acc, &t);
    }
    return G1(acc);
  }
  std::vector<blst_p1_affine> affine(n);
  blst_p1s_to_affine(affine.data(), proj.data(), n);
  std::vector<const blst_p1_affine*> aptr(n);
  std::vector<const std::uint8_t*> kptr(n);
  for (std::size_t i = 0; i < n; ++i) {
    aptr[i] = &affine[i];
    kptr[i] = ks[i].b;
  }
  std::vector<limb_t> scratch(blst_p1s_mult_pippenger_scratch_sizeof(n) / sizeof(limb_t) + 1);
  blst_p1 out;
  blst_p1s_mult_pippenger(&out, aptr.data(), n, kptr.data(), nbits, scratch.data());
  return G1(out);
}

void Bls12381::fingerprint(std::span<const G1> points, std::span<std::uint64_t> out) {
  if (points.size() != out.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "fingerprint: length mismatch");
  }
  std::vector<const blst_p1*> proj;
  std::vector<std::size_t> where;
  proj.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].is_identity()) {
      out[i] = 0;
    } else {
      proj.push_back(&points[i].raw());
      where.push_back(i);
    }
  }
  if (proj.empty()) return;
  std::vector<blst_p1_affine> affine(proj.size());
  blst_p1s_to_affine(affine.data(), proj.data(), proj.size());
  for (std::size_t k = 0; k < affine.size(); ++k) {
    // Limbs are in Montgomery form; only consistency matters here.
    std::uint64_t fp = affine[k].x.l[0] ^ (affine[k].y.l[0] * 0x9e3779b97f4a7c15ull);
    out[where[k]] = fp == 0 ? 1 : fp;
  }
}

}  // namespace sevdel
