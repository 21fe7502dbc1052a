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

#ifndef SEVDEL_GROUP_BLS12_381_HPP_
#define SEVDEL_GROUP_BLS12_381_HPP_

#include <blst.h>

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "sevdel/bytes.hpp"
#include "sevdel/rng.hpp"

// BLS12-381 backend over blst. G1 points are compressed to 48 bytes and
// G2 points to 96 bytes (ZCash flag-bit convention, big-endian field
// elements); scalars are 32 bytes big-endian. Deserialization checks the
// curve equation and prime-order subgroup membership.
namespace sevdel::bls {

class Scalar {
 public:
  static constexpr std::size_t kEncodedSize = 32;

  Scalar() : v_{} {}

  static Scalar zero() { return Scalar(); }
  static Scalar one() { return from_u64(1); }
  static Scalar from_u64(std::uint64_t v);
  static Scalar random(Rng& rng);
  static Scalar random_nonzero(Rng& rng);
  // Canonical big-endian encoding; throws kInvalidElement if >= r.
  static Scalar from_bytes(ByteSpan bytes);
  // Any-length big-endian integer reduced mod r.
  static Scalar from_bytes_reduce(ByteSpan bytes);

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  // Inverse of zero is zero.
  Scalar inverse() const;
  bool is_zero() const;
  bool operator==(const Scalar& o) const;

  Bytes to_bytes() const;
  // Little-endian canonical bytes, as blst's multiplication routines want.
  blst_scalar to_blst() const;
  std::size_t bit_length() const;

 private:
  blst_fr v_;  // Montgomery form
};

class G1 {
 public:
  static constexpr std::size_t kEncodedSize = 48;

  G1();  // identity
  explicit G1(const blst_p1& p) : p_(p) {}
  explicit G1(const blst_p1_affine& a);

  static G1 identity() { return G1(); }
  static G1 generator();
  static G1 from_bytes(ByteSpan bytes);

  G1 operator+(const G1& o) const;
  G1 operator-(const G1& o) const { return *this + (-o); }
  G1 operator-() const;
  G1 operator*(const Scalar& k) const;
  G1& operator+=(const G1& o) { return *this = *this + o; }
  // Multiplication by a small non-negative integer (sector values).
  G1 mul_u64(std::uint64_t k) const;

  bool is_identity() const { return blst_p1_is_inf(&p_); }
  bool operator==(const G1& o) const { return blst_p1_is_equal(&p_, &o.p_); }

  Bytes to_bytes() const;
  blst_p1_affine to_affine() const;
  const blst_p1& raw() const { return p_; }

 private:
  blst_p1 p_;
};

class G2 {
 public:
  static constexpr std::size_t kEncodedSize = 96;

  G2();
  explicit G2(const blst_p2& p) : p_(p) {}

  static G2 identity() { return G2(); }
  static G2 generator();
  static G2 from_bytes(ByteSpan bytes);

  G2 operator+(const G2& o) const;
  G2 operator-(const G2& o) const { return *this + (-o); }
  G2 operator-() const;
  G2 operator*(const Scalar& k) const;

  bool is_identity() const { return blst_p2_is_inf(&p_); }
  bool operator==(const G2& o) const { return blst_p2_is_equal(&p_, &o.p_); }

  Bytes to_bytes() const;
  blst_p2_affine to_affine() const;

 private:
  blst_p2 p_;
};

class GT {
 public:
  static constexpr std::size_t kEncodedSize = 576;

  GT() : v_(*blst_fp12_one()) {}
  explicit GT(const blst_fp12& v) : v_(v) {}

  static GT one() { return GT(); }

  GT operator*(const GT& o) const;
  GT pow(const Scalar& k) const;
  bool is_one() const { return blst_fp12_is_one(&v_); }
  bool operator==(const GT& o) const { return blst_fp12_is_equal(&v_, &o.v_); }

  Bytes to_bytes() const;

 private:
  blst_fp12 v_;
};

// Comb table for repeated multiplication of one base: 32 windows of 8 bits,
// 255 affine multiples each (~780 KiB). Turns a 255-bit multiplication
// into at most 32 mixed additions.
class G1FixedBase {
 public:
  explicit G1FixedBase(const G1& base);
  G1 mul(const Scalar& k) const;

 private:
  static constexpr std::size_t kWindowBits = 8;
  static constexpr std::size_t kWindows = 32;
  static constexpr std::size_t kPerWindow = (1u << kWindowBits) - 1;
  std::vector<blst_p1_affine> table_;
};

}  // namespace sevdel::bls

namespace sevdel {

struct Bls12381 {
  using Scalar = bls::Scalar;
  using G1 = bls::G1;
  using G2 = bls::G2;
  using GT = bls::GT;
  using G1FixedBase = bls::G1FixedBase;

  static constexpr std::string_view kName = "bls12-381";

  static GT pairing(const G1& p, const G2& q);
  // e(a, b) == e(c, d) with a single final exponentiation.
  static bool pairing_eq(const G1& a, const G2& b, const G1& c, const G2& d);
  static G1 hash_to_g1(ByteSpan dst, ByteSpan msg);
  static G1 msm(std::span<const G1> points, std::span<const Scalar> scalars);
  // 64-bit digest of each point's affine coordinates. Equal points give
  // equal fingerprints; distinct points collide with negligible probability.
  static void fingerprint(std::span<const G1> points,
                          std::span<std::uint64_t> out);
};

}  // namespace sevdel

#endif  // SEVDEL_GROUP_BLS12_381_HPP_
