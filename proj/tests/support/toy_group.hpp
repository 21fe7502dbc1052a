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

#ifndef SEVDEL_TESTS_TOY_GROUP_HPP_
#define SEVDEL_TESTS_TOY_GROUP_HPP_

#include <cstdint>
#include <span>
#include <string_view>

#include "sevdel/bytes.hpp"
#include "sevdel/error.hpp"
#include "sevdel/group/concepts.hpp"
#include "sevdel/hash.hpp"
#include "sevdel/rng.hpp"

// An insecure "pairing group" of order 2^61 - 1 in which every element is
// represented by its discrete logarithm. The pairing multiplies logs. Any
// protocol equation can therefore be checked by plain modular arithmetic,
// which makes it an independent oracle for the generic protocol code and
// small enough for exhaustive enumeration.
namespace sevdel::toy {

inline constexpr std::uint64_t kP = (std::uint64_t{1} << 61) - 1;

inline std::uint64_t mod_mul(std::uint64_t a, std::uint64_t b) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % kP);
}

class Scalar {
 public:
  static constexpr std::size_t kEncodedSize = 8;

  Scalar() = default;
  static Scalar zero() { return Scalar(); }
  static Scalar one() { return from_u64(1); }
  static Scalar from_u64(std::uint64_t v) { return Scalar(v % kP); }
  static Scalar random(Rng& rng) { return Scalar(rng.uniform(kP)); }
  static Scalar random_nonzero(Rng& rng) { return Scalar(1 + rng.uniform(kP - 1)); }
  static Scalar from_bytes(ByteSpan b) {
    if (b.size() != kEncodedSize) throw Error(ErrorCode::kInvalidElement, "toy scalar size");
    std::uint64_t v = 0;
    for (auto x : b) v = (v << 8) | x;
    if (v >= kP) throw Error(ErrorCode::kInvalidElement, "toy scalar out of range");
    return Scalar(v);
  }
  static Scalar from_bytes_reduce(ByteSpan b) {
    std::uint64_t v = 0;
    for (auto x : b) v = (mod_mul(v, 256) + x) % kP;
    return Scalar(v);
  }

  std::uint64_t value() const { return v_; }

  Scalar operator+(const Scalar& o) const { return Scalar((v_ + o.v_) % kP); }
  Scalar operator-(const Scalar& o) const { return Scalar((v_ + kP - o.v_) % kP); }
  Scalar operator*(const Scalar& o) const { return Scalar(mod_mul(v_, o.v_)); }
  Scalar operator-() const { return Scalar((kP - v_) % kP); }
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar pow(std::uint64_t e) const {
    Scalar acc = one(), base = *this;
    for (; e; e >>= 1, base = base * base) {
      if (e & 1) acc = acc * base;
    }
    return acc;
  }
  Scalar inverse() const { return pow(kP - 2); }
  bool is_zero() const { return v_ == 0; }
  Bytes to_bytes() const {
    Bytes out(kEncodedSize);
    for (int k = 7; k >= 0; --k) out[7 - k] = static_cast<std::uint8_t>(v_ >> (8 * k));
    return out;
  }
  bool operator==(const Scalar&) const = default;

 private:
  explicit Scalar(std::uint64_t v) : v_(v) {}
  std::uint64_t v_ = 0;
};

// Tag keeps G1, G2 and GT distinct types.
template <int Tag>
class Elem {
 public:
  static constexpr std::size_t kEncodedSize = 8;

  Elem() = default;
  explicit Elem(Scalar log) : log_(log) {}
  static Elem identity() { return Elem(); }
  static Elem generator() { return Elem(Scalar::one()); }
  static Elem from_bytes(ByteSpan b) { return Elem(Scalar::from_bytes(b)); }

  const Scalar& log() const { return log_; }

  Elem operator+(const Elem& o) const { return Elem(log_ + o.log_); }
  Elem operator-(const Elem& o) const { return Elem(log_ - o.log_); }
  Elem operator-() const { return Elem(-log_); }
  Elem operator*(const Scalar& k) const { return Elem(log_ * k); }
  bool is_identity() const { return log_.is_zero(); }
  Bytes to_bytes() const { return log_.to_bytes(); }
  bool operator==(const Elem&) const = default;

 private:
  Scalar log_;
};

// Target group, written multiplicatively over the same logs.
class GT {
 public:
  GT() = default;
  explicit GT(Scalar log) : log_(log) {}
  static GT one() { return GT(); }
  GT operator*(const GT& o) const { return GT(log_ + o.log_); }
  GT pow(const Scalar& k) const { return GT(log_ * k); }
  bool is_one() const { return log_.is_zero(); }
  Bytes to_bytes() const { return log_.to_bytes(); }
  const Scalar& log() const { return log_; }
  bool operator==(const GT&) const = default;

 private:
  Scalar log_;
};

struct ToyGroup {
  using Scalar = toy::Scalar;
  using G1 = Elem<1>;
  using G2 = Elem<2>;
  using GT = toy::GT;

  class G1FixedBase {
   public:
    explicit G1FixedBase(const G1& base) : base_(base) {}
    G1 mul(const Scalar& k) const { return base_ * k; }

   private:
    G1 base_;
  };

  static constexpr std::string_view kName = "toy-m61";

  static GT pairing(const G1& p, const G2& q) { return GT(p.log() * q.log()); }
  static bool pairing_eq(const G1& a, const G2& b, const G1& c, const G2& d) {
    return pairing(a, b) == pairing(c, d);
  }
  static G1 hash_to_g1(ByteSpan dst, ByteSpan msg) {
    Digest d = Sha256().update("toy/h2g1").field(dst).field(msg).finish();
    return G1(Scalar::from_bytes_reduce(d));
  }
  static G1 msm(std::span<const G1> points, std::span<const Scalar> scalars) {
    if (points.size() != scalars.size()) {
      throw Error(ErrorCode::kDimensionMismatch, "msm length mismatch");
    }
    Scalar acc;
    for (std::size_t k = 0; k < points.size(); ++k) acc += points[k].log() * scalars[k];
    return G1(acc);
  }
  static void fingerprint(std::span<const G1> points, std::span<std::uint64_t> out) {
    for (std::size_t k = 0; k < points.size(); ++k) out[k] = points[k].log().value();
  }
};

static_assert(PairingGroup<ToyGroup>);

}  // namespace sevdel::toy

#endif  // SEVDEL_TESTS_TOY_GROUP_HPP_
