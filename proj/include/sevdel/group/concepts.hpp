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

#ifndef SEVDEL_GROUP_CONCEPTS_HPP_
#define SEVDEL_GROUP_CONCEPTS_HPP_

#include <concepts>
#include <cstdint>
#include <span>
#include <string_view>
#include <utility>

#include "sevdel/bytes.hpp"
#include "sevdel/rng.hpp"

namespace sevdel {

// Prime-order field of exponents. Canonical encoding is fixed-width
// big-endian; from_bytes rejects values >= p.
template <class S>
concept ScalarField = std::regular<S> && requires(const S a, const S b, Rng& rng,
                                                 ByteSpan bytes, std::uint64_t u) {
  { S::zero() } -> std::same_as<S>;
  { S::one() } -> std::same_as<S>;
  { S::from_u64(u) } -> std::same_as<S>;
  { S::random(rng) } -> std::same_as<S>;
  { S::random_nonzero(rng) } -> std::same_as<S>;
  { S::from_bytes(bytes) } -> std::same_as<S>;
  { S::from_bytes_reduce(bytes) } -> std::same_as<S>;
  { S::kEncodedSize } -> std::convertible_to<std::size_t>;
  { a + b } -> std::same_as<S>;
  { a - b } -> std::same_as<S>;
  { a * b } -> std::same_as<S>;
  { -a } -> std::same_as<S>;
  { a.inverse() } -> std::same_as<S>;
  { a.is_zero() } -> std::same_as<bool>;
  { a.to_bytes() } -> std::same_as<Bytes>;
};

// Additively written prime-order group (G1 or G2).
template <class E, class S>
concept CurveGroup = std::regular<E> && requires(const E x, const E y, const S k,
                                                ByteSpan bytes) {
  { E::identity() } -> std::same_as<E>;
  { E::generator() } -> std::same_as<E>;
  { E::from_bytes(bytes) } -> std::same_as<E>;
  { E::kEncodedSize } -> std::convertible_to<std::size_t>;
  { x + y } -> std::same_as<E>;
  { x - y } -> std::same_as<E>;
  { -x } -> std::same_as<E>;
  { x * k } -> std::same_as<E>;
  { x.is_identity() } -> std::same_as<bool>;
  { x.to_bytes() } -> std::same_as<Bytes>;
};

// Multiplicatively written target group.
template <class T, class S>
concept TargetGroup = std::regular<T> && requires(const T x, const T y, const S k) {
  { T::one() } -> std::same_as<T>;
  { x * y } -> std::same_as<T>;
  { x.pow(k) } -> std::same_as<T>;
  { x.is_one() } -> std::same_as<bool>;
  { x.to_bytes() } -> std::same_as<Bytes>;
};

// An asymmetric bilinear group e: G1 x G2 -> GT of prime order p.
//
// Besides the algebra, a backend supplies the few bulk kernels the
// protocol leans on: multi-scalar multiplication, a fixed-base multiplier
// for bases reused across a whole file, and batch fingerprinting of G1
// points for the bounded discrete-log search.
template <class G>
concept PairingGroup =
    ScalarField<typename G::Scalar> &&
    CurveGroup<typename G::G1, typename G::Scalar> &&
    CurveGroup<typename G::G2, typename G::Scalar> &&
    TargetGroup<typename G::GT, typename G::Scalar> &&
    requires(const typename G::G1 p, const typename G::G2 q, ByteSpan bytes,
             std::span<const typename G::G1> points,
             std::span<const typename G::Scalar> scalars,
             std::span<std::uint64_t> fingerprints) {
      { G::kName } -> std::convertible_to<std::string_view>;
      { G::pairing(p, q) } -> std::same_as<typename G::GT>;
      { G::pairing_eq(p, q, p, q) } -> std::same_as<bool>;
      { G::hash_to_g1(bytes, bytes) } -> std::same_as<typename G::G1>;
      { G::msm(points, scalars) } -> std::same_as<typename G::G1>;
      G::fingerprint(points, fingerprints);
      { typename G::G1FixedBase(p).mul(std::declval<const typename G::Scalar&>()) }
          -> std::same_as<typename G::G1>;
    };

}  // namespace sevdel

#endif  // SEVDEL_GROUP_CONCEPTS_HPP_
