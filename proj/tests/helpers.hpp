#pragma once

#include <random>

#include "ecfuzz/curve.hpp"
#include "ecfuzz/scalarmul.hpp"

namespace testutil {

using ecfuzz::Int;

inline Int random_bits(std::mt19937_64& rng, std::size_t bits) {
  Int v = 0;
  for (std::size_t got = 0; got < bits; got += 64) {
    v <<= 64;
    v |= Int(static_cast<unsigned long>(rng()));
  }
  v &= (Int(1) << bits) - 1;
  return v;
}

inline Int random_scalar(std::mt19937_64& rng, std::size_t bits) {
  Int v = random_bits(rng, bits);
  if (v == 0) v = 1;
  return v;
}

// y^2 = x^3 + 2x + 5 over GF(23); (5,5) generates all 33 points.
inline ecfuzz::CurveParams small_curve() {
  ecfuzz::PrimeField f = ecfuzz::make_field(23);
  return ecfuzz::make_curve(f.element(2), f.element(5));
}

inline ecfuzz::CurvePoint small_base() {
  ecfuzz::PrimeField f = ecfuzz::make_field(23);
  return {f.element(5), f.element(5)};
}

// Uniform affine point; needs p = 3 mod 4 so square roots are one power.
inline ecfuzz::CurvePoint random_point(const ecfuzz::CurveParams& e, std::mt19937_64& rng) {
  const ecfuzz::PrimeField f = e.field();
  const Int& p = f.modulus();
  for (;;) {
    Int xv = random_bits(rng, f.bit_length());
    if (xv >= p) continue;
    ecfuzz::FieldElement x = f.element(xv);
    ecfuzz::FieldElement rhs = x * x * x + e.a() * x + e.b();
    if (rhs.is_zero()) return {x, f.zero()};
    ecfuzz::FieldElement y = rhs.pow((p + 1) / 4);
    if (y * y != rhs) continue;
    if (rng() & 1) y = -y;
    return {x, y};
  }
}

// Repeated addition; the slowest, most direct multiplication oracle.
inline ecfuzz::CurvePoint slow_mul(const Int& k, const ecfuzz::CurvePoint& p,
                                   const ecfuzz::CurveParams& e) {
  ecfuzz::CurvePoint acc = ecfuzz::CurvePoint::infinity();
  for (Int i = 0; i < k; ++i) acc = ecfuzz::point_add(acc, p, e);
  return acc;
}

inline std::size_t popcount(const Int& v) { return mpz_popcount(v.get_mpz_t()); }

}  // namespace testutil
