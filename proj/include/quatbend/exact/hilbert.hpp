#pragma once

#include "quatbend/exact/number.hpp"

#include <cstdint>

namespace quatbend {

/// Place of Q: a prime p, or kInfinity for the real place.
using Place = std::int64_t;
inline constexpr Place kInfinity = 0;

/// Hilbert symbol (a,b)_p: +1 iff z^2 = a x^2 + b y^2 has a nonzero solution
/// over Q_p (or R for kInfinity).
///
/// Finite places are decided by a Hensel search: with coefficients reduced to
/// valuation 0 or 1, a primitive solution exists iff for some coordinate set
/// to 1 the form vanishes modulo p^(2 v_p(2c)+1). Odd primes whose search
/// modulus would exceed kHilbertSearchModulusCap use the Legendre formula.
int hilbert_symbol(const Rational& a, const Rational& b, Place p);

/// The Hensel search alone; throws ArithmeticError if the modulus is over the cap.
int hilbert_symbol_search(const Rational& a, const Rational& b, std::int64_t p);

/// Closed-form symbol for odd p via Legendre symbols.
int hilbert_symbol_odd_formula(const Rational& a, const Rational& b, std::int64_t p);

inline constexpr std::int64_t kHilbertSearchModulusCap = std::int64_t{1} << 24;

}  // namespace quatbend
