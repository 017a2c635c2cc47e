#pragma once

#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace quatbend {

// Expression templates are off so the types compose with Eigen expressions.
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

/// Thrown for arithmetic preconditions (zero divisors, valuation of zero, ...).
class ArithmeticError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

inline Integer num(const Rational& x) { return boost::multiprecision::numerator(x); }
inline Integer den(const Rational& x) { return boost::multiprecision::denominator(x); }

inline bool is_integral(const Rational& x) { return den(x) == 1; }

/// Parses "p", "-p" or "p/q". Throws std::invalid_argument on malformed text
/// or a zero denominator.
Rational parse_rational(std::string_view text);

std::string to_string(const Integer& x);
std::string to_string(const Rational& x);

/// Exponent of the prime p in x; x must be nonzero.
int padic_valuation(const Integer& x, std::int64_t p);
int padic_valuation(const Rational& x, std::int64_t p);

bool is_perfect_square(const Integer& x);
/// True iff x is the square of a rational number.
bool is_rational_square(const Rational& x);

bool is_prime(std::int64_t n);
/// Primes dividing |x| found by trial division; |x| must be below 2^62 after
/// removing factors.
std::vector<std::int64_t> prime_divisors(const Integer& x);

/// x mod m in [0, m) for a p-adic unit denominator; throws if gcd(den, m) != 1.
std::int64_t mod_reduce(const Rational& x, std::int64_t m);

}  // namespace quatbend
