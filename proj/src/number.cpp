#include "quatbend/exact/number.hpp"

#include <boost/multiprecision/integer.hpp>

#include <charconv>
#include <vector>

namespace quatbend {

namespace {

Integer parse_integer(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty integer literal");
  std::size_t pos = 0;
  if (text[0] == '+' || text[0] == '-') pos = 1;
  if (pos == text.size()) throw std::invalid_argument("malformed integer: " + std::string(text));
  for (std::size_t k = pos; k < text.size(); ++k) {
    if (text[k] < '0' || text[k] > '9') {
      throw std::invalid_argument("malformed integer: " + std::string(text));
    }
  }
  std::string digits(text.substr(text[0] == '+' ? 1 : 0));
  return Integer(digits);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text));
  Integer p = parse_integer(text.substr(0, slash));
  Integer q = parse_integer(text.substr(slash + 1));
  if (q == 0) throw std::invalid_argument("zero denominator: " + std::string(text));
  return Rational(p, q);
}

std::string to_string(const Integer& x) { return x.str(); }

std::string to_string(const Rational& x) {
  if (den(x) == 1) return num(x).str();
  return num(x).str() + "/" + den(x).str();
}

int padic_valuation(const Integer& x, std::int64_t p) {
  if (x == 0) throw ArithmeticError("valuation of zero is undefined");
  if (p < 2) throw std::invalid_argument("valuation base must be a prime");
  Integer y = abs(x);
  int v = 0;
  while (y % p == 0) {
    y /= p;
    ++v;
  }
  return v;
}

int padic_valuation(const Rational& x, std::int64_t p) {
  if (x == 0) throw ArithmeticError("valuation of zero is undefined");
  return padic_valuation(num(x), p) - padic_valuation(den(x), p);
}

bool is_perfect_square(const Integer& x) {
  if (x < 0) return false;
  Integer r = boost::multiprecision::sqrt(x);
  return r * r == x;
}

bool is_rational_square(const Rational& x) {
  return is_perfect_square(num(x)) && is_perfect_square(den(x));
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::int64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

std::vector<std::int64_t> prime_divisors(const Integer& x) {
  if (x == 0) throw ArithmeticError("prime divisors of zero");
  Integer y = abs(x);
  std::vector<std::int64_t> out;
  for (std::int64_t d = 2; Integer(d) * d <= y; d += (d == 2 ? 1 : 2)) {
    if (y % d == 0) {
      out.push_back(d);
      while (y % d == 0) y /= d;
    }
    if (d > (std::int64_t{1} << 31)) {
      throw ArithmeticError("trial division bound exceeded while factoring " + x.str());
    }
  }
  if (y > 1) {
    if (y > Integer(std::int64_t{1} << 62)) {
      throw ArithmeticError("cofactor too large for machine primes: " + y.str());
    }
    out.push_back(y.convert_to<std::int64_t>());
  }
  return out;
}

std::int64_t mod_reduce(const Rational& x, std::int64_t m) {
  Integer n = num(x) % m;
  if (n < 0) n += m;
  Integer d = den(x) % m;
  if (d < 0) d += m;
  // Inverse of d modulo m by the extended Euclidean algorithm.
  std::int64_t r0 = m, r1 = d.convert_to<std::int64_t>();
  std::int64_t t0 = 0, t1 = 1;
  while (r1 != 0) {
    std::int64_t q = r0 / r1;
    std::int64_t r2 = r0 - q * r1;
    r0 = r1;
    r1 = r2;
    std::int64_t t2 = t0 - q * t1;
    t0 = t1;
    t1 = t2;
  }
  if (r0 != 1) throw ArithmeticError("denominator not invertible modulo " + std::to_string(m));
  if (t0 < 0) t0 += m;
  __int128 prod = static_cast<__int128>(n.convert_to<std::int64_t>()) * t0;
  return static_cast<std::int64_t>(prod % m);
}

}  // namespace quatbend
