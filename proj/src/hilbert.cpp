#include "quatbend/exact/hilbert.hpp"

#include <array>
#include <stdexcept>
#include <vector>

namespace quatbend {

namespace {

struct LocalCoefficient {
  int parity = 0;   // valuation mod 2 after removing squares of p
  Rational unit;    // p-adic unit part
};

LocalCoefficient split(const Rational& x, std::int64_t p) {
  if (x == 0) throw ArithmeticError("Hilbert symbol of zero");
  int v = padic_valuation(x, p);
  Rational u = x;
  Rational pp(p);
  for (int k = 0; k < v; ++k) u /= pp;
  for (int k = 0; k > v; --k) u *= pp;
  return {((v % 2) + 2) % 2, u};
}

std::int64_t ipow(std::int64_t p, int e) {
  std::int64_t r = 1;
  for (int k = 0; k < e; ++k) r *= p;
  return r;
}

int legendre(std::int64_t x, std::int64_t p) {
  x %= p;
  if (x < 0) x += p;
  if (x == 0) return 0;
  // Euler's criterion.
  std::int64_t r = 1, base = x, e = (p - 1) / 2;
  while (e > 0) {
    if (e & 1) r = static_cast<std::int64_t>(static_cast<__int128>(r) * base % p);
    base = static_cast<std::int64_t>(static_cast<__int128>(base) * base % p);
    e >>= 1;
  }
  return r == 1 ? 1 : -1;
}

}  // namespace

int hilbert_symbol_search(const Rational& a, const Rational& b, std::int64_t p) {
  if (!is_prime(p)) throw std::invalid_argument("Hilbert symbol needs a prime place");
  const std::array<LocalCoefficient, 3> local{split(a, p), split(b, p), LocalCoefficient{0, Rational(-1)}};

  for (int i = 0; i < 3; ++i) {
    // delta = v_p(2 c_i); the partial derivative in coordinate i at v_i = 1.
    int delta = local[i].parity + (p == 2 ? 1 : 0);
    int exponent = 2 * delta + 1;
    std::int64_t m = ipow(p, exponent);
    if (m > kHilbertSearchModulusCap) {
      throw ArithmeticError("Hilbert search modulus exceeds cap at p=" + std::to_string(p));
    }
    std::array<std::int64_t, 3> c{};
    for (int k = 0; k < 3; ++k) {
      c[k] = ipow(p, local[k].parity) * mod_reduce(local[k].unit, m) % m;
    }
    int j = (i + 1) % 3, k = (i + 2) % 3;
    std::vector<char> reachable(static_cast<std::size_t>(m), 0);
    for (std::int64_t w = 0; w < m; ++w) reachable[(c[k] * (w * w % m)) % m] = 1;
    for (std::int64_t u = 0; u < m; ++u) {
      std::int64_t r = (c[i] + c[j] * (u * u % m)) % m;
      std::int64_t need = (m - r) % m;
      if (reachable[need]) return 1;
    }
  }
  return -1;
}

int hilbert_symbol_odd_formula(const Rational& a, const Rational& b, std::int64_t p) {
  if (p == 2 || !is_prime(p)) throw std::invalid_argument("formula needs an odd prime");
  int alpha = padic_valuation(a, p);
  int beta = padic_valuation(b, p);
  LocalCoefficient la = split(a, p), lb = split(b, p);
  std::int64_t u = mod_reduce(la.unit, p), v = mod_reduce(lb.unit, p);
  int sign = 1;
  if ((alpha & 1) && (beta & 1) && ((p - 1) / 2) % 2 == 1) sign = -sign;
  if (beta & 1) sign *= legendre(u, p);
  if (alpha & 1) sign *= legendre(v, p);
  return sign;
}

int hilbert_symbol(const Rational& a, const Rational& b, Place p) {
  if (a == 0 || b == 0) throw ArithmeticError("Hilbert symbol of zero");
  if (p == kInfinity) return (a > 0 || b > 0) ? 1 : -1;
  try {
    return hilbert_symbol_search(a, b, p);
  } catch (const ArithmeticError&) {
    if (p == 2) throw;
    return hilbert_symbol_odd_formula(a, b, p);
  }
}

}  // namespace quatbend
