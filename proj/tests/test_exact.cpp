#include <doctest.h>

#include "quatbend/exact/biquad.hpp"
#include "quatbend/exact/fp.hpp"
#include "quatbend/exact/hilbert.hpp"
#include "quatbend/exact/matrix.hpp"

using namespace quatbend;

TEST_CASE("rational parsing and valuations") {
  CHECK(parse_rational("-6/4") == Rational(-3, 2));
  CHECK(parse_rational("7") == Rational(7));
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK(padic_valuation(Integer(48), 2) == 4);
  CHECK(padic_valuation(Rational(9, 20), 3) == 2);
  CHECK(padic_valuation(Rational(9, 20), 5) == -1);
  CHECK(is_rational_square(Rational(9, 4)));
  CHECK_FALSE(is_rational_square(Rational(3)));
  CHECK(prime_divisors(Integer(360)) == std::vector<std::int64_t>{2, 3, 5});
  CHECK(mod_reduce(Rational(1, 2), 5) == 3);
}

// Values from Serre's closed formulas, computed outside this code base.
TEST_CASE("hilbert symbols against closed formulas") {
  struct Row {
    int a, b;
    int inf, p2, p3, p5, p7;
  };
  const Row table[] = {
      {3, -1, 1, -1, -1, 1, 1},  {2, 3, 1, -1, -1, 1, 1},   {-1, -1, -1, -1, 1, 1, 1},
      {2, 5, 1, -1, 1, -1, 1},   {5, 7, 1, 1, 1, -1, -1},   {-3, 6, 1, -1, -1, 1, 1},
      {7, -14, 1, 1, 1, 1, 1},   {10, -15, 1, 1, 1, 1, 1},  {6, -1, 1, -1, -1, 1, 1},
  };
  for (const auto& r : table) {
    CAPTURE(r.a);
    CAPTURE(r.b);
    CHECK(hilbert_symbol(r.a, r.b, kInfinity) == r.inf);
    CHECK(hilbert_symbol(r.a, r.b, 2) == r.p2);
    CHECK(hilbert_symbol(r.a, r.b, 3) == r.p3);
    CHECK(hilbert_symbol(r.a, r.b, 5) == r.p5);
    CHECK(hilbert_symbol(r.a, r.b, 7) == r.p7);
  }
}

TEST_CASE("hensel search agrees with the odd-prime formula") {
  for (std::int64_t p : {3, 5, 7, 11})
    for (int a = -10; a <= 10; ++a)
      for (int b = -10; b <= 10; ++b) {
        if (a == 0 || b == 0) continue;
        CHECK(hilbert_symbol_search(a, b, p) == hilbert_symbol_odd_formula(a, b, p));
      }
}

TEST_CASE("hilbert symbol is bimultiplicative") {
  for (std::int64_t p : {2, 3, 5})
    for (int a : {-6, -1, 2, 3, 5, 10})
      for (int b : {-3, -2, 7})
        for (int c : {-1, 3, 6})
          CHECK(hilbert_symbol(a, b * c, p) == hilbert_symbol(a, b, p) * hilbert_symbol(a, c, p));
}

TEST_CASE("biquadratic ring arithmetic") {
  const Rational a = 3, b = -1;
  BiquadQ s = BiquadQ::sqrt_a(a, b);
  CHECK(s * s == BiquadQ(a, b, {3, 0, 0, 0}));
  BiquadQ t = BiquadQ::sqrt_b(a, b);
  CHECK(s * t == BiquadQ::sqrt_ab(a, b));
  BiquadQ x(a, b, {2, 1, -1, 3});
  CHECK(x * x.inverse() == BiquadQ(a, b, {1, 0, 0, 0}));
  CHECK(x.act({-1, 1}) == BiquadQ(a, b, {2, -1, -1, -3}));
  CHECK(x.norm() == (x * x.act({1, -1}) * x.act({-1, 1}) * x.act({-1, -1})).coeff(0));
  CHECK_THROWS(BiquadQ(0, b, {1, 0, 0, 0}));
}

TEST_CASE("prime field elements") {
  Fp x(3, 7), y(5, 7);
  CHECK((x * y).value() == 1);
  CHECK((x - y).value() == 5);
  CHECK((x.inverse() * x).value() == 1);
  CHECK(x.pow(6).value() == 1);
  CHECK((x + Fp(1)).value() == 4);  // unbound literal adopts the modulus
}

TEST_CASE("exact linear algebra") {
  MatrixQ m(3, 3);
  m << 2, 1, 0, 1, 3, 1, 0, 1, 4;
  CHECK(determinant(m) == Rational(18));
  CHECK(is_identity(mul(m, inverse(m))));
  MatrixZ z = to_integer(m);
  CHECK(determinant_z(z) == 18);

  MatrixQ sing(2, 3);
  sing << 1, 2, 3, 2, 4, 6;
  CHECK(rank(sing) == 1);
  MatrixQ k = kernel(sing);
  CHECK(k.cols() == 2);
  CHECK(mul(sing, k).isZero());

  MatrixZ zs = to_integer(sing);
  MatrixZ ik = integer_kernel(zs);
  CHECK(ik.cols() == 2);
  for (Eigen::Index c = 0; c < ik.cols(); ++c) CHECK(mul(zs, MatrixZ(ik.col(c))).isZero());

  MatrixZ a = identity<Integer>(2);
  MatrixZ b(2, 2);
  b << 0, 1, -1, 0;
  MatrixZ kr = kronecker(a, b);
  CHECK(kr.rows() == 4);
  CHECK(kr(2, 3) == 1);
  CHECK(kr(3, 2) == -1);
  CHECK(kr(0, 3) == 0);
}

TEST_CASE("reduction to F_p") {
  MatrixZ m(2, 2);
  m << -1, 7, 12, 5;
  MatrixFp r = to_fp(m, 5);
  CHECK(r(0, 0).value() == 4);
  CHECK(r(0, 1).value() == 2);
  CHECK(r(1, 0).value() == 2);
  CHECK(r(1, 1).value() == 0);
  MatrixQ q(1, 1);
  q << Rational(1, 3);
  CHECK(to_fp(q, 7)(0, 0).value() == 5);
}
