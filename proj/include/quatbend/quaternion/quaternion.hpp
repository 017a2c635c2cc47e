#pragma once

#include "quatbend/exact/biquad.hpp"
#include "quatbend/exact/hilbert.hpp"
#include "quatbend/exact/matrix.hpp"
#include "quatbend/exact/number.hpp"

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

namespace quatbend {

/// Thrown when an algebra fails a structural requirement (definite, split, ...).
class AlgebraError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// x0 + x1 i + x2 j + x3 ij in the algebra with i^2 = a, j^2 = b, ij = -ji.
template <typename Scalar>
class QuaternionT {
 public:
  QuaternionT() = default;
  QuaternionT(Scalar a, Scalar b, std::array<Scalar, 4> x) : a_(std::move(a)), b_(std::move(b)), x_(std::move(x)) {}

  static QuaternionT scalar(const Scalar& a, const Scalar& b, const Scalar& c) { return {a, b, {c, 0, 0, 0}}; }
  static QuaternionT basis(const Scalar& a, const Scalar& b, int k) {
    std::array<Scalar, 4> x{0, 0, 0, 0};
    x.at(static_cast<std::size_t>(k)) = 1;
    return {a, b, x};
  }

  const Scalar& a() const { return a_; }
  const Scalar& b() const { return b_; }
  const Scalar& operator[](int k) const { return x_[static_cast<std::size_t>(k)]; }
  const std::array<Scalar, 4>& coords() const { return x_; }

  bool same_algebra(const QuaternionT& o) const { return a_ == o.a_ && b_ == o.b_; }

  QuaternionT conj() const { return {a_, b_, {x_[0], -x_[1], -x_[2], -x_[3]}}; }
  Scalar nrd() const { return x_[0] * x_[0] - a_ * x_[1] * x_[1] - b_ * x_[2] * x_[2] + a_ * b_ * x_[3] * x_[3]; }
  Scalar trd() const { return Scalar(2) * x_[0]; }
  bool is_pure() const { return x_[0] == 0; }
  bool is_zero() const { return x_[0] == 0 && x_[1] == 0 && x_[2] == 0 && x_[3] == 0; }

  QuaternionT inverse() const {
    Scalar n = nrd();
    if (n == 0) throw ArithmeticError("quaternion of reduced norm zero is not invertible");
    QuaternionT c = conj();
    for (auto& v : c.x_) v /= n;
    return c;
  }

  QuaternionT operator-() const { return {a_, b_, {-x_[0], -x_[1], -x_[2], -x_[3]}}; }
  friend QuaternionT operator+(const QuaternionT& x, const QuaternionT& y) {
    x.check(y);
    return {x.a_, x.b_, {x.x_[0] + y.x_[0], x.x_[1] + y.x_[1], x.x_[2] + y.x_[2], x.x_[3] + y.x_[3]}};
  }
  friend QuaternionT operator-(const QuaternionT& x, const QuaternionT& y) { return x + (-y); }
  friend QuaternionT operator*(const QuaternionT& q, const QuaternionT& r) {
    q.check(r);
    const Scalar& a = q.a_;
    const Scalar& b = q.b_;
    const auto& x = q.x_;
    const auto& y = r.x_;
    return {a,
            b,
            {x[0] * y[0] + a * x[1] * y[1] + b * x[2] * y[2] - a * b * x[3] * y[3],
             x[0] * y[1] + x[1] * y[0] - b * x[2] * y[3] + b * x[3] * y[2],
             x[0] * y[2] + x[2] * y[0] + a * x[1] * y[3] - a * x[3] * y[1],
             x[0] * y[3] + x[3] * y[0] + x[1] * y[2] - x[2] * y[1]}};
  }
  friend QuaternionT operator*(const Scalar& c, const QuaternionT& q) {
    return {q.a_, q.b_, {c * q.x_[0], c * q.x_[1], c * q.x_[2], c * q.x_[3]}};
  }
  friend bool operator==(const QuaternionT& x, const QuaternionT& y) { return x.same_algebra(y) && x.x_ == y.x_; }
  friend bool operator!=(const QuaternionT& x, const QuaternionT& y) { return !(x == y); }

 private:
  void check(const QuaternionT& o) const {
    if (!same_algebra(o)) throw ArithmeticError("quaternions from different algebras");
  }

  Scalar a_{0};
  Scalar b_{0};
  std::array<Scalar, 4> x_{0, 0, 0, 0};
};

using Quaternion = QuaternionT<Rational>;

std::string to_string(const Quaternion& q);
std::ostream& operator<<(std::ostream& os, const Quaternion& q);

/// (a,b)_Q with its ramification set computed at construction.
class QuaternionAlgebra {
 public:
  QuaternionAlgebra(Rational a, Rational b);

  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }

  /// Ramified places in increasing order, kInfinity (0) first when present.
  const std::vector<Place>& ramification() const { return ramified_; }
  bool is_division() const { return !ramified_.empty(); }
  bool is_indefinite() const { return a_ > 0 || b_ > 0; }
  /// Throws AlgebraError("not indefinite" / "not a division algebra").
  void require_indefinite_division() const;

  Quaternion element(std::array<Rational, 4> x) const { return {a_, b_, std::move(x)}; }
  Quaternion one() const { return Quaternion::scalar(a_, b_, 1); }
  Quaternion i() const { return Quaternion::basis(a_, b_, 1); }
  Quaternion j() const { return Quaternion::basis(a_, b_, 2); }
  Quaternion ij() const { return Quaternion::basis(a_, b_, 3); }

  bool contains(const Quaternion& q) const { return q.a() == a_ && q.b() == b_; }

 private:
  Rational a_;
  Rational b_;
  std::vector<Place> ramified_;
};

/// Places (finite primes dividing 2ab, and infinity) where the symbol is -1.
std::vector<Place> ramification_set(const Rational& a, const Rational& b);

std::string place_to_string(Place p);

/// Four elements e0 = 1, e1, e2, e3 spanning the algebra over Q.
class OrderBasis {
 public:
  OrderBasis(const QuaternionAlgebra& algebra, std::array<Quaternion, 4> basis);

  static OrderBasis standard(const QuaternionAlgebra& algebra);

  const QuaternionAlgebra& algebra() const { return algebra_; }
  const Quaternion& operator[](int k) const { return e_[static_cast<std::size_t>(k)]; }

  /// Coordinates of q in this basis (rational in general).
  std::array<Rational, 4> coordinates(const Quaternion& q) const;
  Quaternion combine(const std::array<Rational, 4>& c) const;
  bool contains(const Quaternion& q) const;

  /// Maps standard coordinates (1, i, j, ij) to coordinates in this basis.
  const MatrixQ& to_basis_matrix() const { return to_basis_; }

  /// Coordinates of e_r e_s, indexed [r][s][t].
  std::array<std::array<std::array<Rational, 4>, 4>, 4> structure_constants() const;

 private:
  QuaternionAlgebra algebra_;
  std::array<Quaternion, 4> e_;
  MatrixQ to_basis_;  // maps standard coordinates to basis coordinates
};

/// True iff all pairwise basis products have integral coordinates.
bool order_closure_check(const OrderBasis& basis);

/// Parses "a b" followed by four lines of four rationals each.
OrderBasis parse_order_basis(const std::string& text);
OrderBasis load_order_basis(const std::string& path);

/// x0 + x1 i with x0^2 - a x1^2 = 1, x1 != 0.
struct PellElement {
  Quaternion gamma;

  /// lambda = x0 + x1 sqrt(a), as an element of the biquadratic ring.
  BiquadQ lambda() const;
};

/// All (x0, x1) with 1 <= x0 <= height, x1 >= 1 and x0^2 - a x1^2 = 1, in
/// increasing x0. Throws AlgebraError when a is not a positive nonsquare integer.
std::vector<PellElement> pell_search(const QuaternionAlgebra& algebra, std::int64_t height);

/// Checks the defining properties; throws AlgebraError otherwise.
PellElement make_pell_element(const Quaternion& gamma);

/// [[x0 + sqrt(a) x1, sqrt(b) x2 + sqrt(ab) x3], [sqrt(b) x2 - sqrt(ab) x3, x0 - sqrt(a) x1]]
MatrixK matrix_model(const Quaternion& q);

}  // namespace quatbend
