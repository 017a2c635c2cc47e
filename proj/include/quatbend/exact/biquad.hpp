#pragma once

#include "quatbend/exact/galois.hpp"
#include "quatbend/exact/number.hpp"

#include <Eigen/Core>

#include <array>
#include <ostream>
#include <sstream>

namespace quatbend {

/// Element c0 + c1 sqrt(a) + c2 sqrt(b) + c3 sqrt(ab) of the commutative ring
/// Q[x,y]/(x^2 - a, y^2 - b).
///
/// The ring is modelled even when a or b is a square, so it need not be a
/// field. An element built from a plain scalar carries no parameters and
/// adopts those of whatever it is combined with; combining two elements with
/// different parameters throws ArithmeticError.
template <typename Scalar>
class Biquad {
 public:
  Biquad() = default;
  Biquad(const Scalar& c0) : c_{c0, Scalar(0), Scalar(0), Scalar(0)} {}  // NOLINT
  Biquad(int c0) : Biquad(Scalar(c0)) {}                                 // NOLINT
  Biquad(const Scalar& a, const Scalar& b, std::array<Scalar, 4> coeffs)
      : a_(a), b_(b), has_params_(true), c_(std::move(coeffs)) {
    if (a_ == 0 || b_ == 0) throw ArithmeticError("biquadratic parameters must be nonzero");
  }

  static Biquad sqrt_a(const Scalar& a, const Scalar& b) { return Biquad(a, b, {0, 1, 0, 0}); }
  static Biquad sqrt_b(const Scalar& a, const Scalar& b) { return Biquad(a, b, {0, 0, 1, 0}); }
  static Biquad sqrt_ab(const Scalar& a, const Scalar& b) { return Biquad(a, b, {0, 0, 0, 1}); }

  const Scalar& coeff(int k) const { return c_[k]; }
  const std::array<Scalar, 4>& coeffs() const { return c_; }
  bool has_params() const { return has_params_; }
  const Scalar& a() const { return a_; }
  const Scalar& b() const { return b_; }

  bool is_zero() const { return c_[0] == 0 && c_[1] == 0 && c_[2] == 0 && c_[3] == 0; }
  bool is_rational() const { return c_[1] == 0 && c_[2] == 0 && c_[3] == 0; }

  Biquad operator-() const {
    Biquad r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
  }

  Biquad& operator+=(const Biquad& o) {
    adopt(o);
    for (int k = 0; k < 4; ++k) c_[k] += o.c_[k];
    return *this;
  }
  Biquad& operator-=(const Biquad& o) {
    adopt(o);
    for (int k = 0; k < 4; ++k) c_[k] -= o.c_[k];
    return *this;
  }
  Biquad& operator*=(const Biquad& o) {
    adopt(o);
    const auto& x = c_;
    const auto& y = o.c_;
    // sqrt(a)*sqrt(b) = sqrt(ab), sqrt(a)*sqrt(ab) = a sqrt(b), sqrt(b)*sqrt(ab) = b sqrt(a).
    std::array<Scalar, 4> r{
        x[0] * y[0] + a_ * x[1] * y[1] + b_ * x[2] * y[2] + a_ * b_ * x[3] * y[3],
        x[0] * y[1] + x[1] * y[0] + b_ * (x[2] * y[3] + x[3] * y[2]),
        x[0] * y[2] + x[2] * y[0] + a_ * (x[1] * y[3] + x[3] * y[1]),
        x[0] * y[3] + x[3] * y[0] + x[1] * y[2] + x[2] * y[1]};
    if (!has_params_) {
      // Both operands rational: only the first product term is live.
      r = {x[0] * y[0], Scalar(0), Scalar(0), Scalar(0)};
    }
    c_ = std::move(r);
    return *this;
  }
  Biquad& operator/=(const Biquad& o) { return *this *= o.inverse(); }

  friend Biquad operator+(Biquad x, const Biquad& y) { return x += y; }
  friend Biquad operator-(Biquad x, const Biquad& y) { return x -= y; }
  friend Biquad operator*(Biquad x, const Biquad& y) { return x *= y; }
  friend Biquad operator/(Biquad x, const Biquad& y) { return x /= y; }

  friend bool operator==(const Biquad& x, const Biquad& y) { return x.c_ == y.c_ && x.params_compatible(y); }
  friend bool operator!=(const Biquad& x, const Biquad& y) { return !(x == y); }

  /// Image under the Galois element: sqrt(a) -> sign_a sqrt(a), sqrt(b) -> sign_b sqrt(b).
  Biquad act(const GaloisElement& s) const {
    Biquad r = *this;
    r.c_[1] *= s.sign_a;
    r.c_[2] *= s.sign_b;
    r.c_[3] *= s.sign_a * s.sign_b;
    return r;
  }

  /// Product of the four Galois conjugates; a rational number.
  Scalar norm() const {
    Biquad n = *this * act({1, -1}) * act({-1, 1}) * act({-1, -1});
    return n.c_[0];
  }

  bool is_invertible() const { return norm() != 0; }

  Biquad inverse() const {
    if (is_rational()) {
      if (c_[0] == 0) throw ArithmeticError("division by zero in biquadratic ring");
      Biquad r = *this;
      r.c_[0] = Scalar(1) / c_[0];
      return r;
    }
    Biquad others = act({1, -1}) * act({-1, 1}) * act({-1, -1});
    Scalar n = (*this * others).c_[0];
    if (n == 0) throw ArithmeticError("zero divisor in biquadratic ring");
    for (auto& c : others.c_) c /= n;
    return others;
  }

  friend std::ostream& operator<<(std::ostream& os, const Biquad& x) {
    static const char* names[] = {"", "sqrt(a)", "sqrt(b)", "sqrt(ab)"};
    bool first = true;
    for (int k = 0; k < 4; ++k) {
      if (x.c_[k] == 0) continue;
      if (!first) os << " + ";
      os << to_string(x.c_[k]);
      if (k > 0) os << "*" << names[k];
      first = false;
    }
    if (first) os << "0";
    return os;
  }

 private:
  bool params_compatible(const Biquad& o) const {
    if (has_params_ && o.has_params_) return a_ == o.a_ && b_ == o.b_;
    return true;
  }
  void adopt(const Biquad& o) {
    if (o.has_params_) {
      if (has_params_) {
        if (a_ != o.a_ || b_ != o.b_) throw ArithmeticError("biquadratic parameter mismatch");
      } else {
        a_ = o.a_;
        b_ = o.b_;
        has_params_ = true;
      }
    }
  }

  Scalar a_{0};
  Scalar b_{0};
  bool has_params_ = false;
  std::array<Scalar, 4> c_{Scalar(0), Scalar(0), Scalar(0), Scalar(0)};
};

template <typename Scalar>
std::string to_string(const Biquad<Scalar>& x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

using BiquadQ = Biquad<Rational>;

}  // namespace quatbend

namespace Eigen {

template <typename Scalar>
struct NumTraits<quatbend::Biquad<Scalar>> : GenericNumTraits<quatbend::Biquad<Scalar>> {
  using Real = quatbend::Biquad<Scalar>;
  using NonInteger = quatbend::Biquad<Scalar>;
  using Literal = quatbend::Biquad<Scalar>;
  using Nested = quatbend::Biquad<Scalar>;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 16,
    AddCost = 32,
    MulCost = 128
  };
  static inline int digits10() { return 0; }
};

}  // namespace Eigen
