#pragma once

#include "quatbend/exact/number.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <ostream>

namespace quatbend {

/// Residue modulo an odd prime p < 2^31. A default-constructed value has
/// modulus 0 and adopts the modulus of the first operand it meets, which lets
/// Eigen zero-initialise storage.
class Fp {
 public:
  Fp() = default;
  Fp(std::int64_t v, std::int64_t p) : p_(p), v_(normalize(v, p)) {
    if (p < 2) throw ArithmeticError("Fp modulus must be a prime");
  }
  Fp(int v) : v_(v) {}  // NOLINT: literal, modulus unbound

  std::int64_t value() const { return v_; }
  std::int64_t modulus() const { return p_; }
  bool is_zero() const { return v_ == 0; }

  Fp operator-() const { return bound(p_, p_ == 0 ? -v_ : (p_ - v_) % p_); }

  Fp& operator+=(const Fp& o) { return combine(o, v_ + o.v_); }
  Fp& operator-=(const Fp& o) { return combine(o, v_ - o.v_); }
  Fp& operator*=(const Fp& o) { return combine(o, v_ * o.v_); }
  Fp& operator/=(const Fp& o) { return *this *= o.inverse(); }

  friend Fp operator+(Fp x, const Fp& y) { return x += y; }
  friend Fp operator-(Fp x, const Fp& y) { return x -= y; }
  friend Fp operator*(Fp x, const Fp& y) { return x *= y; }
  friend Fp operator/(Fp x, const Fp& y) { return x /= y; }
  friend bool operator==(const Fp& x, const Fp& y) {
    std::int64_t p = x.p_ ? x.p_ : y.p_;
    if (p == 0) return x.v_ == y.v_;
    return normalize(x.v_, p) == normalize(y.v_, p);
  }
  friend bool operator!=(const Fp& x, const Fp& y) { return !(x == y); }

  Fp inverse() const {
    if (p_ == 0) throw ArithmeticError("inverse of an unbound residue");
    if (v_ == 0) throw ArithmeticError("division by zero in F_p");
    return pow(p_ - 2);
  }

  Fp pow(std::int64_t e) const {
    Fp base = *this, r(1, p_);
    while (e > 0) {
      if (e & 1) r *= base;
      base *= base;
      e >>= 1;
    }
    return r;
  }

  friend std::ostream& operator<<(std::ostream& os, const Fp& x) { return os << x.v_; }

 private:
  static std::int64_t normalize(std::int64_t v, std::int64_t p) {
    if (p == 0) return v;
    v %= p;
    return v < 0 ? v + p : v;
  }
  static Fp bound(std::int64_t p, std::int64_t v) {
    Fp r;
    r.p_ = p;
    r.v_ = normalize(v, p);
    return r;
  }
  Fp& combine(const Fp& o, std::int64_t raw) {
    if (p_ == 0) {
      p_ = o.p_;
    } else if (o.p_ != 0 && o.p_ != p_) {
      throw ArithmeticError("F_p modulus mismatch");
    }
    v_ = normalize(raw, p_);
    return *this;
  }

  std::int64_t p_ = 0;
  std::int64_t v_ = 0;
};

}  // namespace quatbend

namespace Eigen {

template <>
struct NumTraits<quatbend::Fp> : GenericNumTraits<quatbend::Fp> {
  using Real = quatbend::Fp;
  using NonInteger = quatbend::Fp;
  using Literal = quatbend::Fp;
  using Nested = quatbend::Fp;
  enum {
    IsComplex = 0,
    IsInteger = 1,
    IsSigned = 0,
    RequireInitialization = 0,
    ReadCost = 1,
    AddCost = 2,
    MulCost = 4
  };
  static inline int digits10() { return 0; }
};

}  // namespace Eigen
