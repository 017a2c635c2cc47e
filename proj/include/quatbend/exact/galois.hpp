#pragma once

#include <array>
#include <compare>
#include <string>

namespace quatbend {

/// Element of Gal(Q(sqrt a, sqrt b)/Q), a Klein four-group: the sign each
/// automorphism puts on sqrt(a) and sqrt(b).
struct GaloisElement {
  int sign_a = 1;
  int sign_b = 1;

  constexpr bool is_identity() const { return sign_a == 1 && sign_b == 1; }
  constexpr GaloisElement operator*(const GaloisElement& o) const {
    return {sign_a * o.sign_a, sign_b * o.sign_b};
  }
  /// Position 0..3 in klein_group().
  constexpr int index() const { return (sign_a == 1 ? 0 : 2) + (sign_b == 1 ? 0 : 1); }

  friend constexpr auto operator<=>(const GaloisElement&, const GaloisElement&) = default;
};

/// (+,+), (+,-), (-,+), (-,-)
constexpr std::array<GaloisElement, 4> klein_group() {
  return {GaloisElement{1, 1}, GaloisElement{1, -1}, GaloisElement{-1, 1}, GaloisElement{-1, -1}};
}

inline std::string to_string(const GaloisElement& s) {
  return std::string("(") + (s.sign_a > 0 ? "+" : "-") + "," + (s.sign_b > 0 ? "+" : "-") + ")";
}

}  // namespace quatbend
