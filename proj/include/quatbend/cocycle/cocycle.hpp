#pragma once

#include "quatbend/exact/biquad.hpp"
#include "quatbend/exact/galois.hpp"
#include "quatbend/exact/matrix.hpp"

#include <array>
#include <string>
#include <vector>

namespace quatbend {

enum class CocycleTarget { ProjectiveOrthogonal, ProjectiveLinear, ProjectiveSymplectic };

std::string to_string(CocycleTarget t);

/// Map from the Klein group Gal(Q(sqrt a, sqrt b)/Q) to representative
/// matrices over the biquadratic ring, read projectively (up to sign).
struct Cocycle1 {
  CocycleTarget target = CocycleTarget::ProjectiveLinear;
  Rational a = 1;
  Rational b = 1;
  std::array<MatrixK, 4> values;  // indexed by GaloisElement::index()
  /// Set when a or b is a rational square: the Klein quotient is then not
  /// faithful and the construction is purely formal.
  bool degenerate_quotient = false;

  const MatrixK& operator()(const GaloisElement& s) const { return values[static_cast<std::size_t>(s.index())]; }
  Eigen::Index dim() const { return values[0].rows(); }
};

/// Sign-valued function on pairs of Klein elements.
struct FactorSet2 {
  std::array<std::array<int, 4>, 4> values{};

  static FactorSet2 ones();
  int operator()(const GaloisElement& s, const GaloisElement& t) const {
    return values[static_cast<std::size_t>(s.index())][static_cast<std::size_t>(t.index())];
  }
  friend FactorSet2 operator*(const FactorSet2& x, const FactorSet2& y);
  friend bool operator==(const FactorSet2&, const FactorSet2&) = default;
};

std::string to_string(const FactorSet2& f);

/// Coboundary (s,t) -> m(s) m(t) m(st) for a sign map m indexed like klein_group().
FactorSet2 coboundary(const std::array<int, 4>& m);

/// 2-cocycle identity for the trivial action, over all 64 triples.
bool is_factor_set(const FactorSet2& f);

MatrixK galois_act(const GaloisElement& s, const MatrixK& m);

/// The cocycle T^{a,b} as a projective-linear(2) cocycle.
Cocycle1 t_cocycle(const Rational& a, const Rational& b);
/// Constant identity cocycle of size n.
Cocycle1 trivial_cocycle(const Rational& a, const Rational& b, Eigen::Index n, CocycleTarget target);
/// Same values, relabelled target.
Cocycle1 retarget(Cocycle1 f, CocycleTarget target);
/// Values multiplied by the signs m(s); an alternative choice of lifts.
Cocycle1 relift(Cocycle1 f, const std::array<int, 4>& m);
/// I_{n/2} (x) T^{a,b} viewed in projective-orthogonal(n); n even.
Cocycle1 chi_cocycle(const Rational& a, const Rational& b, Eigen::Index n);

/// f(st) = +-f(s) s(f(t)) for all 16 pairs and f(1) = +-I.
bool is_cocycle(const Cocycle1& f);
/// Number of pairs (s,t) satisfying the projective identity.
int cocycle_pairs_passing(const Cocycle1& f);

/// Q-basis of {M : f(s) s(M) f(s)^{-1} = M for all s}.
std::vector<MatrixK> fixed_algebra(const Cocycle1& f);

/// The four matrices {I, diag(sqrt a, -sqrt a), antidiag(sqrt b, sqrt b),
/// antidiag(sqrt ab, -sqrt ab)}.
std::vector<MatrixK> quaternion_display_basis(const Rational& a, const Rational& b);

/// True iff the two families span the same Q-subspace.
bool same_span(const std::vector<MatrixK>& x, const std::vector<MatrixK>& y);

/// Factor set of a cocycle whose stored values are orthogonal lifts
/// (M^T M = I). Throws ArithmeticError if a value is not such a lift.
FactorSet2 connecting_partial(const Cocycle1& f);

/// Factor set from lifts with symplectic multiplier +-1 (M^T K_n M = +-K_n;
/// for 2x2 this is det M = +-1). Throws ArithmeticError otherwise.
FactorSet2 connecting_delta(const Cocycle1& f);

/// Values are Kronecker products eta(s) (x) xi(s); target symplectic.
Cocycle1 kronecker_cocycle(const Cocycle1& eta, const Cocycle1& xi);

/// delta_{2n}(eta (x) xi) equivalent to delta_2(xi) * partial_n(eta).
bool product_identity_check(const Cocycle1& eta, const Cocycle1& xi);

/// f * g^{-1} is a coboundary; exhaustive over the 16 sign maps.
bool factor_set_equivalent(const FactorSet2& f, const FactorSet2& g);

/// For odd n: partial_n(f) equals the coboundary of s -> det f(s).
bool determinant_coboundary_check(const Cocycle1& f);

/// s -> diag(s_a, s_b, s_a s_b): a genuine orthogonal cocycle of odd size.
Cocycle1 sign_cocycle(const Rational& a, const Rational& b);

/// Invariant checks for T^{a,b} used by the CLI and the acceptance run.
struct CocycleSuite {
  Rational a, b;
  int pairs_passing = 0;          // of 16
  bool degenerate_quotient = false;
  std::size_t fixed_dim = 0;
  bool display_span = false;      // fixed algebra equals the displayed quaternion basis
  bool product_identity = false;  // eta = T read orthogonally, xi = T
  bool product_identity_chi = false;  // eta = I_2 (x) T
  bool determinant_coboundary = false;  // sign cocycle and a relift of it
  FactorSet2 delta;
  bool delta_trivial = false;

  bool passed() const;
};

CocycleSuite cocycle_suite(const Rational& a, const Rational& b);
std::string to_string(const CocycleSuite& s);

}  // namespace quatbend
