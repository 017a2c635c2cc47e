#include "quatbend/cocycle/cocycle.hpp"

#include "quatbend/symplectic/forms.hpp"

#include <optional>

namespace quatbend {

namespace {

BiquadQ kelem(const Rational& a, const Rational& b, std::array<Rational, 4> c) { return BiquadQ(a, b, std::move(c)); }

MatrixK kmatrix(const Rational& a, const Rational& b, const MatrixQ& m) {
  MatrixK r(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) r(i, j) = kelem(a, b, {m(i, j), 0, 0, 0});
  return r;
}

// c with x = c * y for a rational scalar c = +-1, if any.
std::optional<int> sign_ratio(const MatrixK& x, const MatrixK& y) {
  if (equal(x, y)) return 1;
  MatrixK neg = y;
  for (Eigen::Index i = 0; i < neg.rows(); ++i)
    for (Eigen::Index j = 0; j < neg.cols(); ++j) neg(i, j) = -neg(i, j);
  if (equal(x, neg)) return -1;
  return std::nullopt;
}

MatrixK transpose(const MatrixK& m) { return m.transpose(); }

// Scalar c with m = c I, if m is a +-1 multiple of the identity.
std::optional<int> sign_of_scalar_matrix(const MatrixK& m) {
  return sign_ratio(m, identity<BiquadQ>(m.rows()));
}

FactorSet2 factor_set_from_lifts(const Cocycle1& f) {
  FactorSet2 out;
  for (const auto& s : klein_group()) {
    for (const auto& t : klein_group()) {
      MatrixK prod = mul(mul(f(s), galois_act(s, f(t))), inverse(f(s * t)));
      auto c = sign_of_scalar_matrix(prod);
      if (!c) throw ArithmeticError("lifts do not define a sign-valued factor set");
      out.values[static_cast<std::size_t>(s.index())][static_cast<std::size_t>(t.index())] = *c;
    }
  }
  return out;
}

std::array<int, 4> sign_map(int bits) {
  std::array<int, 4> m{};
  for (int k = 0; k < 4; ++k) m[static_cast<std::size_t>(k)] = (bits >> k) & 1 ? -1 : 1;
  return m;
}

}  // namespace

std::string to_string(CocycleTarget t) {
  switch (t) {
    case CocycleTarget::ProjectiveOrthogonal: return "projective-orthogonal";
    case CocycleTarget::ProjectiveLinear: return "projective-linear";
    case CocycleTarget::ProjectiveSymplectic: return "projective-symplectic";
  }
  return "?";
}

FactorSet2 FactorSet2::ones() {
  FactorSet2 f;
  for (auto& row : f.values) row.fill(1);
  return f;
}

FactorSet2 operator*(const FactorSet2& x, const FactorSet2& y) {
  FactorSet2 r;
  for (std::size_t s = 0; s < 4; ++s)
    for (std::size_t t = 0; t < 4; ++t) r.values[s][t] = x.values[s][t] * y.values[s][t];
  return r;
}

std::string to_string(const FactorSet2& f) {
  std::string out;
  for (std::size_t s = 0; s < 4; ++s) {
    if (s) out += " ";
    for (std::size_t t = 0; t < 4; ++t) out += f.values[s][t] > 0 ? '+' : '-';
  }
  return out;
}

FactorSet2 coboundary(const std::array<int, 4>& m) {
  FactorSet2 r;
  for (const auto& s : klein_group())
    for (const auto& t : klein_group()) {
      auto si = static_cast<std::size_t>(s.index()), ti = static_cast<std::size_t>(t.index());
      r.values[si][ti] = m[si] * m[ti] * m[static_cast<std::size_t>((s * t).index())];
    }
  return r;
}

bool is_factor_set(const FactorSet2& f) {
  for (const auto& s : klein_group())
    for (const auto& t : klein_group())
      for (const auto& u : klein_group()) {
        if (f(s, t) * f(s * t, u) != f(s, t * u) * f(t, u)) return false;
      }
  return true;
}

MatrixK galois_act(const GaloisElement& s, const MatrixK& m) {
  MatrixK r(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) r(i, j) = m(i, j).act(s);
  return r;
}

Cocycle1 t_cocycle(const Rational& a, const Rational& b) {
  Cocycle1 f;
  f.target = CocycleTarget::ProjectiveLinear;
  f.a = a;
  f.b = b;
  f.degenerate_quotient = is_rational_square(a) || is_rational_square(b);
  MatrixQ id(2, 2), flip(2, 2), swap(2, 2), rot(2, 2);
  id << 1, 0, 0, 1;
  flip << 1, 0, 0, -1;
  swap << 0, 1, 1, 0;
  rot << 0, 1, -1, 0;
  f.values[static_cast<std::size_t>(GaloisElement{1, 1}.index())] = kmatrix(a, b, id);
  f.values[static_cast<std::size_t>(GaloisElement{1, -1}.index())] = kmatrix(a, b, flip);
  f.values[static_cast<std::size_t>(GaloisElement{-1, 1}.index())] = kmatrix(a, b, swap);
  f.values[static_cast<std::size_t>(GaloisElement{-1, -1}.index())] = kmatrix(a, b, rot);
  return f;
}

Cocycle1 trivial_cocycle(const Rational& a, const Rational& b, Eigen::Index n, CocycleTarget target) {
  Cocycle1 f;
  f.target = target;
  f.a = a;
  f.b = b;
  f.degenerate_quotient = is_rational_square(a) || is_rational_square(b);
  for (auto& v : f.values) v = kmatrix(a, b, identity<Rational>(n));
  return f;
}

Cocycle1 retarget(Cocycle1 f, CocycleTarget target) {
  f.target = target;
  return f;
}

Cocycle1 relift(Cocycle1 f, const std::array<int, 4>& m) {
  for (std::size_t k = 0; k < 4; ++k) {
    if (m[k] == -1) f.values[k] = -f.values[k];
  }
  return f;
}

Cocycle1 chi_cocycle(const Rational& a, const Rational& b, Eigen::Index n) {
  if (n <= 0 || n % 2 != 0) throw DimensionError("chi cocycle needs a positive even size");
  Cocycle1 t = t_cocycle(a, b);
  MatrixK id = kmatrix(a, b, identity<Rational>(n / 2));
  for (auto& v : t.values) v = kronecker(id, v);
  t.target = CocycleTarget::ProjectiveOrthogonal;
  return t;
}

int cocycle_pairs_passing(const Cocycle1& f) {
  int ok = 0;
  for (const auto& s : klein_group())
    for (const auto& t : klein_group()) {
      MatrixK rhs = mul(f(s), galois_act(s, f(t)));
      if (sign_ratio(f(s * t), rhs)) ++ok;
    }
  return ok;
}

bool is_cocycle(const Cocycle1& f) {
  if (!sign_of_scalar_matrix(f(GaloisElement{}))) return false;
  return cocycle_pairs_passing(f) == 16;
}

std::vector<MatrixK> fixed_algebra(const Cocycle1& f) {
  const Eigen::Index n = f.dim();
  const Eigen::Index unknowns = 4 * n * n;
  auto unit = [&](Eigen::Index idx) {
    MatrixK e = kmatrix(f.a, f.b, zeros<Rational>(n, n));
    Eigen::Index entry = idx / 4;
    std::array<Rational, 4> c{0, 0, 0, 0};
    c[static_cast<std::size_t>(idx % 4)] = 1;
    e(entry / n, entry % n) = kelem(f.a, f.b, c);
    return e;
  };
  // Stack the conditions for the three nonidentity elements.
  MatrixQ system = zeros<Rational>(3 * unknowns, unknowns);
  Eigen::Index block = 0;
  for (const auto& s : klein_group()) {
    if (s.is_identity()) continue;
    MatrixK finv = inverse(f(s));
    for (Eigen::Index col = 0; col < unknowns; ++col) {
      MatrixK e = unit(col);
      MatrixK image = mul(mul(f(s), galois_act(s, e)), finv) - e;
      for (Eigen::Index r = 0; r < n; ++r)
        for (Eigen::Index c = 0; c < n; ++c)
          for (int k = 0; k < 4; ++k) system(block * unknowns + (r * n + c) * 4 + k, col) = image(r, c).coeff(k);
    }
    ++block;
  }
  MatrixQ ker = kernel(system);
  std::vector<MatrixK> out;
  for (Eigen::Index v = 0; v < ker.cols(); ++v) {
    MatrixK m = kmatrix(f.a, f.b, zeros<Rational>(n, n));
    for (Eigen::Index idx = 0; idx < unknowns; ++idx) {
      if (ker(idx, v) == 0) continue;
      m = m + unit(idx) * BiquadQ(ker(idx, v));
    }
    out.push_back(m);
  }
  return out;
}

std::vector<MatrixK> quaternion_display_basis(const Rational& a, const Rational& b) {
  auto z = [&] { return kmatrix(a, b, zeros<Rational>(2, 2)); };
  MatrixK id = kmatrix(a, b, identity<Rational>(2));
  MatrixK i = z(), j = z(), k = z();
  i(0, 0) = kelem(a, b, {0, 1, 0, 0});
  i(1, 1) = kelem(a, b, {0, -1, 0, 0});
  j(0, 1) = kelem(a, b, {0, 0, 1, 0});
  j(1, 0) = kelem(a, b, {0, 0, 1, 0});
  k(0, 1) = kelem(a, b, {0, 0, 0, 1});
  k(1, 0) = kelem(a, b, {0, 0, 0, -1});
  return {id, i, j, k};
}

bool same_span(const std::vector<MatrixK>& x, const std::vector<MatrixK>& y) {
  auto flatten = [](const std::vector<MatrixK>& fam) {
    if (fam.empty()) return MatrixQ(0, 0);
    const Eigen::Index n = fam[0].rows() * fam[0].cols() * 4;
    MatrixQ m(n, static_cast<Eigen::Index>(fam.size()));
    for (std::size_t v = 0; v < fam.size(); ++v)
      for (Eigen::Index e = 0; e < fam[v].size(); ++e)
        for (int k = 0; k < 4; ++k) m(e * 4 + k, static_cast<Eigen::Index>(v)) = fam[v](e).coeff(k);
    return m;
  };
  MatrixQ mx = flatten(x), my = flatten(y);
  if (mx.rows() != my.rows()) return false;
  MatrixQ both(mx.rows(), mx.cols() + my.cols());
  both << mx, my;
  Eigen::Index r = rank(both);
  return r == rank(mx) && r == rank(my);
}

FactorSet2 connecting_partial(const Cocycle1& f) {
  for (const auto& v : f.values) {
    if (!is_identity(mul(transpose(v), v))) {
      throw ArithmeticError("representative is not an orthogonal lift");
    }
  }
  return factor_set_from_lifts(f);
}

FactorSet2 connecting_delta(const Cocycle1& f) {
  const Eigen::Index n = f.dim();
  if (n % 2 != 0) throw DimensionError("symplectic lifts need even size");
  MatrixK k = kmatrix(f.a, f.b, to_rational(form_K(n / 2).gram()));
  for (const auto& v : f.values) {
    if (!sign_ratio(mul(mul(transpose(v), k), v), k)) {
      throw ArithmeticError("representative is not a symplectic similitude with multiplier +-1");
    }
  }
  return factor_set_from_lifts(f);
}

Cocycle1 kronecker_cocycle(const Cocycle1& eta, const Cocycle1& xi) {
  if (eta.a != xi.a || eta.b != xi.b) throw ArithmeticError("cocycles over different biquadratic rings");
  Cocycle1 out;
  out.target = CocycleTarget::ProjectiveSymplectic;
  out.a = xi.a;
  out.b = xi.b;
  out.degenerate_quotient = eta.degenerate_quotient || xi.degenerate_quotient;
  for (std::size_t k = 0; k < 4; ++k) out.values[k] = kronecker(eta.values[k], xi.values[k]);
  return out;
}

bool product_identity_check(const Cocycle1& eta, const Cocycle1& xi) {
  FactorSet2 lhs = connecting_delta(kronecker_cocycle(eta, xi));
  FactorSet2 rhs = connecting_delta(xi) * connecting_partial(eta);
  return factor_set_equivalent(lhs, rhs);
}

bool factor_set_equivalent(const FactorSet2& f, const FactorSet2& g) {
  // Signs are their own inverses, so f * g^{-1} = f * g.
  FactorSet2 q = f * g;
  for (int bits = 0; bits < 16; ++bits) {
    if (coboundary(sign_map(bits)) == q) return true;
  }
  return false;
}

bool determinant_coboundary_check(const Cocycle1& f) {
  if (f.dim() % 2 == 0) throw DimensionError("determinant coboundary applies to odd sizes");
  std::array<int, 4> m{};
  for (const auto& s : klein_group()) {
    BiquadQ d = determinant(f(s));
    if (d == BiquadQ(1)) m[static_cast<std::size_t>(s.index())] = 1;
    else if (d == BiquadQ(-1)) m[static_cast<std::size_t>(s.index())] = -1;
    else return false;
  }
  return connecting_partial(f) == coboundary(m);
}

Cocycle1 sign_cocycle(const Rational& a, const Rational& b) {
  Cocycle1 f = trivial_cocycle(a, b, 3, CocycleTarget::ProjectiveOrthogonal);
  for (const auto& s : klein_group()) {
    MatrixQ d = zeros<Rational>(3, 3);
    d(0, 0) = s.sign_a;
    d(1, 1) = s.sign_b;
    d(2, 2) = s.sign_a * s.sign_b;
    f.values[static_cast<std::size_t>(s.index())] = kmatrix(a, b, d);
  }
  return f;
}

bool CocycleSuite::passed() const {
  return pairs_passing == 16 && fixed_dim == 4 && display_span && product_identity && product_identity_chi &&
         determinant_coboundary;
}

CocycleSuite cocycle_suite(const Rational& a, const Rational& b) {
  CocycleSuite s;
  s.a = a;
  s.b = b;
  Cocycle1 t = t_cocycle(a, b);
  s.degenerate_quotient = t.degenerate_quotient;
  s.pairs_passing = cocycle_pairs_passing(t);
  auto fixed = fixed_algebra(t);
  s.fixed_dim = fixed.size();
  s.display_span = same_span(fixed, quaternion_display_basis(a, b));
  s.product_identity = product_identity_check(retarget(t, CocycleTarget::ProjectiveOrthogonal), t);
  s.product_identity_chi = product_identity_check(chi_cocycle(a, b, 2), t);
  Cocycle1 sign = sign_cocycle(a, b);
  s.determinant_coboundary =
      determinant_coboundary_check(sign) && determinant_coboundary_check(relift(sign, {1, -1, -1, 1}));
  s.delta = connecting_delta(t);
  s.delta_trivial = factor_set_equivalent(s.delta, FactorSet2::ones());
  return s;
}

std::string to_string(const CocycleSuite& s) {
  auto yes = [](bool x) { return x ? "pass" : "FAIL"; };
  std::string out = "(" + to_string(s.a) + ", " + to_string(s.b) + ")";
  if (s.degenerate_quotient) out += " [square parameter: formal Klein quotient]";
  out += "\n  " + std::to_string(s.pairs_passing) + "/16 cocycle pairs, product identity: " + yes(s.product_identity) + "\n";
  out += "  fixed algebra dimension: " + std::to_string(s.fixed_dim) + ", quaternion basis: " + yes(s.display_span) + "\n";
  out += "  product identity with I_2 (x) T: " + std::string(yes(s.product_identity_chi)) + "\n";
  out += "  determinant coboundary (odd orthogonal): " + std::string(yes(s.determinant_coboundary)) + "\n";
  out += "  delta_2(T): " + to_string(s.delta) + (s.delta_trivial ? " (coboundary)" : " (not a coboundary)") + "\n";
  return out;
}

}  // namespace quatbend
