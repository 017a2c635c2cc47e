#include "quatbend/symplectic/model.hpp"

#include "quatbend/exact/text.hpp"

#include <algorithm>
#include <bit>
#include <future>
#include <optional>
#include <sstream>

namespace quatbend {

MatrixQ beta_gram_rational(const OrderBasis& order, const Quaternion& mu) {
  if (!order.algebra().contains(mu)) throw AlgebraError("mu lies outside the algebra");
  MatrixQ g(4, 4);
  for (int r = 0; r < 4; ++r)
    for (int s = 0; s < 4; ++s) g(r, s) = (mu * order[r] * order[s].conj()).trd();
  for (int r = 0; r < 4; ++r)
    for (int s = 0; s < 4; ++s)
      if (g(r, s) != -g(s, r)) throw AlgebraError("pairing is not skew: mu must be a pure quaternion");
  return g;
}

RightRegularModel::RightRegularModel(OrderBasis order, Quaternion mu, int copies)
    : order_(std::move(order)), mu_(std::move(mu)), copies_(copies), form_(form_K(1)) {
  if (copies_ < 1) throw AlgebraError("model needs at least one copy");
  if (!mu_.is_pure()) throw AlgebraError("mu must be a pure quaternion");
  if (mu_.nrd() == 0) throw AlgebraError("mu must be invertible");
  if (!order_closure_check(order_)) throw AlgebraError("order basis is not closed under multiplication");
  MatrixQ g = beta_gram_rational(order_, mu_);
  MatrixZ gz;
  try {
    gz = to_integer(g);
  } catch (const ArithmeticError&) {
    throw AlgebraError("pairing is not integral on the order");
  }
  form_ = SkewFormZ(kronecker(identity<Integer>(copies_), gz));
}

SkewFormZ beta_gram(const RightRegularModel& model) { return model.form(); }

MatrixQ right_action(const OrderBasis& order, const Quaternion& g) {
  Quaternion gc = g.conj();
  MatrixQ m(4, 4);
  for (int c = 0; c < 4; ++c) {
    auto coords = order.coordinates(order[c] * gc);
    for (int r = 0; r < 4; ++r) m(r, c) = coords[static_cast<std::size_t>(r)];
  }
  return m;
}

MatrixZ rho(const RightRegularModel& model, const std::vector<Quaternion>& per_copy) {
  if (static_cast<int>(per_copy.size()) != model.copies()) {
    throw AlgebraError("need one quaternion per model copy");
  }
  MatrixZ out = zeros<Integer>(model.dim(), model.dim());
  for (int k = 0; k < model.copies(); ++k) {
    const Quaternion& g = per_copy[static_cast<std::size_t>(k)];
    if (!model.algebra().contains(g)) throw AlgebraError("element outside the algebra");
    if (g.nrd() != 1) throw AlgebraError("element " + to_string(g) + " does not have reduced norm 1");
    if (!model.order().contains(g)) throw AlgebraError("element " + to_string(g) + " is not in the order");
    out.block(4 * k, 4 * k, 4, 4) = to_integer(right_action(model.order(), g));
  }
  return out;
}

MatrixZ rho(const RightRegularModel& model, const Quaternion& g) {
  return rho(model, std::vector<Quaternion>(static_cast<std::size_t>(model.copies()), g));
}

namespace {

std::array<Rational, 4> four(const std::vector<std::string>& row, std::size_t from) {
  if (row.size() != from + 4) throw std::invalid_argument("expected four rationals after '" + row[0] + "'");
  return {parse_rational(row[from]), parse_rational(row[from + 1]), parse_rational(row[from + 2]),
          parse_rational(row[from + 3])};
}

}  // namespace

RightRegularModel parse_model(const std::string& text) {
  std::optional<QuaternionAlgebra> algebra;
  std::vector<std::array<Rational, 4>> basis;
  bool standard = false;
  std::optional<std::array<Rational, 4>> mu;
  int copies = 1;
  for (const auto& row : tokenize(text)) {
    const std::string& key = row[0];
    if (key == "algebra") {
      if (row.size() != 3) throw std::invalid_argument("algebra line needs 'algebra a b'");
      algebra.emplace(parse_rational(row[1]), parse_rational(row[2]));
    } else if (key == "basis") {
      if (row.size() == 2 && row[1] == "standard") standard = true;
      else basis.push_back(four(row, 1));
    } else if (key == "mu") {
      mu = four(row, 1);
    } else if (key == "copies") {
      if (row.size() != 2) throw std::invalid_argument("copies line needs one integer");
      copies = std::stoi(row[1]);
    } else {
      throw std::invalid_argument("unknown model key: " + key);
    }
  }
  if (!algebra) throw std::invalid_argument("model file lacks an algebra line");
  if (!mu) mu = std::array<Rational, 4>{0, 1, 0, 0};
  if (!standard && basis.empty()) standard = true;
  if (standard && !basis.empty()) throw std::invalid_argument("model file mixes standard and explicit basis");
  OrderBasis order = OrderBasis::standard(*algebra);
  if (!standard) {
    if (basis.size() != 4) throw std::invalid_argument("explicit basis needs four lines");
    order = OrderBasis(*algebra, {algebra->element(basis[0]), algebra->element(basis[1]),
                                  algebra->element(basis[2]), algebra->element(basis[3])});
  }
  return RightRegularModel(order, algebra->element(*mu), copies);
}

RightRegularModel load_model(const std::string& path) { return parse_model(read_file(path)); }

namespace {

using QuaternionK = QuaternionT<BiquadQ>;

}  // namespace

CentralizerFrame eigenframe(const RightRegularModel& model, const PellElement& gamma) {
  const Rational& a = model.algebra().a();
  const Rational& b = model.algebra().b();
  make_pell_element(gamma.gamma);
  if (a <= 0 || is_rational_square(a)) throw AlgebraError("eigenframe needs a positive nonsquare a");
  const Quaternion& mu = model.mu();
  if (mu[0] != 0 || mu[2] != 0 || mu[3] != 0) throw AlgebraError("eigenframe needs mu in Q i");

  auto k = [&](const Rational& c0, const Rational& c1) { return BiquadQ(a, b, {c0, c1, 0, 0}); };
  const BiquadQ zero = k(0, 0), one = k(1, 0);
  const BiquadQ ka = k(a, 0), kb = k(b, 0);
  // y = y2 j + y3 ij with y^2 = b y2^2 - a b y3^2 = 1; pure and orthogonal to i.
  const BiquadQ y2 = k((1 + 1 / b) / 2, 0);
  const BiquadQ y3 = k(0, (1 / b - 1) / (2 * a));  // (1/b - 1) / (2 sqrt a)
  QuaternionK y(ka, kb, {zero, zero, y2, y3});
  QuaternionK unit(ka, kb, {one, zero, zero, zero});
  const BiquadQ half = k(Rational(1, 2), 0);
  QuaternionK e = half * (unit + y);
  QuaternionK f = unit - e;
  // (1 -+ i/sqrt a)/2: i/sqrt a = (sqrt a / a) i.
  const BiquadQ inv_sqrt_a = k(0, 1 / a);
  QuaternionK minus(ka, kb, {half, -half * inv_sqrt_a, zero, zero});
  QuaternionK plus(ka, kb, {half, half * inv_sqrt_a, zero, zero});
  const std::array<QuaternionK, 4> vectors{e * minus, e * plus, f * minus, f * plus};

  const MatrixQ& to_basis = model.order().to_basis_matrix();
  const Eigen::Index n = model.dim();
  MatrixK frame(n, n);
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c) frame(r, c) = zero;
  for (int copy = 0; copy < model.copies(); ++copy) {
    for (int v = 0; v < 4; ++v) {
      for (int r = 0; r < 4; ++r) {
        BiquadQ acc = zero;
        for (int s = 0; s < 4; ++s) acc += BiquadQ(a, b, {to_basis(r, s), 0, 0, 0}) * vectors[static_cast<std::size_t>(v)][s];
        frame(4 * copy + r, 4 * copy + v) = acc;
      }
    }
  }

  auto lift_matrix = [&](const MatrixZ& m) {
    MatrixK out(m.rows(), m.cols());
    for (Eigen::Index r = 0; r < m.rows(); ++r)
      for (Eigen::Index c = 0; c < m.cols(); ++c) out(r, c) = BiquadQ(a, b, {Rational(m(r, c)), 0, 0, 0});
    return out;
  };

  CentralizerFrame out;
  out.gamma = gamma;
  out.lambda = gamma.lambda();
  out.frame = frame;
  try {
    out.frame_inverse = inverse(frame);
  } catch (const ArithmeticError&) {
    throw AlgebraError("eigenframe vectors are dependent");
  }
  out.diagonal = mul(mul(out.frame_inverse, lift_matrix(rho(model, gamma.gamma))), frame);
  MatrixK ft = frame.transpose();
  out.transformed_form = mul(mul(ft, lift_matrix(model.form().gram())), frame);
  out.blocks = 2 * model.copies();

  // Re-verify: diagonal with lambda^{+-1}, and blocks pairwise orthogonal.
  const BiquadQ lambda_inv = out.lambda.inverse();
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c) {
      BiquadQ want = r != c ? zero : (r % 2 == 0 ? out.lambda : lambda_inv);
      if (out.diagonal(r, c) != want) throw AlgebraError("eigenframe does not diagonalise the Pell element");
      if (r / 2 != c / 2 && !out.transformed_form(r, c).is_zero()) {
        throw AlgebraError("eigenframe blocks are not orthogonal");
      }
    }
  return out;
}

bool genericity_check(const MatrixZ& b, const CentralizerFrame& frame) {
  const Eigen::Index n = b.rows();
  const BiquadQ& ref = frame.lambda;
  MatrixK bk(n, n);
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c) bk(r, c) = BiquadQ(ref.a(), ref.b(), {Rational(b(r, c)), 0, 0, 0});
  MatrixK bp = mul(mul(frame.frame_inverse, bk), frame.frame);
  const int m = frame.blocks;
  // support[i]: bit mask of blocks j with a nonzero entry in rows of j, columns of i.
  std::vector<unsigned> support(static_cast<std::size_t>(m), 0);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c)
          if (!bp(2 * j + r, 2 * i + c).is_zero()) support[static_cast<std::size_t>(i)] |= 1u << j;
  const unsigned full = (1u << m) - 1;
  for (unsigned set = 1; set < full; ++set) {
    unsigned image = 0;
    for (int i = 0; i < m; ++i)
      if (set & (1u << i)) image |= support[static_cast<std::size_t>(i)];
    if (std::popcount(image) <= std::popcount(set)) return false;
  }
  return true;
}

namespace {

struct Candidate {
  std::int64_t height;
  std::vector<std::int64_t> entries;
  std::vector<std::int64_t> coords;
};

bool candidate_less(const Candidate& x, const Candidate& y) {
  if (x.height != y.height) return x.height < y.height;
  return x.entries < y.entries;
}

// Symplectic elements among coordinates with the given leading value.
std::vector<Candidate> scan(const std::vector<MatrixI64>& basis, const MatrixI64& gram, std::int64_t h,
                            std::int64_t lead, std::uint64_t limit, std::uint64_t& visited) {
  const std::size_t d = basis.size();
  const Eigen::Index n = gram.rows();
  std::vector<Candidate> out;
  std::vector<std::int64_t> c(d, -h);
  c[0] = lead;
  visited = 0;
  while (true) {
    if (visited >= limit) break;
    ++visited;
    MatrixI64 m = MatrixI64::Zero(n, n);
    for (std::size_t k = 0; k < d; ++k)
      if (c[k] != 0) m += c[k] * basis[k];
    if (is_symplectic(m, gram)) {
      Candidate cand;
      cand.height = 0;
      for (auto v : c) cand.height = std::max(cand.height, v < 0 ? -v : v);
      cand.entries.reserve(static_cast<std::size_t>(n * n));
      for (Eigen::Index r = 0; r < n; ++r)
        for (Eigen::Index col = 0; col < n; ++col) cand.entries.push_back(m(r, col));
      cand.coords = c;
      out.push_back(std::move(cand));
    }
    std::size_t k = d;
    while (k > 1) {
      --k;
      if (c[k] < h) {
        ++c[k];
        break;
      }
      c[k] = -h;
      if (k == 1) return out;
    }
    if (d == 1) break;
  }
  return out;
}

}  // namespace

BSearchResult b_search(const RightRegularModel& model, const PellElement& gamma, const BSearchOptions& options) {
  if (options.height < 0) throw std::invalid_argument("search height must be nonnegative");
  CentralizerFrame frame = eigenframe(model, gamma);
  MatrixZ g = rho(model, gamma.gamma);
  BSearchResult result;
  result.lattice = commutant_lattice({g});
  const std::int64_t h = options.height;
  if (h == 0) return result;

  std::vector<MatrixI64> basis;
  for (const auto& v : result.lattice) basis.push_back(to_int64(v));
  MatrixI64 gram = to_int64(model.form().gram());
  const std::size_t d = basis.size();
  const std::uint64_t side = static_cast<std::uint64_t>(2 * h + 1);
  // Total (2h+1)^d, saturating.
  std::uint64_t total = 1;
  for (std::size_t k = 0; k < d && total <= options.candidate_budget; ++k) total *= side;
  const bool fits = total <= options.candidate_budget;
  const std::uint64_t per_lead = fits ? total / side : options.candidate_budget / side;

  std::vector<std::future<std::pair<std::vector<Candidate>, std::uint64_t>>> jobs;
  std::vector<std::pair<std::vector<Candidate>, std::uint64_t>> done;
  const unsigned threads = std::max(1u, options.threads);
  for (std::int64_t lead = -h; lead <= h; ++lead) {
    auto work = [&, lead] {
      std::uint64_t visited = 0;
      auto found = scan(basis, gram, h, lead, std::max<std::uint64_t>(per_lead, 1), visited);
      return std::make_pair(std::move(found), visited);
    };
    if (threads == 1) {
      done.push_back(work());
    } else {
      jobs.push_back(std::async(std::launch::async, work));
      if (jobs.size() >= threads) {
        for (auto& j : jobs) done.push_back(j.get());
        jobs.clear();
      }
    }
  }
  for (auto& j : jobs) done.push_back(j.get());

  std::vector<Candidate> all;
  for (auto& [found, visited] : done) {
    result.enumerated += visited;
    for (auto& c : found) all.push_back(std::move(c));
  }
  result.truncated = !fits;
  result.symplectic_hits = all.size();
  std::sort(all.begin(), all.end(), candidate_less);

  for (auto& cand : all) {
    const Eigen::Index n = model.dim();
    MatrixZ m(n, n);
    for (Eigen::Index r = 0; r < n; ++r)
      for (Eigen::Index c = 0; c < n; ++c) m(r, c) = Integer(cand.entries[static_cast<std::size_t>(r * n + c)]);
    BendElement be;
    be.matrix = m;
    be.coords = cand.coords;
    be.height = cand.height;
    be.commutes = equal(mul(m, g), mul(g, m));
    be.symplectic = is_symplectic(m, model.form());
    be.generic = be.commutes && genericity_check(m, frame);
    if (be.commutes && be.symplectic && be.generic) result.hits.push_back(std::move(be));
  }
  return result;
}

}  // namespace quatbend
