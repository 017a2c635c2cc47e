#include "quatbend/quaternion/quaternion.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

namespace quatbend {

std::string to_string(const Quaternion& q) {
  static const char* units[] = {"", "i", "j", "ij"};
  std::string out;
  for (int k = 0; k < 4; ++k) {
    if (q[k] == 0) continue;
    std::string c = to_string(q[k]);
    bool neg = q[k] < 0;
    if (!out.empty()) out += neg ? " - " : " + ";
    else if (neg) out += "-";
    std::string mag = neg ? c.substr(1) : c;
    if (k == 0) out += mag;
    else if (mag == "1") out += units[k];
    else out += mag + "*" + units[k];
  }
  return out.empty() ? "0" : out;
}

std::ostream& operator<<(std::ostream& os, const Quaternion& q) { return os << to_string(q); }

std::string place_to_string(Place p) { return p == kInfinity ? "inf" : std::to_string(p); }

std::vector<Place> ramification_set(const Rational& a, const Rational& b) {
  if (a == 0 || b == 0) throw ArithmeticError("quaternion algebra parameters must be nonzero");
  std::set<std::int64_t> primes{2};
  for (const Integer& part : {num(a), den(a), num(b), den(b)}) {
    for (auto p : prime_divisors(part)) primes.insert(p);
  }
  std::vector<Place> out;
  if (hilbert_symbol(a, b, kInfinity) == -1) out.push_back(kInfinity);
  for (auto p : primes) {
    if (hilbert_symbol(a, b, p) == -1) out.push_back(p);
  }
  return out;
}

QuaternionAlgebra::QuaternionAlgebra(Rational a, Rational b)
    : a_(std::move(a)), b_(std::move(b)), ramified_(ramification_set(a_, b_)) {}

void QuaternionAlgebra::require_indefinite_division() const {
  if (!is_indefinite()) {
    throw AlgebraError("algebra (" + to_string(a_) + "," + to_string(b_) + ") is not indefinite");
  }
  if (!is_division()) {
    throw AlgebraError("algebra (" + to_string(a_) + "," + to_string(b_) + ") is not a division algebra");
  }
}

OrderBasis::OrderBasis(const QuaternionAlgebra& algebra, std::array<Quaternion, 4> basis)
    : algebra_(algebra), e_(std::move(basis)) {
  for (const auto& e : e_) {
    if (!algebra_.contains(e)) throw AlgebraError("order basis element outside the algebra");
  }
  if (e_[0] != algebra_.one()) throw AlgebraError("order basis must start with 1");
  MatrixQ m(4, 4);
  for (int c = 0; c < 4; ++c)
    for (int r = 0; r < 4; ++r) m(r, c) = e_[static_cast<std::size_t>(c)][r];
  try {
    to_basis_ = inverse(m);
  } catch (const ArithmeticError&) {
    throw AlgebraError("order basis does not span the algebra");
  }
}

OrderBasis OrderBasis::standard(const QuaternionAlgebra& algebra) {
  return OrderBasis(algebra, {algebra.one(), algebra.i(), algebra.j(), algebra.ij()});
}

std::array<Rational, 4> OrderBasis::coordinates(const Quaternion& q) const {
  if (!algebra_.contains(q)) throw ArithmeticError("element outside the algebra");
  std::array<Rational, 4> out;
  for (int r = 0; r < 4; ++r) {
    Rational acc = 0;
    for (int c = 0; c < 4; ++c) acc += to_basis_(r, c) * q[c];
    out[static_cast<std::size_t>(r)] = acc;
  }
  return out;
}

Quaternion OrderBasis::combine(const std::array<Rational, 4>& c) const {
  Quaternion q = Quaternion::scalar(algebra_.a(), algebra_.b(), 0);
  for (int k = 0; k < 4; ++k) q = q + c[static_cast<std::size_t>(k)] * e_[static_cast<std::size_t>(k)];
  return q;
}

bool OrderBasis::contains(const Quaternion& q) const {
  auto c = coordinates(q);
  return std::all_of(c.begin(), c.end(), [](const Rational& x) { return is_integral(x); });
}

std::array<std::array<std::array<Rational, 4>, 4>, 4> OrderBasis::structure_constants() const {
  std::array<std::array<std::array<Rational, 4>, 4>, 4> out;
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t s = 0; s < 4; ++s) out[r][s] = coordinates(e_[r] * e_[s]);
  return out;
}

bool order_closure_check(const OrderBasis& basis) {
  for (const auto& row : basis.structure_constants())
    for (const auto& entry : row)
      for (const auto& c : entry)
        if (!is_integral(c)) return false;
  return true;
}

OrderBasis parse_order_basis(const std::string& text) {
  std::istringstream in(text);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<std::string> tokens;
    std::string tok;
    while (ls >> tok) tokens.push_back(tok);
    if (!tokens.empty()) rows.push_back(tokens);
  }
  if (rows.size() != 5 || rows[0].size() != 2) {
    throw std::invalid_argument("order file needs a header 'a b' and four basis lines");
  }
  QuaternionAlgebra algebra(parse_rational(rows[0][0]), parse_rational(rows[0][1]));
  std::array<Quaternion, 4> e;
  for (std::size_t k = 0; k < 4; ++k) {
    if (rows[k + 1].size() != 4) throw std::invalid_argument("order basis line needs four rationals");
    e[k] = algebra.element({parse_rational(rows[k + 1][0]), parse_rational(rows[k + 1][1]),
                            parse_rational(rows[k + 1][2]), parse_rational(rows[k + 1][3])});
  }
  return OrderBasis(algebra, e);
}

OrderBasis load_order_basis(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open order file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_order_basis(buf.str());
}

BiquadQ PellElement::lambda() const {
  return BiquadQ(gamma.a(), gamma.b(), {gamma[0], gamma[1], 0, 0});
}

PellElement make_pell_element(const Quaternion& gamma) {
  if (gamma[2] != 0 || gamma[3] != 0) throw AlgebraError("Pell element must lie in Q(i)");
  if (gamma[1] == 0) throw AlgebraError("Pell element is central");
  if (gamma.nrd() != 1) throw AlgebraError("Pell element must have reduced norm 1");
  return {gamma};
}

std::vector<PellElement> pell_search(const QuaternionAlgebra& algebra, std::int64_t height) {
  const Rational& a = algebra.a();
  if (!is_integral(a) || a <= 0) throw AlgebraError("Pell search needs a positive integer a");
  if (is_perfect_square(num(a))) throw AlgebraError("Pell search needs a nonsquare a");
  std::vector<PellElement> out;
  for (std::int64_t x0 = 1; x0 <= height; ++x0) {
    // a x1^2 = x0^2 - 1
    Rational rhs = Rational(Integer(x0) * x0 - 1) / a;
    if (!is_integral(rhs) || rhs <= 0) continue;
    Integer sq = num(rhs);
    if (!is_perfect_square(sq)) continue;
    Integer x1 = boost::multiprecision::sqrt(sq);
    out.push_back({algebra.element({Rational(x0), Rational(x1), 0, 0})});
  }
  return out;
}

MatrixK matrix_model(const Quaternion& q) {
  const Rational& a = q.a();
  const Rational& b = q.b();
  MatrixK m(2, 2);
  m(0, 0) = BiquadQ(a, b, {q[0], q[1], 0, 0});
  m(0, 1) = BiquadQ(a, b, {0, 0, q[2], q[3]});
  m(1, 0) = BiquadQ(a, b, {0, 0, q[2], -q[3]});
  m(1, 1) = BiquadQ(a, b, {q[0], -q[1], 0, 0});
  return m;
}

}  // namespace quatbend
