#include <doctest.h>

#include "quatbend/modp/certificate.hpp"
#include "quatbend/surface/datum.hpp"

#include <random>

using namespace quatbend;

namespace {

RightRegularModel standard_model() {
  QuaternionAlgebra A(3, -1);
  return RightRegularModel(OrderBasis::standard(A), A.i(), 1);
}

Representation datum_rep(const RightRegularModel& m, const std::string& file) {
  return assemble(load_datum(std::string(QUATBEND_DATA_DIR) + "/" + file), m);
}

MatrixFp fp(std::initializer_list<std::initializer_list<int>> rows, std::int64_t p) {
  MatrixFp m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index r = 0;
  for (const auto& row : rows) {
    Eigen::Index c = 0;
    for (int v : row) m(r, c++) = Fp(v, p);
    ++r;
  }
  return m;
}

}  // namespace

TEST_CASE("symplectic group orders") {
  CHECK(sp_order(1, 3) == 24);
  CHECK(sp_order(2, 3) == 51840);
  CHECK(sp_order(4, 3) == Integer(43046721) * 8 * 80 * 728 * 6560);
  CHECK(sp_order(1, 5) == 120);
}

TEST_CASE("stabiliser chain against breadth-first closure") {
  for (int n : {1, 2}) {
    auto gens = standard_sp_generators(n, 3);
    MatrixFp k = to_fp(form_K(n).gram(), 3);
    for (const auto& g : gens) CHECK(is_symplectic(g, k));
    GroupOrderResult r = group_order(gens, 3);
    REQUIRE(r.decided);
    CHECK(r.order == sp_order(n, 3));
    CHECK(closure_order(gens, 3) == r.order.convert_to<std::uint64_t>());
  }
  auto sl25 = standard_sp_generators(1, 5);
  CHECK(group_order(sl25, 5).order == 120);
  CHECK(closure_order(sl25, 5) == 120u);
}

TEST_CASE("small and trivial groups") {
  MatrixFp id = to_fp(identity<Integer>(4), 5);
  CHECK(group_order({id}, 5).order == 1);
  CHECK(closure_order({id}, 5) == 1u);
  // Upper unitriangular transvection generates a cyclic group of order p.
  MatrixFp t = fp({{1, 1}, {0, 1}}, 7);
  CHECK(group_order({t}, 7).order == 7);
  CHECK(matrix_order(t, 100) == 7u);
  CHECK_FALSE(matrix_order(t, 6));
  // Orders of random subgroups agree with closure and divide sp_order.
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> coin(0, 5);
  auto all = standard_sp_generators(2, 3);
  for (int trial = 0; trial < 12; ++trial) {
    std::vector<MatrixFp> sub;
    for (const auto& g : all)
      if (coin(rng) < 2) sub.push_back(g);
    if (sub.empty()) continue;
    GroupOrderResult r = group_order(sub, 3);
    CHECK(sp_order(2, 3) % r.order == 0);
    CHECK(closure_order(sub, 3) == r.order.convert_to<std::uint64_t>());
  }
}

TEST_CASE("budgets produce undecided, never a guessed order") {
  GroupBudget tiny;
  tiny.max_points = 100;
  GroupOrderResult r = group_order(standard_sp_generators(2, 5), 5, std::nullopt, tiny);
  CHECK_FALSE(r.decided);
  CHECK(r.reason.find("exceeds budget") != std::string::npos);
  GroupBudget sifts;
  sifts.max_sifts = 3;
  CHECK_FALSE(group_order(standard_sp_generators(2, 3), 3, std::nullopt, sifts).decided);
}

TEST_CASE("reduction of the (3,-1) model") {
  RightRegularModel m = standard_model();
  const auto& A = m.algebra();
  Presentation p{{"g"}, std::nullopt};
  Representation rep(p, {{"g", rho(m, A.element({2, 1, 0, 0}))}}, m.form());
  ReducedRep r = reduce(rep, 5);
  CHECK(r.gens[0] == fp({{2, 2, 0, 0}, {4, 2, 0, 0}, {0, 0, 2, 3}, {0, 0, 1, 2}}, 5));
  for (std::int64_t bad : {2, 3}) {
    try {
      reduce(rep, bad);
      FAIL("bad prime accepted");
    } catch (const std::invalid_argument& e) {
      CHECK(std::string(e.what()).find("bad reduction prime") != std::string::npos);
    }
  }
  CHECK_THROWS_AS(reduce(rep, 9), std::invalid_argument);

  Representation id(p, {{"g", identity<Integer>(4)}}, m.form());
  CHECK(is_identity(reduce(id, 7).gens[0]));
  CHECK_FALSE(is_surjective(reduce(id, 7)));
}

TEST_CASE("reduction is a homomorphism") {
  RightRegularModel m = standard_model();
  const auto& A = m.algebra();
  const std::vector<Quaternion> gens{A.element({2, 1, 0, 0}), A.j(), A.element({2, 0, 0, 1})};
  std::mt19937 rng(99);
  std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
  for (int trial = 0; trial < 20; ++trial) {
    MatrixZ x = rho(m, gens[pick(rng)] * gens[pick(rng)]);
    MatrixZ y = rho(m, gens[pick(rng)] * gens[pick(rng)] * gens[pick(rng)]);
    for (std::int64_t p : {5, 7, 11}) CHECK(to_fp(mul(x, y), p) == mul(to_fp(x, p), to_fp(y, p)));
  }
}

TEST_CASE("unbent diagonal-type images are proper") {
  RightRegularModel m = standard_model();
  Representation rep = datum_rep(m, "free_pell_ij.datum");
  for (std::int64_t p : {5, 7, 11}) {
    PrimeVerdict v = classify(reduce(rep, p));
    CHECK(v.kind == PrimeVerdict::Kind::proper);
    CHECK(v.order < sp_order(2, p));
    CHECK(sp_order(1, p) % v.order == 0);  // inside the norm-one units mod p, a copy of SL(2, p)
  }
  Representation degenerate = datum_rep(m, "free_pell_j.datum");
  CHECK(classify(reduce(degenerate, 5)).order == 12);
  CHECK(closure_order(reduce(degenerate, 5).gens, 5) == 12u);
}

TEST_CASE("density certificates") {
  RightRegularModel m = standard_model();
  Representation rep = datum_rep(m, "free_pell_j.datum");
  DensityCertificate c = bad_prime_set(rep, 13);
  REQUIRE(c.primes.size() == 5);
  CHECK(c.primes[0].kind == PrimeVerdict::Kind::skipped);
  CHECK(c.omega == std::vector<std::int64_t>{5, 7, 11, 13});
  CHECK(c.verdict == "not-certified");
  CHECK(c.divisors == std::vector<Integer>{6, 6});

  DensityCertificate empty = bad_prime_set(rep, 4);
  CHECK(empty.verdict == "undecided");
  CHECK(empty.omega.empty());

  std::string text = to_text(c);
  CHECK(text.find("5: proper(12)") != std::string::npos);
  CHECK(text.find("3: skipped(") != std::string::npos);
  CHECK(text.find("omega: {5, 7, 11, 13}") != std::string::npos);
  CHECK(to_text(bad_prime_set(rep, 13)) == text);
  SweepOptions threaded;
  threaded.threads = 3;
  CHECK(to_text(bad_prime_set(rep, 13, threaded)) == text);
  CHECK(to_json(c).find("\"verdict\": \"not-certified\"") != std::string::npos);
}

TEST_CASE("identity representation: proper at 5, not certified") {
  RightRegularModel m = standard_model();
  Representation id = datum_rep(m, "identity.datum");
  DensityCertificate c = bad_prime_set(id, 5);
  REQUIRE(c.primes.size() == 2);
  CHECK(c.primes[1].kind == PrimeVerdict::Kind::proper);
  CHECK(c.primes[1].order == 1);
  CHECK(c.verdict == "not-certified");
}

TEST_CASE("orbit separation") {
  RightRegularModel m = standard_model();
  SurfaceDatum d = load_datum(std::string(QUATBEND_DATA_DIR) + "/free_pell_ij.datum");
  Representation rep = assemble(d, m);
  const CurveDatum& c = d.curve("gamma");

  OrbitSeparation same = orbit_separation(rep, c, identity<Integer>(4), 5);
  CHECK(same.k == 1);
  CHECK(same.reductions_agree);
  CHECK(same.conclusion == "not separated");
  CHECK(compare_representations(rep, rep, 7).conclusion == "not separated");

  BSearchOptions o;
  o.height = 1;
  auto hits = b_search(m, make_pell_element(m.algebra().element({2, 1, 0, 0})), o).hits;
  REQUIRE_FALSE(hits.empty());
  OrbitSeparation s = orbit_separation(rep, c, hits.front().matrix, 5);
  CHECK(s.reductions_agree);
  CHECK(is_identity(to_fp(hits.front().matrix, 5)) == (s.k == 1));
  // rep_{B^k} is rep mod 5, which is proper there.
  CHECK(s.lines[0].right.kind == PrimeVerdict::Kind::proper);
  if (s.lines[0].left.kind == PrimeVerdict::Kind::surjective) CHECK(s.conclusion == "distinct orbits");

  CHECK_THROWS_AS(orbit_separation(rep, c, hits.front().matrix, 3), std::invalid_argument);
  SeparationOptions tight;
  tight.order_limit = 1;
  if (s.k > 1) CHECK_THROWS_AS(orbit_separation(rep, c, hits.front().matrix, 5, tight), std::runtime_error);
}

TEST_CASE("fingerprints") {
  RightRegularModel m = standard_model();
  Representation a = datum_rep(m, "free_pell_j.datum");
  Representation b = datum_rep(m, "free_pell_ij.datum");
  CHECK(fingerprint(a).size() == 16);
  CHECK(fingerprint(a) == fingerprint(a));
  CHECK(fingerprint(a) != fingerprint(b));
}
