#include <doctest.h>

#include "quatbend/surface/datum.hpp"

using namespace quatbend;

namespace {

RightRegularModel standard_model() {
  QuaternionAlgebra A(3, -1);
  return RightRegularModel(OrderBasis::standard(A), A.i(), 1);
}

Representation free_rep(const RightRegularModel& m, const Quaternion& g, const Quaternion& h) {
  Presentation p{{"g", "h"}, std::nullopt};
  return Representation(p, {{"g", rho(m, g)}, {"h", rho(m, h)}}, m.form());
}

CurveDatum nonseparating(const std::string& word, const std::string& stable) {
  CurveDatum c;
  c.name = "c";
  c.kind = CurveDatum::Kind::nonseparating;
  c.word = parse_word(word);
  c.stable = stable;
  return c;
}

MatrixZ first_bend(const RightRegularModel& m, const Quaternion& gamma) {
  BSearchOptions o;
  o.height = 1;
  auto r = b_search(m, make_pell_element(gamma), o);
  REQUIRE_FALSE(r.hits.empty());
  return r.hits.front().matrix;
}

}  // namespace

TEST_CASE("word parsing and reduction") {
  CHECK(to_string(parse_word("a b^-1 b a^{2}")) == "a^3");
  CHECK(parse_word("g g^-1").empty());
  CHECK(parse_word("1").empty());
  CHECK(to_string(inverse(parse_word("a b^2"))) == "b^-2 a^-1");
  CHECK(length(parse_word("a^3 b^-2")) == 5);
  CHECK_THROWS_AS(parse_word("a^x"), std::invalid_argument);
  CHECK_THROWS_AS(parse_word("a-b"), std::invalid_argument);
  CHECK(to_string(cyclic_reduce(parse_word("b a c b^-1"))) == "a c");
  CHECK(conjugate_in_free_group(parse_word("a b c"), parse_word("c a b")));
  CHECK(conjugate_in_free_group(parse_word("a b"), parse_word("x^-1 b a x")));
  CHECK_FALSE(conjugate_in_free_group(parse_word("a b"), parse_word("a b^-1")));
  // 4 letters, each followed by 3 admissible ones: 4 + 12 = 16.
  CHECK(reduced_words({"a", "b"}, 2).size() == 16);
}

TEST_CASE("evaluate words") {
  RightRegularModel m = standard_model();
  const auto& A = m.algebra();
  Representation rep = free_rep(m, A.element({2, 1, 0, 0}), A.j());
  CHECK(is_identity(evaluate_word(rep, {})));
  CHECK(is_identity(evaluate_word(rep, parse_word("g h g^-1 h h^-1 g g^-1 g h^-1 g^-1"))));
  CHECK(evaluate_word(rep, parse_word("g^2")) == mul(rep.image("g"), rep.image("g")));
  CHECK(mul(rep.image("h"), rep.image_inverse("h")) == identity<Integer>(4));
  CHECK_THROWS_AS(evaluate_word(rep, parse_word("x")), std::invalid_argument);
}

TEST_CASE("representation validation") {
  RightRegularModel m = standard_model();
  Presentation p{{"g"}, std::nullopt};
  MatrixZ bad = identity<Integer>(4);
  bad(0, 0) = 2;
  CHECK_THROWS_AS(Representation(p, {{"g", bad}}, m.form()), std::invalid_argument);
  CHECK_THROWS_AS(Representation(p, {}, m.form()), std::invalid_argument);
  CHECK_THROWS_AS(Representation(p, {{"g", identity<Integer>(2)}}, m.form()), std::invalid_argument);
}

TEST_CASE("relators") {
  RightRegularModel m = standard_model();
  const auto& A = m.algebra();
  Presentation torus = surface_presentation(1);
  CHECK(to_string(*torus.relator) == "a1 b1 a1^-1 b1^-1");
  Representation trivial(torus, {{"a1", identity<Integer>(4)}, {"b1", identity<Integer>(4)}}, m.form());
  CHECK(check_relator(trivial));
  // Commuting images: two powers of the same Pell element.
  Quaternion g = A.element({2, 1, 0, 0});
  Representation commuting(torus, {{"a1", rho(m, g)}, {"b1", rho(m, g * g)}}, m.form());
  CHECK(check_relator(commuting));
  CHECK_THROWS_AS(Representation(torus, {{"a1", rho(m, g)}, {"b1", rho(m, A.j())}}, m.form()), std::invalid_argument);
  CHECK_THROWS_AS(check_relator(free_rep(m, g, A.j())), std::invalid_argument);
}

TEST_CASE("word maps and precomposition") {
  RightRegularModel m = standard_model();
  const auto& A = m.algebra();
  Presentation torus = surface_presentation(1);
  Quaternion g = A.element({2, 1, 0, 0});
  Representation rep(torus, {{"a1", rho(m, g)}, {"b1", rho(m, g * g * g)}}, m.form());

  WordMap id;
  CHECK(precompose(rep, id).images() == rep.images());

  WordMap twist{{{"b1", parse_word("b1 a1")}}};
  CHECK_NOTHROW(validate_word_map(twist, torus));
  Representation tw = precompose(rep, twist);
  CHECK(check_relator(tw));
  CHECK(tw.image("b1") == mul(rep.image("b1"), rep.image("a1")));

  WordMap other{{{"a1", parse_word("a1 b1")}}};
  WordMap both = compose(twist, other);
  CHECK(precompose(precompose(rep, twist), other).images() == precompose(rep, both).images());

  WordMap broken{{{"a1", parse_word("a1 a1")}}};
  CHECK_THROWS_AS(validate_word_map(broken, torus), std::invalid_argument);
  Word curve = parse_word("a1");
  CHECK_NOTHROW(validate_word_map(twist, torus, &curve));
  CHECK_THROWS_AS(validate_word_map(other, torus, &curve), std::invalid_argument);
}

TEST_CASE("nonseparating bend multiplies the stable letter") {
  RightRegularModel m = standard_model();
  const auto& A = m.algebra();
  Quaternion g = A.element({2, 1, 0, 0});
  Representation rep = free_rep(m, g, A.j());
  CurveDatum c = nonseparating("g", "h");
  MatrixZ b = first_bend(m, g);

  CHECK(bend(rep, c, identity<Integer>(4)).images() == rep.images());
  Representation bent = bend(rep, c, b);
  CHECK(bent.image("h") == mul(rho(m, A.j()), b));
  CHECK(bent.image("g") == rep.image("g"));

  MatrixZ b_inv = symplectic_inverse(b, m.form());
  CHECK(iterate_bends(rep, {{c, b}, {c, b_inv}}).images() == rep.images());
  CHECK(iterate_bends(rep, {}).images() == rep.images());
  CHECK(iterate_bends(rep, {{c, b}, {c, b}}).images() == bend(rep, c, mul(b, b)).images());

  CHECK_THROWS_AS(bend(rep, c, rho(m, A.j())), BendError);  // does not commute with rho(g)
  MatrixZ scaled = identity<Integer>(4);
  scaled(0, 0) = 2;
  CHECK_THROWS_AS(bend(rep, c, scaled), BendError);
  CHECK_THROWS_AS(bend(rep, nonseparating("g h", "h"), b), std::invalid_argument);
}

TEST_CASE("separating bend conjugates side two") {
  RightRegularModel m = standard_model();
  const auto& A = m.algebra();
  Quaternion g = A.element({2, 1, 0, 0});
  Presentation p{{"x", "y", "z"}, std::nullopt};
  Representation rep(p, {{"x", rho(m, g)}, {"y", rho(m, A.j())}, {"z", rho(m, A.element({2, 0, 0, 1}))}}, m.form());
  CurveDatum c;
  c.kind = CurveDatum::Kind::separating;
  c.word = parse_word("x");
  c.side_one = {"x", "y"};
  c.side_two = {"z"};
  MatrixZ b = first_bend(m, g);
  Representation bent = bend(rep, c, b);
  CHECK(evaluate_word(bent, c.word) == evaluate_word(rep, c.word));
  for (const auto& w : reduced_words({"x", "y"}, 3)) CHECK(evaluate_word(bent, w).trace() == evaluate_word(rep, w).trace());
  CHECK(bent.image("z") == mul(mul(b, rep.image("z")), symplectic_inverse(b, m.form())));

  c.side_two = {"y", "z"};
  CHECK_THROWS_AS(validate_curve(c, p), std::invalid_argument);
}

TEST_CASE("separating curve on a genus-2 relator") {
  Presentation p = surface_presentation(2);
  CurveDatum c;
  c.kind = CurveDatum::Kind::separating;
  c.word = parse_word("a1 b1 a1^-1 b1^-1");
  c.side_one = {"a1", "b1"};
  c.side_two = {"a2", "b2"};
  CHECK_NOTHROW(validate_curve(c, p));
  c.word = parse_word("a1 b1");
  CHECK_THROWS_AS(validate_curve(c, p), std::invalid_argument);
}

TEST_CASE("trace multisets separate a twist") {
  RightRegularModel m = standard_model();
  const auto& A = m.algebra();
  Representation rep = free_rep(m, A.element({2, 1, 0, 0}), A.element({2, 0, 0, 1}));
  WordMap twist{{{"h", parse_word("h g")}}};
  auto words = reduced_words({"g", "h"}, 2);
  CHECK(check_distinct(rep, precompose(rep, twist), words).distinct);
  CHECK_FALSE(check_distinct(rep, rep, words).distinct);
}

TEST_CASE("datum files") {
  RightRegularModel m = standard_model();
  SurfaceDatum d = load_datum(std::string(QUATBEND_DATA_DIR) + "/free_pell_j.datum");
  CHECK(d.presentation.generators == std::vector<std::string>{"g", "h"});
  CHECK_FALSE(d.presentation.relator);
  const CurveDatum& c = d.curve("gamma");
  CHECK(c.stable == "h");
  CHECK(to_string(c.word) == "g");
  Representation rep = assemble(d, m);
  CHECK(rep.image("h") == rho(m, m.algebra().j()));
  CHECK(evaluate_quaternion_word(d, m, parse_word("g h"))[0] == m.algebra().element({2, 1, 0, 0}) * m.algebra().j());
  CHECK(to_string(d.automorphism("twist")("h")) == "h g");

  SurfaceDatum t = parse_datum(
      "generators a1 b1\nrelator a1 b1 a1^-1 b1^-1\nassign a1 2 1 0 0\nassign b1 7 4 0 0\n"
      "curve c nonseparating a1 stable b1\nautomorphism tw : b1 -> b1 a1\n");
  CHECK(check_relator(assemble(t, m)));

  CHECK_THROWS_AS(parse_datum("generators g\nassign g 1 0 0\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_datum("generators g\ncurve c nonseparating g stable g\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_datum("generators a b\nrelator a b a^-1 b^-1\nautomorphism t : a -> a a\n"),
                  std::invalid_argument);
  CHECK_THROWS_AS(assemble(parse_datum("generators g\nassign g 1 1 0 0\n"), m), AlgebraError);
}
