#include <doctest.h>

#include "quatbend/cocycle/cocycle.hpp"

using namespace quatbend;

namespace {
const std::vector<std::pair<int, int>> kPairs{{3, -1}, {2, 3}, {2, 5}, {1, 1}};
}

TEST_CASE("klein group indexing") {
  auto g = klein_group();
  REQUIRE(g.size() == 4);
  for (std::size_t k = 0; k < 4; ++k) CHECK(g[k].index() == static_cast<int>(k));
}

TEST_CASE("T is a projective cocycle with a quaternion fixed algebra") {
  for (auto [a, b] : kPairs) {
    CAPTURE(a);
    CAPTURE(b);
    Cocycle1 t = t_cocycle(a, b);
    CHECK(cocycle_pairs_passing(t) == 16);
    CHECK(is_cocycle(t));
    CHECK(t.degenerate_quotient == (a == 1 && b == 1));
    auto fixed = fixed_algebra(t);
    CHECK(fixed.size() == 4);
    CHECK(same_span(fixed, quaternion_display_basis(a, b)));
  }
}

TEST_CASE("relifting keeps the cocycle property and moves delta by a coboundary") {
  Cocycle1 t = t_cocycle(3, -1);
  Cocycle1 r = relift(t, {1, -1, 1, -1});
  CHECK(is_cocycle(r));
  CHECK(factor_set_equivalent(connecting_delta(t), connecting_delta(r)));
}

TEST_CASE("factor sets") {
  CHECK(is_factor_set(FactorSet2::ones()));
  for (int bits = 0; bits < 16; ++bits) {
    std::array<int, 4> m{bits & 1 ? -1 : 1, bits & 2 ? -1 : 1, bits & 4 ? -1 : 1, bits & 8 ? -1 : 1};
    if (m[0] != 1) continue;
    CHECK(is_factor_set(coboundary(m)));
    CHECK(factor_set_equivalent(coboundary(m), FactorSet2::ones()));
  }
  FactorSet2 d = connecting_delta(t_cocycle(3, -1));
  CHECK(is_factor_set(d));
  CHECK(to_string(d) == "++++ ++++ +-+- +-+-");
  CHECK_FALSE(factor_set_equivalent(d, FactorSet2::ones()));
}

TEST_CASE("product identity and determinant coboundary") {
  for (auto [a, b] : kPairs) {
    Cocycle1 t = t_cocycle(a, b);
    CHECK(product_identity_check(retarget(t, CocycleTarget::ProjectiveOrthogonal), t));
    CHECK(product_identity_check(chi_cocycle(a, b, 2), t));
    Cocycle1 s = sign_cocycle(a, b);
    CHECK(determinant_coboundary_check(s));
    CHECK(determinant_coboundary_check(relift(s, {1, -1, -1, 1})));
    CHECK(factor_set_equivalent(connecting_partial(s), FactorSet2::ones()));
  }
  CHECK(is_cocycle(chi_cocycle(3, -1, 4)));
  CHECK_THROWS_AS(chi_cocycle(3, -1, 3), DimensionError);
}

TEST_CASE("kronecker cocycle of two T's is a cocycle") {
  Cocycle1 t = t_cocycle(2, 5);
  Cocycle1 k = kronecker_cocycle(retarget(t, CocycleTarget::ProjectiveOrthogonal), t);
  CHECK(k.dim() == 4);
  CHECK(is_cocycle(k));
}

TEST_CASE("suite summary line") {
  CocycleSuite s = cocycle_suite(3, -1);
  CHECK(s.passed());
  CHECK(to_string(s).find("16/16 cocycle pairs, product identity: pass") != std::string::npos);
}
