#include <doctest.h>

#include "support/fixtures.hpp"

using namespace pervq;

namespace {

// 2x2 integer inverse by the adjugate, for unimodular input.
IntMatrix adjugate_inverse(const IntMatrix& b) {
  const BigInt det = b(0, 0) * b(1, 1) - b(0, 1) * b(1, 0);
  REQUIRE(abs(det) == 1);
  return IntMatrix{{b(1, 1) * det, -b(0, 1) * det},
                   {-b(1, 0) * det, b(0, 0) * det}};
}

}  // namespace

TEST_CASE("MonomialMap requires a unimodular exponent matrix") {
  CHECK_NOTHROW(MonomialMap(IntMatrix{{0, 1}, {1, 0}}));
  CHECK_THROWS_AS(MonomialMap(IntMatrix{{2}}), Error);
  CHECK_THROWS_AS(MonomialMap(IntMatrix(1, 2)), Error);
}

TEST_CASE("gluing_map") {
  const Fan p1 = fixtures::p1_fan();
  const auto b = chart_bases(p1);
  CHECK(gluing_map(b[0], b[0]) == MonomialMap::identity(1));
  CHECK(gluing_map(b[0], b[1]).exponents == IntMatrix{{-1}});

  const Fan p2 = fixtures::p2_fan();
  const auto c = chart_bases(p2);
  for (const auto& from : c)
    for (const auto& to : c) {
      const IntMatrix oracle = adjugate_inverse(to.basis) * from.basis;
      CHECK(gluing_map(from, to).exponents == oracle);
    }
  // Around the three charts and back.
  const MonomialMap loop = compose(
      gluing_map(c[2], c[0]), compose(gluing_map(c[1], c[2]), gluing_map(c[0], c[1])));
  CHECK(loop == MonomialMap::identity(2));
}

TEST_CASE("compose") {
  const MonomialMap m(IntMatrix{{1, 2}, {0, 1}});
  CHECK(compose(MonomialMap::identity(2), m) == m);
  CHECK(compose(MonomialMap(IntMatrix{{-1}}), MonomialMap(IntMatrix{{-1}})) ==
        MonomialMap::identity(1));
  const MonomialMap n(IntMatrix{{0, 1}, {1, 0}});
  // Apply n first, then m.
  CHECK(compose(m, n).exponents == m.exponents * n.exponents);
  CHECK_THROWS_AS(compose(m, MonomialMap::identity(1)), Error);
}

TEST_CASE("check_cocycle") {
  const Fan orthant = fixtures::orthant_fan(2);
  CHECK_FALSE(check_cocycle(orthant, chart_bases(orthant)).has_value());
  const Fan p1 = fixtures::p1_fan();
  CHECK_FALSE(check_cocycle(p1, chart_bases(p1)).has_value());
  const Fan p2 = fixtures::p2_fan();
  CHECK_FALSE(check_cocycle(p2, chart_bases(p2)).has_value());

  // A chart list missing a maximal cone is reported, not ignored.
  auto partial = chart_bases(p2);
  partial.pop_back();
  CHECK_THROWS_AS(check_cocycle(p2, partial), Error);
}

TEST_CASE("gluing maps are mutually inverse") {
  const Fan fans[] = {fixtures::p1_fan(), fixtures::p2_fan(),
                      Fan(2, {{1, 0}, {0, 1}, {-1, 0}, {0, -1}},
                          {{}, {1}, {2}, {3}, {4}, {1, 2}, {2, 3}, {3, 4}, {1, 4}})};
  for (const auto& fan : fans) {
    const auto bases = chart_bases(fan);
    for (const auto& a : bases)
      for (const auto& b : bases)
        CHECK(compose(gluing_map(b, a), gluing_map(a, b)) ==
              MonomialMap::identity(fan.dim()));
  }
}

TEST_CASE("stratum_loop_exponents") {
  const Fan p1 = fixtures::p1_fan();
  const auto b1 = chart_bases(p1);
  CHECK(stratum_loop_exponents(b1[0], {}, p1.ray(2)) ==
        std::vector<LabeledExponent>{{1, -1}});

  const Fan p2 = fixtures::p2_fan();
  const auto b2 = chart_bases(p2);
  CHECK(stratum_loop_exponents(b2[0], {}, p2.ray(3)) ==
        std::vector<LabeledExponent>{{1, -1}, {2, -1}});
  // A vector of the chart itself is a unit vector.
  CHECK(stratum_loop_exponents(b2[0], {}, p2.ray(2)) ==
        std::vector<LabeledExponent>{{1, 0}, {2, 1}});
  // Coordinates on the stratum are omitted.
  CHECK(stratum_loop_exponents(b2[0], {1}, p2.ray(3)) ==
        std::vector<LabeledExponent>{{2, -1}});

  CHECK_THROWS_AS(stratum_loop_exponents(b2[0], {3}, p2.ray(3)), Error);
  CHECK_THROWS_AS(stratum_loop_exponents(b2[0], {}, IntVector{1}), Error);
}

TEST_CASE("loops transported by the gluing map carry exponents alpha") {
  // gamma_{J,p} in chart K' is the loop t -> exp(2 pi i t) e_p; under
  // h_{K'K} its image winds alpha_i times around coordinate i of chart K,
  // i.e. the exponent vector of the image loop is A e_p.
  for (const Fan& fan : {fixtures::p1_fan(), fixtures::p2_fan()}) {
    const auto bases = chart_bases(fan);
    for (const auto& k : bases)
      for (const auto& kp : bases)
        for (std::size_t p = 0; p < kp.labels.size(); ++p) {
          const IntMatrix a = gluing_map(kp, k).exponents;
          const auto alpha = stratum_loop_exponents(k, {}, kp.column_of(kp.labels[p]));
          for (std::size_t i = 0; i < alpha.size(); ++i)
            CHECK(a(i, p) == alpha[i].exponent);
        }
  }
}
