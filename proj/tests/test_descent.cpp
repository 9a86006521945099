#include <doctest.h>

#include "support/fixtures.hpp"

using namespace pervq;
using fixtures::q;
using fixtures::scalar;

namespace {

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::Shape;
}

/// One P^1 chart: hypercube on {ray} with scalar u and monodromy m.
Representation p1_chart(int ray, const Rational& u, const Rational& m) {
  return RepBuilder(chart_quiver(fixtures::p1_fan(), {ray}))
      .dim({}, 1).dim({ray}, 1)
      .u({}, {ray}, scalar(u)).v({}, {ray}, scalar((m - 1) / u))
      .build();
}

DescentDatum p1_datum(const Rational& m1, const Rational& m2,
                      const Rational& delta = 1) {
  std::map<IndexSet, Representation> charts;
  charts.emplace(IndexSet{1}, p1_chart(1, 1, m1));
  charts.emplace(IndexSet{2}, p1_chart(2, 1, m2));
  return DescentDatum(fixtures::p1_fan(), std::move(charts),
                      {{DeltaKey{{1}, {2}, {}}, scalar(delta)}});
}

std::vector<std::string> conditions(const std::vector<Violation>& vs) {
  std::vector<std::string> out;
  for (const auto& v : vs) out.push_back(v.condition);
  return out;
}

Morphism compose(const Morphism& second, const Morphism& first) {
  Morphism out;
  for (std::size_t x = 0; x < first.components.size(); ++x)
    out.components.push_back(second.components[x] * first.components[x]);
  return out;
}

/// Restriction of a global morphism to each chart, for data with trivial
/// deltas.
DescentMorphism restrict_to_charts(const DescentDatum& d, const Morphism& phi) {
  const Quiver global = fan_quiver(d.fan());
  DescentMorphism out;
  for (const auto& k : d.maximal()) {
    Morphism m;
    for (const auto& j : d.chart(k).quiver().vertices())
      m.components.push_back(phi.components[global.vertex(j)]);
    out.emplace(k, std::move(m));
  }
  return out;
}

}  // namespace

TEST_CASE("a single chart glues to itself") {
  fixtures::Random rnd(41);
  const Fan c2 = fixtures::orthant_fan(2);
  for (int trial = 0; trial < 10; ++trial) {
    const Representation r = fixtures::random_orthant_rep(rnd, 2);
    std::map<IndexSet, Representation> charts;
    charts.emplace(IndexSet{1, 2}, r);
    const DescentDatum d(c2, std::move(charts));
    CHECK(validate_descent(d).empty());
    CHECK(glue(d) == r);
  }
}

TEST_CASE("P^1 descent data") {
  const DescentDatum good = p1_datum(2, q(1, 2));
  CHECK(validate_descent(good).empty());
  CHECK(glue(good) == fixtures::p1_rep(2, q(1, 2)));

  // Identity delta cannot carry 2 to 2^{-1}.
  const auto vs = validate_descent(p1_datum(2, 2));
  REQUIRE(vs.size() == 2);
  CHECK(vs[0].condition == "transport");
  CHECK(vs[0].location == "K={1} K'={2} J={} p=2");
  CHECK(vs[0].difference == scalar(q(3, 2)));
  CHECK(vs[1].location == "K={2} K'={1} J={} p=1");

  // A scalar delta conjugates trivially and changes nothing.
  CHECK(validate_descent(p1_datum(3, q(1, 3), q(-5, 7))).empty());

  // An invalid chart is reported with its chart prefix.
  std::map<IndexSet, Representation> charts;
  charts.emplace(IndexSet{1}, p1_chart(1, 1, 0));
  charts.emplace(IndexSet{2}, p1_chart(2, 1, 2));
  const auto bad = validate_descent(DescentDatum(fixtures::p1_fan(), charts));
  REQUIRE_FALSE(bad.empty());
  CHECK(bad.front().location.rfind("chart {1} ", 0) == 0);
}

TEST_CASE("DescentDatum construction errors") {
  const Fan p1 = fixtures::p1_fan();
  auto two = [] {
    std::map<IndexSet, Representation> c;
    c.emplace(IndexSet{1}, p1_chart(1, 1, 2));
    c.emplace(IndexSet{2}, p1_chart(2, 1, q(1, 2)));
    return c;
  };
  auto one = two();
  one.erase(IndexSet{2});
  CHECK(kind_of([&] { DescentDatum(p1, one); }) == ErrorKind::Missing);

  auto extra = two();
  extra.emplace(IndexSet{}, Representation::zero(hypercube_quiver(0)));
  CHECK(kind_of([&] { DescentDatum(p1, extra); }) == ErrorKind::InvalidArgument);

  auto wrong = two();
  wrong.erase(IndexSet{2});
  wrong.emplace(IndexSet{2}, p1_chart(1, 1, 2));
  CHECK(kind_of([&] { DescentDatum(p1, wrong); }) == ErrorKind::InvalidArgument);

  CHECK(kind_of([&] {
          DescentDatum(p1, two(), {{DeltaKey{{2}, {1}, {}}, scalar(1)}});
        }) == ErrorKind::InvalidArgument);
  CHECK(kind_of([&] {
          DescentDatum(p1, two(), {{DeltaKey{{1}, {2}, {1}}, scalar(1)}});
        }) == ErrorKind::InvalidArgument);
  CHECK(kind_of([&] {
          DescentDatum(p1, two(), {{DeltaKey{{1}, {2}, {}}, RatMatrix(1, 2)}});
        }) == ErrorKind::Shape);
  CHECK(kind_of([&] {
          DescentDatum(p1, two(), {{DeltaKey{{1}, {2}, {}}, scalar(0)}});
        }) == ErrorKind::NotInvertible);

  auto uneven = two();
  uneven.erase(IndexSet{2});
  uneven.emplace(IndexSet{2}, RepBuilder(chart_quiver(p1, {2})).dim({}, 2).build());
  CHECK(kind_of([&] { DescentDatum(p1, uneven); }) == ErrorKind::Missing);

  CHECK(kind_of([&] { DescentDatum(Fan(1, {{1}}, {{1}}), two()); }) ==
        ErrorKind::InvalidFan);
}

TEST_CASE("delta lookup") {
  const DescentDatum d = p1_datum(2, q(1, 2), 4);
  CHECK(d.delta({1}, {2}, {}) == scalar(4));
  CHECK(d.delta({2}, {1}, {}) == scalar(q(1, 4)));
  CHECK(d.delta({1}, {1}, {1}) == scalar(1));
  CHECK_THROWS_AS(d.delta({1}, {2}, {1}), Error);
  CHECK(owning_chart(fixtures::p2_fan(), {3}) == IndexSet{1, 3});
  CHECK(owning_chart(fixtures::p2_fan(), {}) == IndexSet{1, 2});
}

TEST_CASE("section and glue round-trip exactly") {
  fixtures::Random rnd(42);
  for (int trial = 0; trial < 20; ++trial) {
    const Representation p1 = fixtures::random_p1_rep(rnd);
    const DescentDatum d = section(p1, fixtures::p1_fan());
    CHECK(d.deltas().empty());
    CHECK(validate_descent(d).empty());
    CHECK(glue(d) == p1);

    const Representation c2 = fixtures::random_orthant_rep(rnd, 2);
    CHECK(glue(section(c2, fixtures::orthant_fan(2))) == c2);

    const Representation p2 = fixtures::random_p2_rep(rnd);
    CHECK(glue(section(p2, fixtures::p2_fan())) == p2);
  }
  CHECK(kind_of([] { section(fixtures::p1_rep(2, 2), fixtures::p1_fan()); }) ==
        ErrorKind::ValidationFailed);
}

TEST_CASE("twisted data validate and glue into C_Delta") {
  fixtures::Random rnd(43);
  for (int trial = 0; trial < 20; ++trial) {
    const bool plane = trial % 2 == 1;
    const Fan fan = plane ? fixtures::p2_fan() : fixtures::p1_fan();
    const Representation r =
        plane ? fixtures::random_p2_rep(rnd) : fixtures::random_p1_rep(rnd);
    const DescentDatum d = fixtures::twisted_section(rnd, r, fan);
    CHECK(validate_descent(d).empty());
    const Representation g = glue(d);
    CHECK(validate_CDelta(g, fan).empty());
    CHECK(are_isomorphic(g, r).verdict == IsoVerdict::Isomorphic);
  }
}

TEST_CASE("section of glue is isomorphic to the datum") {
  fixtures::Random rnd(44);
  for (int trial = 0; trial < 10; ++trial) {
    const Fan fan = fixtures::p2_fan();
    const DescentDatum d =
        fixtures::twisted_section(rnd, fixtures::random_p2_rep(rnd), fan);
    const DescentDatum s = section(glue(d), fan);
    // Component at J in chart K: delta from J's owner to K.
    DescentMorphism cmp;
    for (const auto& k : d.maximal()) {
      Morphism m;
      for (const auto& j : d.chart(k).quiver().vertices())
        m.components.push_back(d.delta(owning_chart(fan, j), k, j));
      cmp.emplace(k, std::move(m));
    }
    CHECK(is_descent_morphism(s, d, cmp));
    for (const auto& [k, m] : cmp)
      for (const auto& c : m.components) CHECK(is_invertible(c));
  }
}

TEST_CASE("a planted cocycle violation is detected") {
  fixtures::Random rnd(45);
  const Fan fan = fixtures::p2_fan();
  for (int trial = 0; trial < 10; ++trial) {
    const DescentDatum d =
        fixtures::twisted_section(rnd, fixtures::random_p2_rep(rnd), fan);
    auto deltas = d.deltas();
    for (auto& [key, m] : deltas)
      if (std::get<0>(key) == IndexSet{1, 2} && std::get<1>(key) == IndexSet{2, 3})
        m = Rational(2) * m;
    const DescentDatum broken(fan, d.charts(), deltas);
    const auto vs = validate_descent(broken);
    CHECK(conditions(vs) == std::vector<std::string>{"cocycle"});
    CHECK(vs.front().location == "K={1,2} K'={1,3} K''={2,3} J={}");
  }
}

TEST_CASE("glue is functorial on morphisms") {
  fixtures::Random rnd(46);
  const Fan fan = fixtures::p1_fan();
  for (int trial = 0; trial < 20; ++trial) {
    const Representation a = fixtures::random_p1_rep(rnd);
    const Representation b = fixtures::random_p1_rep(rnd);
    const DescentDatum da = section(a, fan), db = section(b, fan);

    const DescentMorphism id = restrict_to_charts(da, identity_morphism(a));
    CHECK(is_descent_morphism(da, da, id));
    CHECK(glue_morphism(da, da, id) == identity_morphism(a));

    const auto ab = hom_basis(a, b);
    const auto ba = hom_basis(b, a);
    for (const auto& phi : ab) {
      const DescentMorphism dphi = restrict_to_charts(da, phi);
      CHECK(is_descent_morphism(da, db, dphi));
      const Morphism g = glue_morphism(da, db, dphi);
      CHECK(g == phi);
      CHECK(is_morphism(a, b, g));
      for (const auto& psi : ba) {
        const DescentMorphism dpsi = restrict_to_charts(db, psi);
        CHECK(compose(glue_morphism(db, da, dpsi), g) == compose(psi, phi));
      }
    }
  }
}

TEST_CASE("gluing preserves Hom dimensions on scalar P^1 data") {
  // Unknowns x_{K,J} for charts {1}, {2} and their faces, one scalar each:
  // 0 = x_{{1},{}}, 1 = x_{{1},{1}}, 2 = x_{{2},{}}, 3 = x_{{2},{2}}.
  fixtures::Random rnd(47);
  for (int trial = 0; trial < 60; ++trial) {
    struct Scalars {
      Rational m, u1, u2, delta;
    };
    auto draw = [&] {
      return Scalars{fixtures::nonzero_rational(rnd), fixtures::nonzero_rational(rnd),
                     fixtures::nonzero_rational(rnd), fixtures::nonzero_rational(rnd)};
    };
    Scalars s = draw(), t = draw();
    if (rnd.integer(0, 1) == 1) t.m = s.m;
    auto datum = [](const Scalars& x) {
      std::map<IndexSet, Representation> charts;
      charts.emplace(IndexSet{1}, p1_chart(1, x.u1, x.m));
      charts.emplace(IndexSet{2}, p1_chart(2, x.u2, 1 / x.m));
      return DescentDatum(fixtures::p1_fan(), std::move(charts),
                          {{DeltaKey{{1}, {2}, {}}, scalar(x.delta)}});
    };
    const DescentDatum da = datum(s), db = datum(t);
    REQUIRE(validate_descent(da).empty());

    auto v = [](const Rational& m, const Rational& u) {
      return (m - 1) / u;
    };
    std::vector<std::vector<Rational>> rows;
    auto row = [&](std::initializer_list<std::pair<int, Rational>> terms) {
      std::vector<Rational> r(4);
      for (const auto& [i, c] : terms) r[static_cast<std::size_t>(i)] += c;
      rows.push_back(r);
    };
    // Chart {1}: x1 u_a = u_b x0, x0 v_a = v_b x1.
    row({{1, s.u1}, {0, -t.u1}});
    row({{0, v(s.m, s.u1)}, {1, -v(t.m, t.u1)}});
    // Chart {2}.
    row({{3, s.u2}, {2, -t.u2}});
    row({{2, v(1 / s.m, s.u2)}, {3, -v(1 / t.m, t.u2)}});
    // Intertwining at the torus: x2 delta_a = delta_b x0.
    row({{2, s.delta}, {0, -t.delta}});
    RatMatrix system(rows.size(), 4);
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < 4; ++j) system(i, j) = rows[i][j];
    const std::size_t families = 4 - rank(system);

    CHECK(hom_basis(glue(da), glue(db)).size() == families);
  }
}
