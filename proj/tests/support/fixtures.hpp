#pragma once

// Standard fans, small representations and random generators shared by the
// test binaries.

#include <cstdint>
#include <random>
#include <vector>

#include "pervq/descent.hpp"

namespace fixtures {

using namespace pervq;

inline RatMatrix scalar(const Rational& x) { return RatMatrix{{x}}; }

inline Rational q(long num, long den = 1) { return Rational(num, den); }

/// P^1: rays (1), (-1).
inline Fan p1_fan() { return Fan(1, {{1}, {-1}}, {{}, {1}, {2}}); }

/// P^2: rays e1, e2, -e1-e2.
inline Fan p2_fan() {
  return Fan(2, {{1, 0}, {0, 1}, {-1, -1}},
             {{}, {1}, {2}, {3}, {1, 2}, {1, 3}, {2, 3}});
}

/// All faces of the positive orthant of Z^n.
inline Fan orthant_fan(int n) {
  std::vector<IntVector> rays;
  IndexSet all;
  for (int i = 0; i < n; ++i) {
    IntVector r(static_cast<std::size_t>(n), 0);
    r[static_cast<std::size_t>(i)] = 1;
    rays.push_back(r);
    all.push_back(i + 1);
  }
  return Fan(static_cast<std::size_t>(n), rays, all_subsets(all));
}

/// C x C*: the ray e1 in Z^2.
inline Fan c_cstar_fan() { return Fan(2, {{1, 0}}, {{}, {1}}); }

/// 1-dimensional P^1 object with M_{0,1} = m1 and M_{0,2} = m2, realised by
/// u = 1, v = m - 1.
inline Representation p1_rep(const Rational& m1, const Rational& m2) {
  return RepBuilder(fan_quiver(p1_fan()))
      .dim({}, 1).dim({1}, 1).dim({2}, 1)
      .u({}, {1}, scalar(1)).v({}, {1}, scalar(m1 - 1))
      .u({}, {2}, scalar(1)).v({}, {2}, scalar(m2 - 1))
      .build();
}

/// 1-dimensional P^2 object: trivial torus monodromy, M_{{1},2} = 2 and
/// M_{{1},3} = 1/2 at the stratum of ray 1, every other map zero.
inline RepBuilder p2_builder() {
  RepBuilder b(fan_quiver(p2_fan()));
  for (const auto& v : b.quiver().vertices()) b.dim(v, 1);
  b.u({1}, {1, 2}, scalar(1)).v({1}, {1, 2}, scalar(1));
  b.u({1}, {1, 3}, scalar(1)).v({1}, {1, 3}, scalar(q(-1, 2)));
  return b;
}

inline Representation p2_rep() { return p2_builder().build(); }

class Random {
 public:
  explicit Random(std::uint64_t seed) : rng_(seed) {}

  long integer(long lo, long hi) {
    return std::uniform_int_distribution<long>(lo, hi)(rng_);
  }
  Rational rational(long span = 3, long max_den = 3) {
    return Rational(integer(-span, span), integer(1, max_den));
  }
  RatMatrix matrix(std::size_t rows, std::size_t cols, long span = 2) {
    RatMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c) m(r, c) = integer(-span, span);
    return m;
  }
  RatMatrix invertible(std::size_t n, long span = 2) {
    for (;;) {
      RatMatrix m = matrix(n, n, span);
      if (is_invertible(m)) return m;
    }
  }
  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

inline std::vector<RatMatrix> commuting_family(Random& rnd, std::size_t d,
                                               std::size_t count) {
  // Polynomials in one random matrix commute.
  const RatMatrix base = rnd.matrix(d, d, 1);
  std::vector<RatMatrix> out;
  while (out.size() < count) {
    RatMatrix a = Rational(rnd.integer(-1, 1)) * RatMatrix::identity(d) +
                  Rational(rnd.integer(-2, 2)) * base;
    if (rnd.integer(0, 1) == 1) a = a + Rational(rnd.integer(-1, 1)) * (base * base);
    if (is_invertible(a + RatMatrix::identity(d))) out.push_back(a);
  }
  return out;
}

/// Rational entries, conjugation by random invertible matrices per vertex.
inline Representation scramble(Random& rnd, const Representation& rep) {
  std::vector<RatMatrix> p;
  for (auto d : rep.dims()) p.push_back(rnd.invertible(d));
  return change_of_basis(rep, p);
}

/// Dimension d at `vertex`, zero elsewhere. Valid in every category.
inline Representation skyscraper(const Quiver& quiver, const IndexSet& vertex,
                                 std::size_t d) {
  RepBuilder b(quiver);
  b.dim(vertex, d);
  return b.build();
}

/// Valid object over the orthant fan of C^n: every space V, u = Id and
/// v_p = A_p for commuting A_p with A_p + Id invertible; then scrambled and
/// possibly extended by a skyscraper.
inline Representation random_orthant_rep(Random& rnd, int n) {
  const Quiver quiver = fan_quiver(orthant_fan(n));
  const auto d = static_cast<std::size_t>(rnd.integer(1, 2));
  const auto a = commuting_family(rnd, d, static_cast<std::size_t>(n));
  RepBuilder b(quiver);
  for (const auto& v : quiver.vertices()) b.dim(v, d);
  for (const auto& arrow : quiver.arrows()) {
    const IndexSet& lo = quiver.vertices()[arrow.low];
    const IndexSet& hi = quiver.vertices()[arrow.high];
    b.u(lo, hi, RatMatrix::identity(d));
    b.v(lo, hi, a[static_cast<std::size_t>(arrow.index - 1)]);
  }
  Representation rep = scramble(rnd, b.build());
  if (rnd.integer(0, 2) == 0) {
    const auto& vs = quiver.vertices();
    const auto pick = static_cast<std::size_t>(
        rnd.integer(0, static_cast<long>(vs.size()) - 1));
    rep = direct_sum(rep, skyscraper(quiver, vs[pick], 1));
  }
  return rep;
}

/// Valid P^1 object: M_{0,1} = T, M_{0,2} = T^{-1} for random invertible T.
inline Representation random_p1_rep(Random& rnd) {
  const Quiver quiver = fan_quiver(p1_fan());
  const auto d = static_cast<std::size_t>(rnd.integer(1, 2));
  const RatMatrix t = rnd.invertible(d, 2);
  const RatMatrix id = RatMatrix::identity(d);
  const RatMatrix p1 = rnd.invertible(d), p2 = rnd.invertible(d);
  RepBuilder b(quiver);
  b.dim({}, d).dim({1}, d).dim({2}, d);
  b.u({}, {1}, p1).v({}, {1}, (t - id) * invert(p1));
  b.u({}, {2}, p2).v({}, {2}, (invert(t) - id) * invert(p2));
  Representation rep = scramble(rnd, b.build());
  if (rnd.integer(0, 2) == 0) {
    rep = direct_sum(rep, skyscraper(quiver, {rnd.integer(1, 2) == 1 ? 1 : 2}, 1));
  }
  return rep;
}

/// 1-dimensional P^2 object whose only nontrivial monodromies sit at the
/// stratum of ray i: M = a toward one neighbour and 1/a toward the other.
inline Representation p2_stratum_rep(int i, const Rational& a) {
  RepBuilder b(fan_quiver(p2_fan()));
  for (const auto& v : b.quiver().vertices()) b.dim(v, 1);
  const int j = i == 1 ? 2 : 1;
  const int k = i == 3 ? 2 : 3;
  b.u({i}, set_union({i}, {j}), scalar(1)).v({i}, set_union({i}, {j}), scalar(a - 1));
  b.u({i}, set_union({i}, {k}), scalar(1))
      .v({i}, set_union({i}, {k}), scalar(1 / a - 1));
  return b.build();
}

inline Rational nonzero_rational(Random& rnd) {
  for (;;) {
    Rational x = rnd.rational(3, 3);
    if (x != 0) return x;
  }
}

inline Representation random_p2_rep(Random& rnd) {
  Representation rep = p2_stratum_rep(1, nonzero_rational(rnd));
  if (rnd.integer(0, 1) == 1)
    rep = direct_sum(rep, p2_stratum_rep(2, nonzero_rational(rnd)));
  if (rnd.integer(0, 1) == 1)
    rep = direct_sum(rep, p2_stratum_rep(3, nonzero_rational(rnd)));
  return scramble(rnd, rep);
}

/// section(rep) with every chart re-coordinatised by random P^K and the
/// deltas adjusted to P^{K'}_J (P^K_J)^{-1}.
inline DescentDatum twisted_section(Random& rnd, const Representation& rep,
                                    const Fan& fan) {
  const DescentDatum plain = section(rep, fan);
  std::map<IndexSet, std::vector<RatMatrix>> change;
  std::map<IndexSet, Representation> charts;
  for (const auto& [k, chart] : plain.charts()) {
    std::vector<RatMatrix> p;
    for (auto d : chart.dims()) p.push_back(rnd.invertible(d));
    charts.emplace(k, change_of_basis(chart, p));
    change.emplace(k, std::move(p));
  }
  std::map<DeltaKey, RatMatrix> deltas;
  const auto& maximal = plain.maximal();
  for (std::size_t a = 0; a < maximal.size(); ++a) {
    for (std::size_t b = a + 1; b < maximal.size(); ++b) {
      const auto& k = maximal[a];
      const auto& kp = maximal[b];
      for (const auto& j : all_subsets(set_intersection(k, kp))) {
        const auto& pk = change.at(k)[plain.chart(k).quiver().vertex(j)];
        const auto& pkp = change.at(kp)[plain.chart(kp).quiver().vertex(j)];
        deltas.emplace(DeltaKey{k, kp, j}, pkp * invert(pk));
      }
    }
  }
  return DescentDatum(fan, std::move(charts), std::move(deltas));
}

}  // namespace fixtures
