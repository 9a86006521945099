#include "pervq/descent.hpp"

#include <algorithm>

namespace pervq {

namespace {

std::string pair_name(const IndexSet& k, const IndexSet& kp) {
  return "K=" + format_index_set(k) + " K'=" + format_index_set(kp);
}

}  // namespace

IndexSet owning_chart(const Fan& fan, const IndexSet& cone) {
  for (const auto& k : maximal_cones(fan))
    if (is_subset(cone, k)) return k;
  throw Error(ErrorKind::UnknownCone,
              "no maximal cone contains " + format_index_set(cone));
}

DescentDatum::DescentDatum(Fan fan, std::map<IndexSet, Representation> charts,
                           std::map<DeltaKey, RatMatrix> deltas)
    : fan_(std::move(fan)),
      charts_(std::move(charts)),
      deltas_(std::move(deltas)) {
  if (const auto bad = validate_fan(fan_)) {
    throw Error(ErrorKind::InvalidFan, bad->message);
  }
  bases_ = chart_bases(fan_);
  maximal_ = maximal_cones(fan_);
  for (const auto& k : maximal_) {
    const auto it = charts_.find(k);
    if (it == charts_.end()) {
      throw Error(ErrorKind::Missing,
                  "no chart representation for " + format_index_set(k));
    }
    if (it->second.quiver() != chart_quiver(fan_, k)) {
      throw Error(ErrorKind::InvalidArgument,
                  "chart " + format_index_set(k) +
                      " is not over the chart quiver");
    }
  }
  for (const auto& [k, rep] : charts_) {
    if (std::find(maximal_.begin(), maximal_.end(), k) == maximal_.end()) {
      throw Error(ErrorKind::InvalidArgument,
                  format_index_set(k) + " is not a maximal cone");
    }
  }
  for (const auto& [key, m] : deltas_) {
    const auto& [k, kp, j] = key;
    const std::string name = "delta " + pair_name(k, kp) +
                             " J=" + format_index_set(j);
    if (!charts_.contains(k) || !charts_.contains(kp) || !(k < kp)) {
      throw Error(ErrorKind::InvalidArgument,
                  name + " must join maximal cones K < K'");
    }
    if (!is_subset(j, set_intersection(k, kp))) {
      throw Error(ErrorKind::InvalidArgument,
                  name + " is not on a common face");
    }
    const auto& ra = charts_.at(k);
    const auto& rb = charts_.at(kp);
    const std::size_t da = ra.dim(ra.quiver().vertex(j));
    const std::size_t db = rb.dim(rb.quiver().vertex(j));
    if (m.rows() != db || m.cols() != da) {
      throw Error(ErrorKind::Shape, name + " has shape " +
                                        shape_string(m.rows(), m.cols()) +
                                        ", expected " + shape_string(db, da));
    }
    if (!is_invertible(m)) {
      throw Error(ErrorKind::NotInvertible, name + " is not invertible");
    }
  }
  for (std::size_t a = 0; a < maximal_.size(); ++a) {
    for (std::size_t b = a + 1; b < maximal_.size(); ++b) {
      const auto& k = maximal_[a];
      const auto& kp = maximal_[b];
      const auto& ra = charts_.at(k);
      const auto& rb = charts_.at(kp);
      for (const auto& j : all_subsets(set_intersection(k, kp))) {
        if (deltas_.contains({k, kp, j})) continue;
        if (ra.dim(ra.quiver().vertex(j)) != rb.dim(rb.quiver().vertex(j))) {
          throw Error(ErrorKind::Missing,
                      "delta " + pair_name(k, kp) + " J=" +
                          format_index_set(j) +
                          " is required between spaces of different dimension");
        }
      }
    }
  }
}

const Representation& DescentDatum::chart(const IndexSet& cone) const {
  const auto it = charts_.find(cone);
  if (it == charts_.end()) {
    throw Error(ErrorKind::UnknownCone,
                format_index_set(cone) + " is not a maximal cone");
  }
  return it->second;
}

RatMatrix DescentDatum::delta(const IndexSet& from, const IndexSet& to,
                              const IndexSet& stratum) const {
  const Representation& rep = chart(from);
  chart(to);
  if (!is_subset(stratum, set_intersection(from, to))) {
    throw Error(ErrorKind::InvalidArgument,
                format_index_set(stratum) + " is not a face of " +
                    format_index_set(from) + " and " + format_index_set(to));
  }
  const std::size_t d = rep.dim(rep.quiver().vertex(stratum));
  if (from == to) return RatMatrix::identity(d);
  if (from < to) {
    const auto it = deltas_.find({from, to, stratum});
    return it == deltas_.end() ? RatMatrix::identity(d) : it->second;
  }
  const auto it = deltas_.find({to, from, stratum});
  return it == deltas_.end() ? RatMatrix::identity(d) : invert(it->second);
}

namespace {

// Operators of one chart representation, read in its own chart.
struct ChartOps {
  Fan fan;
  std::vector<ChartBasis> basis;
  MonodromyTable table;

  ChartOps(const DescentDatum& d, const IndexSet& k, const Representation& rep)
      : fan(d.fan().restricted_to(k)),
        basis{find_chart(d.bases(), k)},
        table(rep, fan, basis) {}
};

std::optional<RatMatrix> chart_product(
    const ChartOps& ops, const IndexSet& j,
    const std::vector<LabeledExponent>& exps, std::size_t dim) {
  RatMatrix acc = RatMatrix::identity(dim);
  for (const auto& [label, exponent] : exps) {
    if (exponent == 0) continue;
    auto g = ops.table.in_chart(ops.basis.front(), j, label);
    if (g && exponent < 0) g = try_invert(*g);
    if (!g) return std::nullopt;
    acc = acc * power(*g, exponent < 0 ? -exponent : exponent);
  }
  return acc;
}

}  // namespace

std::vector<Violation> validate_descent(const DescentDatum& d) {
  std::vector<Violation> out;
  const auto& maximal = d.maximal();

  std::map<IndexSet, ChartOps> ops;
  for (const auto& k : maximal) {
    const Representation& rep = d.chart(k);
    ops.try_emplace(k, d, k, rep);
    const ChartOps& co = ops.at(k);
    for (auto v : validate_CDelta(rep, co.fan, co.basis)) {
      v.location = "chart " + format_index_set(k) + " " + v.location;
      out.push_back(std::move(v));
    }
  }

  for (std::size_t a = 0; a < maximal.size(); ++a) {
    for (std::size_t b = a + 1; b < maximal.size(); ++b) {
      const auto& k = maximal[a];
      const auto& kp = maximal[b];
      const Representation& rk = d.chart(k);
      const Representation& rkp = d.chart(kp);
      const IndexSet common = set_intersection(k, kp);
      for (const auto& j : all_subsets(common)) {
        for (int p : common) {
          if (std::binary_search(j.begin(), j.end(), p)) continue;
          const IndexSet jp = set_union(j, {p});
          const auto ak = *rk.quiver().find_arrow(j, jp);
          const auto akp = *rkp.quiver().find_arrow(j, jp);
          const RatMatrix dj = d.delta(k, kp, j);
          const RatMatrix djp = d.delta(k, kp, jp);
          const std::string where = pair_name(k, kp) + " arrow " +
                                    format_index_set(j) + "-" +
                                    format_index_set(jp);
          const RatMatrix du = invert(djp) * rkp.u(akp) * dj - rk.u(ak);
          if (!du.is_zero()) out.push_back({"conjugation", where + " u", du});
          const RatMatrix dv = invert(dj) * rkp.v(akp) * djp - rk.v(ak);
          if (!dv.is_zero()) out.push_back({"conjugation", where + " v", dv});
        }
      }
    }
  }

  for (const auto& k : maximal) {
    const ChartBasis& ck = find_chart(d.bases(), k);
    const Representation& rk = d.chart(k);
    for (const auto& kp : maximal) {
      if (k == kp) continue;
      const ChartBasis& ckp = find_chart(d.bases(), kp);
      const IndexSet common = set_intersection(k, kp);
      for (const auto& j : all_subsets(common)) {
        const RatMatrix dj = d.delta(k, kp, j);
        const std::size_t dim = rk.dim(rk.quiver().vertex(j));
        for (int q : ckp.labels) {
          if (std::binary_search(common.begin(), common.end(), q)) continue;
          const auto mq = ops.at(kp).table.in_chart(ckp, j, q);
          const auto rhs = chart_product(
              ops.at(k), j, stratum_loop_exponents(ck, j, ckp.column_of(q)),
              dim);
          if (!mq || !rhs) continue;
          const RatMatrix diff = invert(dj) * *mq * dj - *rhs;
          if (diff.is_zero()) continue;
          out.push_back({"transport",
                         pair_name(k, kp) + " J=" + format_index_set(j) +
                             " p=" + std::to_string(q),
                         diff});
        }
      }
    }
  }

  for (std::size_t a = 0; a < maximal.size(); ++a) {
    for (std::size_t b = a + 1; b < maximal.size(); ++b) {
      for (std::size_t c = b + 1; c < maximal.size(); ++c) {
        const auto& k = maximal[a];
        const auto& kp = maximal[b];
        const auto& kpp = maximal[c];
        const IndexSet common =
            set_intersection(set_intersection(k, kp), kpp);
        for (const auto& j : all_subsets(common)) {
          const RatMatrix diff =
              d.delta(kp, kpp, j) * d.delta(k, kp, j) - d.delta(k, kpp, j);
          if (diff.is_zero()) continue;
          out.push_back({"cocycle",
                         pair_name(k, kp) + " K''=" + format_index_set(kpp) +
                             " J=" + format_index_set(j),
                         diff});
        }
      }
    }
  }
  sort_violations(out);
  return out;
}

Representation glue(const DescentDatum& d) {
  const Fan& fan = d.fan();
  const Quiver q = fan_quiver(fan);
  std::vector<IndexSet> owner;
  for (const auto& j : q.vertices()) owner.push_back(owning_chart(fan, j));

  std::vector<std::size_t> dims;
  for (std::size_t x = 0; x < q.vertex_count(); ++x) {
    const Representation& r = d.chart(owner[x]);
    dims.push_back(r.dim(r.quiver().vertex(q.vertices()[x])));
  }

  std::vector<RatMatrix> u, v;
  for (const auto& a : q.arrows()) {
    const IndexSet& lo = q.vertices()[a.low];
    const IndexSet& hi = q.vertices()[a.high];
    const IndexSet& kk = owner[a.low];
    const IndexSet& ki = owner[a.high];
    const Representation& r = d.chart(ki);
    const std::size_t ar = *r.quiver().find_arrow(lo, hi);
    const RatMatrix delta = d.delta(kk, ki, lo);
    u.push_back(r.u(ar) * delta);
    v.push_back(invert(delta) * r.v(ar));
  }

  std::map<IndexSet, ChartOps> ops;
  for (const auto& k : d.maximal()) ops.try_emplace(k, d, k, d.chart(k));

  std::vector<std::vector<RatMatrix>> loops(q.vertex_count());
  for (std::size_t x = 0; x < q.vertex_count(); ++x) {
    const IndexSet& j = q.vertices()[x];
    const ChartBasis& ref = find_chart(d.bases(), reference_chart(fan, j));
    for (int label : q.loops(x)) {
      const auto m = ops.at(owner[x]).table.along(j, ref.column_of(label));
      if (!m) {
        throw Error(ErrorKind::ValidationFailed,
                    "loop " + format_index_set(j) + ":" +
                        std::to_string(label) +
                        " needs the inverse of a singular operator");
      }
      loops[x].push_back(*m);
    }
  }
  return Representation(q, std::move(dims), std::move(u), std::move(v),
                        std::move(loops));
}

DescentDatum section(const Representation& rep, const Fan& fan) {
  const auto bases = chart_bases(fan);
  const auto violations = validate_CDelta(rep, fan, bases);
  if (!violations.empty()) {
    throw Error(ErrorKind::ValidationFailed,
                "representation violates (" + violations.front().condition +
                    ") at " + violations.front().location);
  }
  const Quiver& q = rep.quiver();
  const MonodromyTable table(rep, fan, bases);
  std::map<IndexSet, Representation> charts;
  for (const auto& k : maximal_cones(fan)) {
    const ChartBasis& ck = find_chart(bases, k);
    RepBuilder builder(chart_quiver(fan, k));
    const Quiver& cq = builder.quiver();
    for (const auto& j : cq.vertices()) builder.dim(j, rep.dim(q.vertex(j)));
    for (const auto& a : cq.arrows()) {
      const IndexSet& lo = cq.vertices()[a.low];
      const IndexSet& hi = cq.vertices()[a.high];
      const std::size_t ar = *q.find_arrow(lo, hi);
      builder.u(lo, hi, rep.u(ar)).v(lo, hi, rep.v(ar));
    }
    for (std::size_t x = 0; x < cq.vertex_count(); ++x) {
      const IndexSet& j = cq.vertices()[x];
      for (int label : cq.loops(x)) {
        const auto m = table.along(j, ck.column_of(label));
        if (!m) {
          throw Error(ErrorKind::ValidationFailed,
                      "chart loop " + format_index_set(j) + ":" +
                          std::to_string(label) + " is singular");
        }
        builder.loop(j, label, *m);
      }
    }
    charts.emplace(k, builder.build());
  }
  return DescentDatum(fan, std::move(charts));
}

bool is_descent_morphism(const DescentDatum& a, const DescentDatum& b,
                         const DescentMorphism& phi) {
  if (!(a.fan() == b.fan())) return false;
  for (const auto& k : a.maximal()) {
    const auto it = phi.find(k);
    if (it == phi.end()) return false;
    if (!is_morphism(a.chart(k), b.chart(k), it->second)) return false;
  }
  for (const auto& k : a.maximal()) {
    for (const auto& kp : a.maximal()) {
      if (!(k < kp)) continue;
      const Quiver& qk = a.chart(k).quiver();
      const Quiver& qkp = a.chart(kp).quiver();
      for (const auto& j : all_subsets(set_intersection(k, kp))) {
        const RatMatrix& fk = phi.at(k).components[qk.vertex(j)];
        const RatMatrix& fkp = phi.at(kp).components[qkp.vertex(j)];
        if (b.delta(k, kp, j) * fk != fkp * a.delta(k, kp, j)) return false;
      }
    }
  }
  return true;
}

Morphism glue_morphism(const DescentDatum& a, const DescentDatum& b,
                       const DescentMorphism& phi) {
  if (!(a.fan() == b.fan())) {
    throw Error(ErrorKind::InvalidArgument,
                "descent data over different fans");
  }
  const Quiver q = fan_quiver(a.fan());
  Morphism out;
  for (const auto& j : q.vertices()) {
    const IndexSet k = owning_chart(a.fan(), j);
    const auto it = phi.find(k);
    if (it == phi.end()) {
      throw Error(ErrorKind::Missing,
                  "no morphism component for chart " + format_index_set(k));
    }
    out.components.push_back(
        it->second.components.at(a.chart(k).quiver().vertex(j)));
  }
  return out;
}

}  // namespace pervq
