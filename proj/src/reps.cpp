#include "pervq/reps.hpp"

#include <algorithm>
#include <random>
#include <tuple>

namespace pervq {

namespace {

std::string arrow_name(const Quiver& q, const ArrowPair& a) {
  return format_index_set(q.vertices()[a.low]) + "-" +
         format_index_set(q.vertices()[a.high]);
}

void expect_shape(const RatMatrix& m, std::size_t rows, std::size_t cols,
                  const std::string& what) {
  if (m.rows() != rows || m.cols() != cols) {
    throw Error(ErrorKind::Shape, what + " has shape " +
                                      shape_string(m.rows(), m.cols()) +
                                      ", expected " + shape_string(rows, cols));
  }
}

}  // namespace

Representation::Representation(Quiver quiver, std::vector<std::size_t> dims,
                               std::vector<RatMatrix> u,
                               std::vector<RatMatrix> v,
                               std::vector<std::vector<RatMatrix>> loops)
    : quiver_(std::move(quiver)),
      dims_(std::move(dims)),
      u_(std::move(u)),
      v_(std::move(v)),
      loops_(std::move(loops)) {
  if (dims_.size() != quiver_.vertex_count()) {
    throw Error(ErrorKind::Shape, "expected " +
                                      std::to_string(quiver_.vertex_count()) +
                                      " dimensions, got " +
                                      std::to_string(dims_.size()));
  }
  const auto& arrows = quiver_.arrows();
  if (u_.size() != arrows.size() || v_.size() != arrows.size()) {
    throw Error(ErrorKind::Shape, "expected one u and one v per arrow pair");
  }
  for (std::size_t a = 0; a < arrows.size(); ++a) {
    const std::size_t lo = dims_[arrows[a].low];
    const std::size_t hi = dims_[arrows[a].high];
    const std::string name = arrow_name(quiver_, arrows[a]);
    expect_shape(u_[a], hi, lo, "u " + name);
    expect_shape(v_[a], lo, hi, "v " + name);
  }
  if (loops_.size() != quiver_.vertex_count()) {
    throw Error(ErrorKind::Shape, "expected loop lists for every vertex");
  }
  for (std::size_t x = 0; x < loops_.size(); ++x) {
    const auto& labels = quiver_.loops(x);
    if (loops_[x].size() != labels.size()) {
      throw Error(ErrorKind::Shape,
                  "vertex " + format_index_set(quiver_.vertices()[x]) +
                      " expects " + std::to_string(labels.size()) + " loops");
    }
    for (std::size_t l = 0; l < labels.size(); ++l) {
      const std::string name = "loop " +
                               format_index_set(quiver_.vertices()[x]) + ":" +
                               std::to_string(labels[l]);
      expect_shape(loops_[x][l], dims_[x], dims_[x], name);
      if (!is_invertible(loops_[x][l])) {
        throw Error(ErrorKind::NotInvertible, name + " is not invertible");
      }
    }
  }
}

Representation Representation::zero(Quiver quiver) {
  return RepBuilder(std::move(quiver)).build();
}

std::size_t Representation::total_dim() const {
  std::size_t s = 0;
  for (auto d : dims_) s += d;
  return s;
}

RepBuilder::RepBuilder(Quiver quiver)
    : quiver_(std::move(quiver)),
      dims_(quiver_.vertex_count(), 0),
      u_(quiver_.arrows().size()),
      v_(quiver_.arrows().size()),
      loops_(quiver_.vertex_count()) {
  for (std::size_t x = 0; x < quiver_.vertex_count(); ++x)
    loops_[x].resize(quiver_.loops(x).size());
}

RepBuilder& RepBuilder::dim(const IndexSet& vertex, std::size_t d) {
  dims_[quiver_.vertex(vertex)] = d;
  return *this;
}

std::size_t RepBuilder::arrow_index(const IndexSet& low,
                                    const IndexSet& high) const {
  const auto a = quiver_.find_arrow(low, high);
  if (!a) {
    throw Error(ErrorKind::InvalidArgument, "quiver has no arrow " +
                                                format_index_set(low) + "-" +
                                                format_index_set(high));
  }
  return *a;
}

RepBuilder& RepBuilder::u(const IndexSet& low, const IndexSet& high,
                          RatMatrix m) {
  u_[arrow_index(low, high)] = std::move(m);
  return *this;
}

RepBuilder& RepBuilder::v(const IndexSet& low, const IndexSet& high,
                          RatMatrix m) {
  v_[arrow_index(low, high)] = std::move(m);
  return *this;
}

RepBuilder& RepBuilder::loop(const IndexSet& vertex, int label, RatMatrix m) {
  const std::size_t x = quiver_.vertex(vertex);
  const auto l = quiver_.find_loop(x, label);
  if (!l) {
    throw Error(ErrorKind::InvalidArgument,
                "vertex " + format_index_set(vertex) + " has no loop " +
                    std::to_string(label));
  }
  loops_[x][*l] = std::move(m);
  return *this;
}

Representation RepBuilder::build() const {
  const auto& arrows = quiver_.arrows();
  std::vector<RatMatrix> u, v;
  for (std::size_t a = 0; a < arrows.size(); ++a) {
    const std::size_t lo = dims_[arrows[a].low];
    const std::size_t hi = dims_[arrows[a].high];
    u.push_back(u_[a] ? *u_[a] : RatMatrix(hi, lo));
    v.push_back(v_[a] ? *v_[a] : RatMatrix(lo, hi));
  }
  std::vector<std::vector<RatMatrix>> loops(quiver_.vertex_count());
  for (std::size_t x = 0; x < loops_.size(); ++x)
    for (const auto& m : loops_[x])
      loops[x].push_back(m ? *m : RatMatrix::identity(dims_[x]));
  return Representation(quiver_, dims_, std::move(u), std::move(v),
                        std::move(loops));
}

RatMatrix monodromy(const Representation& rep, std::size_t arrow,
                    ArrowEnd end) {
  const RatMatrix& u = rep.u(arrow);
  const RatMatrix& v = rep.v(arrow);
  if (end == ArrowEnd::Low) return v * u + RatMatrix::identity(u.cols());
  return u * v + RatMatrix::identity(u.rows());
}

void sort_violations(std::vector<Violation>& violations) {
  std::stable_sort(violations.begin(), violations.end(),
                   [](const Violation& a, const Violation& b) {
                     return std::tie(a.condition, a.location) <
                            std::tie(b.condition, b.location);
                   });
}

namespace {

void check_low_monodromies(const Representation& rep,
                           std::vector<Violation>& out) {
  const Quiver& q = rep.quiver();
  for (std::size_t a = 0; a < q.arrows().size(); ++a) {
    const RatMatrix m = monodromy(rep, a, ArrowEnd::Low);
    if (!is_invertible(m)) {
      out.push_back({"i", "arrow " + arrow_name(q, q.arrows()[a]), m});
    }
  }
}

// Every square K, K+p, K+q, K+pq present in the quiver, p < q.
void check_squares(const Representation& rep, std::vector<Violation>& out) {
  const Quiver& q = rep.quiver();
  const auto arrow = [&](const IndexSet& lo, const IndexSet& hi) {
    return q.find_arrow(lo, hi);
  };
  for (const auto& k : q.vertices()) {
    std::vector<int> outward;
    for (const auto& a : q.arrows())
      if (q.vertices()[a.low] == k) outward.push_back(a.index);
    std::sort(outward.begin(), outward.end());
    for (std::size_t i = 0; i < outward.size(); ++i) {
      for (std::size_t j = i + 1; j < outward.size(); ++j) {
        const int p = outward[i];
        const int r = outward[j];
        const IndexSet kp = set_union(k, {p});
        const IndexSet kr = set_union(k, {r});
        const IndexSet kpr = set_union(kp, {r});
        const auto a_p = arrow(k, kp), a_r = arrow(k, kr);
        const auto a_pr = arrow(kp, kpr), a_rp = arrow(kr, kpr);
        if (!a_p || !a_r || !a_pr || !a_rp) continue;
        const std::string where = "K=" + format_index_set(k);
        const auto record = [&](const char* identity, int x, int y,
                                const RatMatrix& lhs, const RatMatrix& rhs) {
          if (lhs == rhs) return;
          out.push_back({"ii",
                         std::string(identity) + " " + where +
                             " p=" + std::to_string(x) +
                             " q=" + std::to_string(y),
                         lhs - rhs});
        };
        record("u-path", p, r, rep.u(*a_pr) * rep.u(*a_p),
               rep.u(*a_rp) * rep.u(*a_r));
        record("v-path", p, r, rep.v(*a_p) * rep.v(*a_pr),
               rep.v(*a_r) * rep.v(*a_rp));
        record("mixed", p, r, rep.v(*a_pr) * rep.u(*a_rp),
               rep.u(*a_p) * rep.v(*a_r));
        record("mixed", r, p, rep.v(*a_rp) * rep.u(*a_pr),
               rep.u(*a_r) * rep.v(*a_p));
      }
    }
  }
}

void check_commuting(const std::string& condition, const std::string& where,
                     const std::vector<std::pair<int, RatMatrix>>& ops,
                     std::vector<Violation>& out) {
  for (std::size_t i = 0; i < ops.size(); ++i) {
    for (std::size_t j = i + 1; j < ops.size(); ++j) {
      const RatMatrix c = ops[i].second * ops[j].second -
                          ops[j].second * ops[i].second;
      if (!c.is_zero()) {
        out.push_back({condition,
                       where + " a=" + std::to_string(ops[i].first) +
                           " b=" + std::to_string(ops[j].first),
                       c});
      }
    }
  }
}

}  // namespace

std::vector<Violation> validate_Cn(const Representation& rep) {
  const Quiver& q = rep.quiver();
  int n = 0;
  while ((std::size_t{1} << n) < q.vertex_count()) ++n;
  if (q != hypercube_quiver(n)) {
    throw Error(ErrorKind::InvalidArgument,
                "C_n requires a hypercube quiver without loops");
  }
  std::vector<Violation> out;
  check_low_monodromies(rep, out);
  check_squares(rep, out);
  sort_violations(out);
  return out;
}

std::vector<Violation> validate_CSigma(const Representation& rep) {
  const Quiver& q = rep.quiver();
  int lines = 0;
  for (const auto& x : q.vertices())
    if (x.size() == 1) ++lines;
  if (lines < 1 || q != arrangement_quiver(lines)) {
    throw Error(ErrorKind::InvalidArgument,
                "C_Sigma requires an arrangement quiver");
  }
  std::vector<Violation> out;
  check_low_monodromies(rep, out);
  check_squares(rep, out);
  std::vector<std::pair<int, RatMatrix>> ops;
  for (int i = 1; i <= lines; ++i)
    ops.emplace_back(i, monodromy(rep, *q.find_arrow({}, {i})));
  check_commuting("iii", "J={}", ops, out);
  sort_violations(out);
  return out;
}

MonodromyTable::MonodromyTable(const Representation& rep, const Fan& fan,
                               std::span<const ChartBasis> bases)
    : rep_(rep), fan_(fan), bases_(bases) {
  for (const auto& cone : fan.cones())
    reference_.emplace(cone, reference_chart(fan, cone));
}

const IndexSet& MonodromyTable::reference(const IndexSet& stratum) const {
  const auto it = reference_.find(stratum);
  if (it == reference_.end()) {
    throw Error(ErrorKind::UnknownCone,
                format_index_set(stratum) + " is not a cone of the fan");
  }
  return it->second;
}

std::optional<RatMatrix> MonodromyTable::generator(const IndexSet& stratum,
                                                   int label) const {
  const IndexSet& ref = reference(stratum);
  if (std::binary_search(stratum.begin(), stratum.end(), label))
    return std::nullopt;
  const Quiver& q = rep_.quiver();
  if (std::binary_search(ref.begin(), ref.end(), label)) {
    const auto a = q.find_arrow(stratum, set_union(stratum, {label}));
    if (!a) return std::nullopt;
    return monodromy(rep_, *a);
  }
  const std::size_t x = q.vertex(stratum);
  const auto l = q.find_loop(x, label);
  if (!l) return std::nullopt;
  return rep_.loop(x, *l);
}

std::optional<RatMatrix> MonodromyTable::product(
    const IndexSet& stratum, std::span<const LabeledExponent> exponents) const {
  const std::size_t d = rep_.dim(rep_.quiver().vertex(stratum));
  RatMatrix acc = RatMatrix::identity(d);
  std::vector<LabeledExponent> sorted(exponents.begin(), exponents.end());
  std::sort(sorted.begin(), sorted.end(),
            [](const auto& a, const auto& b) { return a.label < b.label; });
  for (const auto& [label, exponent] : sorted) {
    if (exponent == 0) continue;
    auto g = generator(stratum, label);
    if (!g) {
      throw Error(ErrorKind::IllPosed,
                  "no operator " + std::to_string(label) + " at " +
                      format_index_set(stratum));
    }
    if (exponent < 0) {
      g = try_invert(*g);
      if (!g) return std::nullopt;
    }
    acc = acc * power(*g, exponent < 0 ? -exponent : exponent);
  }
  return acc;
}

std::optional<RatMatrix> MonodromyTable::along(const IndexSet& stratum,
                                               const IntVector& w) const {
  const ChartBasis& chart = find_chart(bases_, reference(stratum));
  const auto exps = stratum_loop_exponents(chart, stratum, w);
  return product(stratum, exps);
}

std::optional<RatMatrix> MonodromyTable::in_chart(const ChartBasis& chart,
                                                  const IndexSet& stratum,
                                                  int label) const {
  if (std::binary_search(chart.cone.begin(), chart.cone.end(), label)) {
    const auto a =
        rep_.quiver().find_arrow(stratum, set_union(stratum, {label}));
    if (!a) {
      throw Error(ErrorKind::IllPosed,
                  "no arrow from " + format_index_set(stratum) + " along ray " +
                      std::to_string(label));
    }
    return monodromy(rep_, *a);
  }
  if (chart.cone == reference(stratum)) return generator(stratum, label);
  return along(stratum, chart.column_of(label));
}

std::vector<Violation> validate_CDelta(const Representation& rep,
                                       const Fan& fan) {
  const auto bases = chart_bases(fan);
  return validate_CDelta(rep, fan, bases);
}

std::vector<Violation> validate_CDelta(const Representation& rep,
                                       const Fan& fan,
                                       std::span<const ChartBasis> bases) {
  const Quiver& q = rep.quiver();
  if (q != fan_quiver(fan)) {
    throw Error(ErrorKind::InvalidArgument,
                "representation is not over the quiver of this fan");
  }
  const auto maximal = maximal_cones(fan);
  for (const auto& k : maximal) find_chart(bases, k);

  std::vector<Violation> out;
  check_low_monodromies(rep, out);
  check_squares(rep, out);

  const MonodromyTable table(rep, fan, bases);

  // Generators at each vertex commute pairwise.
  for (std::size_t x = 0; x < q.vertex_count(); ++x) {
    const IndexSet& j = q.vertices()[x];
    const ChartBasis& ref = find_chart(bases, table.reference(j));
    std::vector<std::pair<int, RatMatrix>> ops;
    for (int label : ref.labels)
      if (auto g = table.generator(j, label)) ops.emplace_back(label, *g);
    check_commuting("commute", "J=" + format_index_set(j), ops, out);
  }

  // Loops commute with the arrows they are transported along.
  for (const auto& a : q.arrows()) {
    const IndexSet& lo = q.vertices()[a.low];
    const IndexSet& hi = q.vertices()[a.high];
    const std::size_t arrow = static_cast<std::size_t>(&a - q.arrows().data());
    const ChartBasis& ref_hi = find_chart(bases, table.reference(hi));
    std::vector<std::pair<std::string, IntVector>> vectors;
    for (const IndexSet* end : {&lo, &hi}) {
      const ChartBasis& ref = find_chart(bases, table.reference(*end));
      for (int label : ref.completion_labels()) {
        vectors.emplace_back(format_index_set(*end) + ":" +
                                 std::to_string(label),
                             ref.column_of(label));
      }
    }
    for (const auto& [name, w] : vectors) {
      const IntVector coords = ref_hi.coordinates(w);
      bool on_high = false;
      for (std::size_t i = 0; i < ref_hi.labels.size(); ++i) {
        if (coords[i] != 0 &&
            std::binary_search(hi.begin(), hi.end(), ref_hi.labels[i]))
          on_high = true;
      }
      if (on_high) continue;
      const auto op_lo = table.along(lo, w);
      const auto op_hi = table.along(hi, w);
      if (!op_lo || !op_hi) continue;
      const std::string where =
          "arrow " + arrow_name(q, a) + " loop " + name;
      const RatMatrix du = rep.u(arrow) * *op_lo - *op_hi * rep.u(arrow);
      if (!du.is_zero()) out.push_back({"loop-transport", where + " u", du});
      const RatMatrix dv = *op_lo * rep.v(arrow) - rep.v(arrow) * *op_hi;
      if (!dv.is_zero()) out.push_back({"loop-transport", where + " v", dv});
    }
  }

  // (iii): operators named in one chart agree with their expression in
  // another.
  for (const auto& k : maximal) {
    const ChartBasis& ck = find_chart(bases, k);
    for (const auto& kp : maximal) {
      if (k == kp) continue;
      const ChartBasis& ckp = find_chart(bases, kp);
      const IndexSet common = set_intersection(k, kp);
      for (const auto& j : all_subsets(common)) {
        for (int p : ckp.labels) {
          if (std::binary_search(common.begin(), common.end(), p)) continue;
          const auto lhs = table.in_chart(ckp, j, p);
          const auto exps = stratum_loop_exponents(ck, j, ckp.column_of(p));
          std::optional<RatMatrix> rhs =
              RatMatrix::identity(rep.dim(q.vertex(j)));
          for (const auto& [label, exponent] : exps) {
            if (exponent == 0) continue;
            auto g = table.in_chart(ck, j, label);
            if (g && exponent < 0) g = try_invert(*g);
            if (!g) {
              rhs.reset();
              break;
            }
            *rhs = *rhs * power(*g, exponent < 0 ? -exponent : exponent);
          }
          if (!lhs || !rhs || *lhs == *rhs) continue;
          out.push_back({"iii",
                         "K=" + format_index_set(k) +
                             " K'=" + format_index_set(kp) +
                             " J=" + format_index_set(j) +
                             " p=" + std::to_string(p),
                         *lhs - *rhs});
        }
      }
    }
  }
  sort_violations(out);
  return out;
}

namespace {

struct Unknowns {
  std::vector<std::size_t> offset;
  std::size_t count = 0;
};

Unknowns layout(const Representation& a, const Representation& b) {
  Unknowns u;
  for (std::size_t x = 0; x < a.quiver().vertex_count(); ++x) {
    u.offset.push_back(u.count);
    u.count += a.dim(x) * b.dim(x);
  }
  return u;
}

// Rows enforcing phi_t * fa = fb * phi_s for maps fa : A(s) -> A(t),
// fb : B(s) -> B(t). phi_x is stored row-major, dims_B(x) x dims_A(x).
void add_square(std::vector<std::vector<Rational>>& rows, const Unknowns& uk,
                const Representation& a, const Representation& b,
                std::size_t s, std::size_t t, const RatMatrix& fa,
                const RatMatrix& fb) {
  const std::size_t as = a.dim(s), at = a.dim(t);
  const std::size_t bs = b.dim(s), bt = b.dim(t);
  for (std::size_t r = 0; r < bt; ++r) {
    for (std::size_t c = 0; c < as; ++c) {
      std::vector<Rational> row(uk.count);
      for (std::size_t k = 0; k < at; ++k)
        row[uk.offset[t] + r * at + k] += fa(k, c);
      for (std::size_t k = 0; k < bs; ++k)
        row[uk.offset[s] + k * as + c] -= fb(r, k);
      rows.push_back(std::move(row));
    }
  }
}

}  // namespace

bool is_morphism(const Representation& a, const Representation& b,
                 const Morphism& phi) {
  const Quiver& q = a.quiver();
  if (q != b.quiver() || phi.components.size() != q.vertex_count())
    return false;
  for (std::size_t x = 0; x < q.vertex_count(); ++x) {
    const RatMatrix& f = phi.components[x];
    if (f.rows() != b.dim(x) || f.cols() != a.dim(x)) return false;
  }
  for (std::size_t i = 0; i < q.arrows().size(); ++i) {
    const auto& ar = q.arrows()[i];
    const RatMatrix& lo = phi.components[ar.low];
    const RatMatrix& hi = phi.components[ar.high];
    if (hi * a.u(i) != b.u(i) * lo) return false;
    if (lo * a.v(i) != b.v(i) * hi) return false;
  }
  for (std::size_t x = 0; x < q.vertex_count(); ++x) {
    const RatMatrix& f = phi.components[x];
    for (std::size_t l = 0; l < q.loops(x).size(); ++l)
      if (f * a.loop(x, l) != b.loop(x, l) * f) return false;
  }
  return true;
}

std::vector<Morphism> hom_basis(const Representation& a,
                                const Representation& b) {
  const Quiver& q = a.quiver();
  if (q != b.quiver()) {
    throw Error(ErrorKind::InvalidArgument,
                "Hom between representations of different quivers");
  }
  const Unknowns uk = layout(a, b);
  std::vector<std::vector<Rational>> rows;
  for (std::size_t i = 0; i < q.arrows().size(); ++i) {
    const auto& ar = q.arrows()[i];
    add_square(rows, uk, a, b, ar.low, ar.high, a.u(i), b.u(i));
    add_square(rows, uk, a, b, ar.high, ar.low, a.v(i), b.v(i));
  }
  for (std::size_t x = 0; x < q.vertex_count(); ++x)
    for (std::size_t l = 0; l < q.loops(x).size(); ++l)
      add_square(rows, uk, a, b, x, x, a.loop(x, l), b.loop(x, l));

  RatMatrix system(rows.size(), uk.count);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < uk.count; ++c) system(r, c) = rows[r][c];

  std::vector<Morphism> out;
  for (const RatMatrix& vec : solve_nullspace(system)) {
    Morphism phi;
    for (std::size_t x = 0; x < q.vertex_count(); ++x) {
      RatMatrix f(b.dim(x), a.dim(x));
      for (std::size_t r = 0; r < f.rows(); ++r)
        for (std::size_t c = 0; c < f.cols(); ++c)
          f(r, c) = vec(uk.offset[x] + r * f.cols() + c, 0);
      phi.components.push_back(std::move(f));
    }
    out.push_back(std::move(phi));
  }
  return out;
}

Morphism identity_morphism(const Representation& rep) {
  Morphism phi;
  for (auto d : rep.dims()) phi.components.push_back(RatMatrix::identity(d));
  return phi;
}

namespace {

Morphism combine(std::span<const Morphism> basis,
                 std::span<const Rational> coefficients) {
  Morphism out = basis.front();
  for (auto& c : out.components) c = Rational(0) * c;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (coefficients[i] == 0) continue;
    for (std::size_t x = 0; x < out.components.size(); ++x)
      out.components[x] =
          out.components[x] + coefficients[i] * basis[i].components[x];
  }
  return out;
}

bool invertible_everywhere(const Morphism& phi) {
  return std::all_of(phi.components.begin(), phi.components.end(),
                     [](const RatMatrix& m) { return is_invertible(m); });
}

}  // namespace

IsoResult are_isomorphic(const Representation& a, const Representation& b,
                         const IsoOptions& options) {
  if (a.quiver() != b.quiver()) {
    throw Error(ErrorKind::InvalidArgument,
                "isomorphism test between different quivers");
  }
  if (a.dims() != b.dims()) {
    return {IsoVerdict::NotIsomorphic, std::nullopt, "dimensions differ"};
  }
  if (a.total_dim() == 0) {
    return {IsoVerdict::Isomorphic, identity_morphism(a), "both are zero"};
  }
  const auto hom = hom_basis(a, b);
  if (hom.empty()) {
    return {IsoVerdict::NotIsomorphic, std::nullopt, "Hom(A,B) = 0"};
  }
  const auto end = hom_basis(a, a);
  if (end.size() != hom.size()) {
    return {IsoVerdict::NotIsomorphic, std::nullopt,
            "dim Hom(A,B) = " + std::to_string(hom.size()) +
                " but dim End(A) = " + std::to_string(end.size())};
  }

  std::size_t attempts = 0;
  const auto found = [&](const Morphism& phi) {
    ++attempts;
    return invertible_everywhere(phi);
  };
  const auto success = [](Morphism phi) {
    return IsoResult{IsoVerdict::Isomorphic, std::move(phi),
                     "invertible morphism found"};
  };

  for (const auto& phi : hom) {
    if (attempts >= options.max_attempts) break;
    if (found(phi)) return success(phi);
  }

  const std::size_t d = hom.size();
  std::vector<int> digits(d, -2);
  std::vector<Rational> coeffs(d);
  // Half the budget at most, so wide Hom spaces still reach the random phase.
  const std::size_t small_limit =
      attempts + (options.max_attempts - attempts) / 2;
  while (attempts < small_limit) {
    std::size_t nonzero = 0;
    for (std::size_t i = 0; i < d; ++i) {
      coeffs[i] = digits[i];
      if (digits[i] != 0) ++nonzero;
    }
    if (nonzero > 1) {
      Morphism phi = combine(hom, coeffs);
      if (found(phi)) return success(std::move(phi));
    }
    std::size_t i = 0;
    while (i < d && digits[i] == 2) digits[i++] = -2;
    if (i == d) break;
    ++digits[i];
  }

  std::mt19937_64 rng(options.seed);
  std::uniform_int_distribution<int> num(-50, 50);
  std::uniform_int_distribution<int> den(1, 17);
  while (attempts < options.max_attempts) {
    for (auto& c : coeffs) c = Rational(num(rng), den(rng));
    Morphism phi = combine(hom, coeffs);
    if (found(phi)) return success(std::move(phi));
  }
  return {IsoVerdict::Undecided, std::nullopt,
          "no invertible morphism among " + std::to_string(attempts) +
              " candidates"};
}

Representation direct_sum(const Representation& a, const Representation& b) {
  const Quiver& q = a.quiver();
  if (q != b.quiver()) {
    throw Error(ErrorKind::InvalidArgument,
                "direct sum of representations of different quivers");
  }
  std::vector<std::size_t> dims;
  for (std::size_t x = 0; x < q.vertex_count(); ++x)
    dims.push_back(a.dim(x) + b.dim(x));
  std::vector<RatMatrix> u, v;
  for (std::size_t i = 0; i < q.arrows().size(); ++i) {
    u.push_back(block_diagonal(a.u(i), b.u(i)));
    v.push_back(block_diagonal(a.v(i), b.v(i)));
  }
  std::vector<std::vector<RatMatrix>> loops(q.vertex_count());
  for (std::size_t x = 0; x < q.vertex_count(); ++x)
    for (std::size_t l = 0; l < q.loops(x).size(); ++l)
      loops[x].push_back(block_diagonal(a.loop(x, l), b.loop(x, l)));
  return Representation(q, std::move(dims), std::move(u), std::move(v),
                        std::move(loops));
}

Representation change_of_basis(const Representation& rep,
                               std::span<const RatMatrix> per_vertex) {
  const Quiver& q = rep.quiver();
  if (per_vertex.size() != q.vertex_count()) {
    throw Error(ErrorKind::Shape, "expected one matrix per vertex");
  }
  std::vector<RatMatrix> inv;
  for (std::size_t x = 0; x < q.vertex_count(); ++x) {
    expect_shape(per_vertex[x], rep.dim(x), rep.dim(x),
                 "base change at " + format_index_set(q.vertices()[x]));
    inv.push_back(invert(per_vertex[x]));
  }
  std::vector<RatMatrix> u, v;
  for (std::size_t i = 0; i < q.arrows().size(); ++i) {
    const auto& ar = q.arrows()[i];
    u.push_back(per_vertex[ar.high] * rep.u(i) * inv[ar.low]);
    v.push_back(per_vertex[ar.low] * rep.v(i) * inv[ar.high]);
  }
  std::vector<std::vector<RatMatrix>> loops(q.vertex_count());
  for (std::size_t x = 0; x < q.vertex_count(); ++x)
    for (std::size_t l = 0; l < q.loops(x).size(); ++l)
      loops[x].push_back(per_vertex[x] * rep.loop(x, l) * inv[x]);
  return Representation(q, rep.dims(), std::move(u), std::move(v),
                        std::move(loops));
}

std::string_view to_string(IsoVerdict verdict) {
  switch (verdict) {
    case IsoVerdict::Isomorphic:
      return "isomorphic";
    case IsoVerdict::NotIsomorphic:
      return "not-isomorphic";
    case IsoVerdict::Undecided:
      return "undecided";
  }
  return "undecided";
}

}  // namespace pervq
