#include "pervq/geometry.hpp"

#include <algorithm>
#include <charconv>
#include <set>

namespace pervq {

std::string format_index_set(const IndexSet& set) {
  return "{" + index_set_key(set) + "}";
}

std::string index_set_key(const IndexSet& set) {
  std::string out;
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(set[i]);
  }
  return out;
}

IndexSet parse_index_set_key(std::string_view key) {
  IndexSet out;
  if (key.empty()) return out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = key.find(',', start);
    const std::string_view part = key.substr(
        start, comma == std::string_view::npos ? key.size() - start
                                               : comma - start);
    int value = 0;
    const auto [ptr, ec] =
        std::from_chars(part.data(), part.data() + part.size(), value);
    if (ec != std::errc{} || ptr != part.data() + part.size() || value < 1) {
      throw Error(ErrorKind::Parse,
                  "malformed index set '" + std::string(key) + "'");
    }
    out.push_back(value);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (!std::is_sorted(out.begin(), out.end()) ||
      std::adjacent_find(out.begin(), out.end()) != out.end()) {
    throw Error(ErrorKind::Parse, "index set '" + std::string(key) +
                                      "' must be strictly increasing");
  }
  return out;
}

bool is_subset(const IndexSet& small, const IndexSet& big) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

IndexSet set_union(const IndexSet& a, const IndexSet& b) {
  IndexSet out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(),
                 std::back_inserter(out));
  return out;
}

IndexSet set_intersection(const IndexSet& a, const IndexSet& b) {
  IndexSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(out));
  return out;
}

IndexSet set_difference(const IndexSet& a, const IndexSet& b) {
  IndexSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                      std::back_inserter(out));
  return out;
}

bool graded_less(const IndexSet& a, const IndexSet& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

std::vector<IndexSet> all_subsets(const IndexSet& set) {
  std::vector<IndexSet> out;
  const std::size_t n = set.size();
  out.reserve(std::size_t{1} << n);
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    IndexSet s;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (std::size_t{1} << i)) s.push_back(set[i]);
    out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end(), graded_less);
  return out;
}

Fan::Fan(std::size_t dim, std::vector<IntVector> rays,
         std::vector<IndexSet> cones,
         std::map<IndexSet, IntMatrix> basis_overrides)
    : dim_(dim), rays_(std::move(rays)), overrides_(std::move(basis_overrides)) {
  for (std::size_t i = 0; i < rays_.size(); ++i) {
    if (rays_[i].size() != dim_) {
      throw Error(ErrorKind::InvalidFan,
                  "ray " + std::to_string(i + 1) + " has length " +
                      std::to_string(rays_[i].size()) + ", expected " +
                      std::to_string(dim_));
    }
  }
  for (auto& cone : cones) {
    std::sort(cone.begin(), cone.end());
    if (std::adjacent_find(cone.begin(), cone.end()) != cone.end()) {
      throw Error(ErrorKind::InvalidFan,
                  "cone " + format_index_set(cone) + " repeats a ray");
    }
    for (int label : cone) {
      if (label < 1 || static_cast<std::size_t>(label) > rays_.size()) {
        throw Error(ErrorKind::InvalidFan,
                    "cone " + format_index_set(cone) +
                        " references unknown ray " + std::to_string(label));
      }
    }
  }
  std::sort(cones.begin(), cones.end(), graded_less);
  cones.erase(std::unique(cones.begin(), cones.end()), cones.end());
  cones_ = std::move(cones);
  for (const auto& [cone, basis] : overrides_) {
    if (!contains(cone)) {
      throw Error(ErrorKind::InvalidFan, "basis given for " +
                                             format_index_set(cone) +
                                             ", which is not a cone");
    }
  }
}

const IntVector& Fan::ray(int label) const {
  if (label < 1 || static_cast<std::size_t>(label) > rays_.size()) {
    throw Error(ErrorKind::InvalidArgument,
                "unknown ray " + std::to_string(label));
  }
  return rays_[static_cast<std::size_t>(label - 1)];
}

bool Fan::contains(const IndexSet& cone) const {
  return std::binary_search(cones_.begin(), cones_.end(), cone, graded_less);
}

Fan Fan::restricted_to(const IndexSet& cone) const {
  if (!contains(cone)) {
    throw Error(ErrorKind::UnknownCone,
                format_index_set(cone) + " is not a cone of the fan");
  }
  std::map<IndexSet, IntMatrix> overrides;
  if (auto it = overrides_.find(cone); it != overrides_.end())
    overrides.emplace(*it);
  return Fan(dim_, rays_, all_subsets(cone), std::move(overrides));
}

namespace {

// Phase one of the simplex method with Bland's rule: is there x >= 0 with
// a x = b? Exact, so it terminates without tolerance issues.
bool feasible(RatMatrix a, std::vector<Rational> b) {
  const std::size_t m = a.rows(), n = a.cols();
  for (std::size_t r = 0; r < m; ++r) {
    if (b[r] < 0) {
      b[r] = -b[r];
      for (std::size_t c = 0; c < n; ++c) a(r, c) = -a(r, c);
    }
  }
  // Columns 0..n-1 original, n..n+m-1 artificial, last column the rhs.
  RatMatrix t(m + 1, n + m + 1);
  std::vector<std::size_t> basis(m);
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = 0; c < n; ++c) t(r, c) = a(r, c);
    t(r, n + r) = 1;
    t(r, n + m) = b[r];
    basis[r] = n + r;
  }
  // Objective row: reduced costs of minimising the sum of artificials.
  for (std::size_t c = 0; c <= n + m; ++c) {
    if (c >= n && c < n + m) continue;
    Rational s = 0;
    for (std::size_t r = 0; r < m; ++r) s += t(r, c);
    t(m, c) = -s;
  }
  for (;;) {
    std::size_t enter = n + m;
    for (std::size_t c = 0; c < n + m; ++c) {
      if (t(m, c) < 0) {
        enter = c;
        break;
      }
    }
    if (enter == n + m) break;
    std::optional<std::size_t> leave;
    Rational best;
    for (std::size_t r = 0; r < m; ++r) {
      if (t(r, enter) <= 0) continue;
      const Rational ratio = t(r, n + m) / t(r, enter);
      if (!leave || ratio < best ||
          (ratio == best && basis[r] < basis[*leave])) {
        leave = r;
        best = ratio;
      }
    }
    if (!leave) break;  // unbounded direction; cannot happen for phase one
    const std::size_t p = *leave;
    const Rational pivot = t(p, enter);
    for (std::size_t c = 0; c <= n + m; ++c) t(p, c) /= pivot;
    for (std::size_t r = 0; r <= m; ++r) {
      if (r == p || t(r, enter) == 0) continue;
      const Rational f = t(r, enter);
      for (std::size_t c = 0; c <= n + m; ++c) t(r, c) -= f * t(p, c);
    }
    basis[p] = enter;
  }
  return t(m, n + m) == 0;
}

// sigma_I meets sigma_J exactly in sigma_{I cap J}: no point of both cones
// has weight outside I cap J in its (unique) expansion over I.
bool meet_properly(const Fan& fan, const IndexSet& i, const IndexSet& j) {
  const IndexSet only = set_difference(i, j);
  if (only.empty() || set_difference(j, i).empty()) return true;
  const std::size_t n = fan.dim();
  RatMatrix a(n + 1, i.size() + j.size());
  std::vector<Rational> b(n + 1);
  for (std::size_t c = 0; c < i.size(); ++c) {
    const IntVector& v = fan.ray(i[c]);
    for (std::size_t r = 0; r < n; ++r) a(r, c) = Rational(v[r]);
    if (std::binary_search(only.begin(), only.end(), i[c])) a(n, c) = 1;
  }
  for (std::size_t c = 0; c < j.size(); ++c) {
    const IntVector& v = fan.ray(j[c]);
    for (std::size_t r = 0; r < n; ++r) a(r, i.size() + c) = Rational(-v[r]);
  }
  b[n] = 1;
  return !feasible(std::move(a), std::move(b));
}

}  // namespace

std::optional<FanViolation> validate_fan(const Fan& fan) {
  for (std::size_t i = 0; i < fan.ray_count(); ++i) {
    const IntVector& r = fan.rays()[i];
    BigInt g = 0;
    for (const auto& x : r) g = boost::multiprecision::gcd(g, x);
    const int label = static_cast<int>(i + 1);
    if (g == 0) {
      return FanViolation{"primitive", {{label}},
                          "ray " + std::to_string(label) + " is zero"};
    }
    if (g != 1) {
      return FanViolation{"primitive", {{label}},
                          "ray " + std::to_string(label) +
                              " is not primitive (gcd " + g.str() + ")"};
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (fan.rays()[j] == r) {
        return FanViolation{"distinct",
                            {{static_cast<int>(j + 1)}, {label}},
                            "rays " + std::to_string(j + 1) + " and " +
                                std::to_string(label) + " coincide"};
      }
    }
  }

  for (const auto& cone : fan.cones()) {
    std::vector<IntVector> gens;
    for (int label : cone) gens.push_back(fan.ray(label));
    if (rank(to_rational(IntMatrix::from_columns(gens, fan.dim()))) !=
        cone.size()) {
      return FanViolation{"independent", {cone},
                          "rays of " + format_index_set(cone) +
                              " are linearly dependent"};
    }
  }

  if (!fan.contains(IndexSet{})) {
    return FanViolation{"face-closure", {IndexSet{}},
                        "the zero cone {} is missing"};
  }
  for (const auto& cone : fan.cones()) {
    for (const auto& face : all_subsets(cone)) {
      if (!fan.contains(face)) {
        return FanViolation{"face-closure", {cone, face},
                            "face " + format_index_set(face) + " of " +
                                format_index_set(cone) + " is missing"};
      }
    }
  }

  const auto maximal = maximal_cones(fan);
  for (std::size_t i = 0; i < maximal.size(); ++i) {
    for (std::size_t j = i + 1; j < maximal.size(); ++j) {
      if (!meet_properly(fan, maximal[i], maximal[j])) {
        return FanViolation{"intersection", {maximal[i], maximal[j]},
                            format_index_set(maximal[i]) + " and " +
                                format_index_set(maximal[j]) +
                                " overlap beyond their common face " +
                                format_index_set(set_intersection(
                                    maximal[i], maximal[j]))};
      }
    }
  }
  return std::nullopt;
}

bool is_smooth(const Fan& fan, const IndexSet& cone) {
  if (!fan.contains(cone)) {
    throw Error(ErrorKind::UnknownCone,
                format_index_set(cone) + " is not a cone of the fan");
  }
  std::vector<IntVector> gens;
  for (int label : cone) gens.push_back(fan.ray(label));
  try {
    complete_to_unimodular(gens, fan.dim());
    return true;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::NotCompletable) return false;
    throw;
  }
}

IntMatrix dual_cone_smooth(const IntMatrix& generators) {
  if (!generators.is_square()) {
    throw Error(ErrorKind::NonUnimodular,
                "generator matrix " +
                    shape_string(generators.rows(), generators.cols()) +
                    " is not square");
  }
  const BigInt det = determinant(generators);
  if (det != 1 && det != -1) {
    throw Error(ErrorKind::NonUnimodular,
                "generator matrix has determinant " + det.str());
  }
  return to_integer(invert(to_rational(generators.transpose())));
}

std::vector<IndexSet> maximal_cones(const Fan& fan) {
  std::vector<IndexSet> out;
  for (const auto& cone : fan.cones()) {
    const bool maximal =
        std::none_of(fan.cones().begin(), fan.cones().end(),
                     [&](const IndexSet& other) {
                       return other.size() > cone.size() &&
                              is_subset(cone, other);
                     });
    if (maximal) out.push_back(cone);
  }
  std::sort(out.begin(), out.end());
  return out;
}

IntVector ChartBasis::column_of(int label) const {
  return basis.column(position_of(label));
}

bool ChartBasis::has_label(int label) const {
  return std::find(labels.begin(), labels.end(), label) != labels.end();
}

std::size_t ChartBasis::position_of(int label) const {
  const auto it = std::find(labels.begin(), labels.end(), label);
  if (it == labels.end()) {
    throw Error(ErrorKind::InvalidArgument,
                "label " + std::to_string(label) + " is not in the chart of " +
                    format_index_set(cone));
  }
  return static_cast<std::size_t>(it - labels.begin());
}

IntVector ChartBasis::coordinates(const IntVector& w) const {
  if (w.size() != basis.rows()) {
    throw Error(ErrorKind::Shape, "vector of length " +
                                      std::to_string(w.size()) +
                                      " against a basis of Z^" +
                                      std::to_string(basis.rows()));
  }
  IntVector out(labels.size());
  for (std::size_t i = 0; i < inverse.rows(); ++i)
    for (std::size_t j = 0; j < inverse.cols(); ++j)
      out[i] += inverse(i, j) * w[j];
  return out;
}

std::vector<int> ChartBasis::completion_labels() const {
  return {labels.begin() + static_cast<std::ptrdiff_t>(cone.size()),
          labels.end()};
}

std::vector<int> completion_labels_for(const Fan& fan, const IndexSet& cone) {
  std::vector<int> out;
  const int first = static_cast<int>(fan.ray_count()) + 1;
  for (std::size_t i = cone.size(); i < fan.dim(); ++i)
    out.push_back(first + static_cast<int>(i - cone.size()));
  return out;
}

ChartBasis chart_basis(const Fan& fan, const IndexSet& cone,
                       const std::optional<IntMatrix>& override_basis) {
  if (!fan.contains(cone)) {
    throw Error(ErrorKind::UnknownCone,
                format_index_set(cone) + " is not a cone of the fan");
  }
  const auto maxima = maximal_cones(fan);
  if (!std::binary_search(maxima.begin(), maxima.end(), cone)) {
    throw Error(ErrorKind::InvalidArgument,
                format_index_set(cone) + " is not a maximal cone");
  }
  std::vector<IntVector> gens;
  for (int label : cone) gens.push_back(fan.ray(label));
  const std::size_t n = fan.dim();

  ChartBasis out;
  out.cone = cone;
  out.labels = cone;
  for (int label : completion_labels_for(fan, cone)) out.labels.push_back(label);

  if (override_basis) {
    const IntMatrix& b = *override_basis;
    if (b.rows() != n || b.cols() != n) {
      throw Error(ErrorKind::NonUnimodular,
                  "basis for " + format_index_set(cone) + " has shape " +
                      shape_string(b.rows(), b.cols()));
    }
    const BigInt det = determinant(b);
    if (det != 1 && det != -1) {
      throw Error(ErrorKind::NonUnimodular,
                  "basis for " + format_index_set(cone) +
                      " has determinant " + det.str());
    }
    for (std::size_t i = 0; i < cone.size(); ++i) {
      if (b.column(i) != gens[i]) {
        throw Error(ErrorKind::InvalidArgument,
                    "basis for " + format_index_set(cone) + ": column " +
                        std::to_string(i + 1) + " must equal ray " +
                        std::to_string(cone[i]));
      }
    }
    out.basis = b;
  } else {
    try {
      out.basis = complete_to_unimodular(gens, n);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NotCompletable) throw;
      throw Error(ErrorKind::NotSmooth,
                  "cone " + format_index_set(cone) + " is not smooth");
    }
  }
  out.inverse = to_integer(invert(to_rational(out.basis)));
  return out;
}

std::vector<ChartBasis> chart_bases(const Fan& fan) {
  std::vector<ChartBasis> out;
  for (const auto& cone : maximal_cones(fan)) {
    const auto it = fan.basis_overrides().find(cone);
    out.push_back(chart_basis(
        fan, cone,
        it == fan.basis_overrides().end() ? std::nullopt
                                          : std::optional<IntMatrix>(it->second)));
  }
  return out;
}

const ChartBasis& find_chart(std::span<const ChartBasis> bases,
                             const IndexSet& cone) {
  for (const auto& b : bases)
    if (b.cone == cone) return b;
  throw Error(ErrorKind::Missing,
              "no chart basis for " + format_index_set(cone));
}

IndexSet reference_chart(const Fan& fan, const IndexSet& cone) {
  std::optional<IndexSet> best;
  for (const auto& k : maximal_cones(fan)) {
    if (!is_subset(cone, k)) continue;
    if (!best || k.size() > best->size()) best = k;
  }
  if (!best) {
    throw Error(ErrorKind::UnknownCone,
                "no maximal cone contains " + format_index_set(cone));
  }
  return *best;
}

}  // namespace pervq
