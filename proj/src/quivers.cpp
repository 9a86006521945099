#include "pervq/quivers.hpp"

#include <algorithm>
#include <numeric>

namespace pervq {

Quiver::Quiver(std::vector<IndexSet> vertices,
               std::vector<std::pair<IndexSet, IndexSet>> arrows,
               std::map<IndexSet, std::vector<int>> loops) {
  for (auto& v : vertices) {
    std::sort(v.begin(), v.end());
    if (std::adjacent_find(v.begin(), v.end()) != v.end()) {
      throw Error(ErrorKind::InvalidArgument,
                  "vertex " + format_index_set(v) + " repeats an index");
    }
  }
  std::sort(vertices.begin(), vertices.end(), graded_less);
  if (std::adjacent_find(vertices.begin(), vertices.end()) != vertices.end()) {
    throw Error(ErrorKind::InvalidArgument, "duplicate vertex");
  }
  vertices_ = std::move(vertices);
  loops_.assign(vertices_.size(), {});

  for (auto& [low, high] : arrows) {
    std::sort(low.begin(), low.end());
    std::sort(high.begin(), high.end());
    const auto lo = find_vertex(low);
    const auto hi = find_vertex(high);
    if (!lo || !hi) {
      throw Error(ErrorKind::InvalidArgument,
                  "arrow " + format_index_set(low) + "-" +
                      format_index_set(high) + " has an unknown endpoint");
    }
    const IndexSet added = set_difference(high, low);
    if (high.size() != low.size() + 1 || added.size() != 1) {
      throw Error(ErrorKind::InvalidArgument,
                  "arrow " + format_index_set(low) + "-" +
                      format_index_set(high) +
                      " must add exactly one index");
    }
    arrows_.push_back({*lo, *hi, added.front()});
  }
  std::sort(arrows_.begin(), arrows_.end(), [](const auto& a, const auto& b) {
    return std::pair(a.low, a.high) < std::pair(b.low, b.high);
  });
  for (std::size_t i = 1; i < arrows_.size(); ++i) {
    if (arrows_[i].low == arrows_[i - 1].low &&
        arrows_[i].high == arrows_[i - 1].high) {
      throw Error(ErrorKind::InvalidArgument,
                  "duplicate arrow " +
                      format_index_set(vertices_[arrows_[i].low]) + "-" +
                      format_index_set(vertices_[arrows_[i].high]));
    }
  }

  for (auto& [key, labels] : loops) {
    IndexSet vertex = key;
    std::sort(vertex.begin(), vertex.end());
    const auto pos = find_vertex(vertex);
    if (!pos) {
      throw Error(ErrorKind::InvalidArgument,
                  "loops at unknown vertex " + format_index_set(vertex));
    }
    std::sort(labels.begin(), labels.end());
    if (std::adjacent_find(labels.begin(), labels.end()) != labels.end()) {
      throw Error(ErrorKind::InvalidArgument,
                  "repeated loop label at " + format_index_set(vertex));
    }
    loops_[*pos] = labels;
  }
}

std::size_t Quiver::loop_count() const {
  return std::accumulate(loops_.begin(), loops_.end(), std::size_t{0},
                         [](std::size_t s, const auto& l) { return s + l.size(); });
}

std::optional<std::size_t> Quiver::find_vertex(const IndexSet& set) const {
  const auto it =
      std::lower_bound(vertices_.begin(), vertices_.end(), set, graded_less);
  if (it == vertices_.end() || *it != set) return std::nullopt;
  return static_cast<std::size_t>(it - vertices_.begin());
}

std::size_t Quiver::vertex(const IndexSet& set) const {
  const auto pos = find_vertex(set);
  if (!pos) {
    throw Error(ErrorKind::InvalidArgument,
                "quiver has no vertex " + format_index_set(set));
  }
  return *pos;
}

std::optional<std::size_t> Quiver::find_arrow(const IndexSet& low,
                                              const IndexSet& high) const {
  const auto lo = find_vertex(low);
  const auto hi = find_vertex(high);
  if (!lo || !hi) return std::nullopt;
  for (std::size_t i = 0; i < arrows_.size(); ++i)
    if (arrows_[i].low == *lo && arrows_[i].high == *hi) return i;
  return std::nullopt;
}

std::optional<std::size_t> Quiver::find_loop(std::size_t vertex,
                                             int label) const {
  const auto& labels = loops_.at(vertex);
  const auto it = std::find(labels.begin(), labels.end(), label);
  if (it == labels.end()) return std::nullopt;
  return static_cast<std::size_t>(it - labels.begin());
}

namespace {

// Arrow pairs between every set and each superset with one more index,
// restricted to the given vertex family.
std::vector<std::pair<IndexSet, IndexSet>> covering_arrows(
    const std::vector<IndexSet>& family) {
  std::vector<std::pair<IndexSet, IndexSet>> arrows;
  for (const auto& high : family) {
    for (std::size_t i = 0; i < high.size(); ++i) {
      IndexSet low = high;
      low.erase(low.begin() + static_cast<std::ptrdiff_t>(i));
      if (std::find(family.begin(), family.end(), low) != family.end())
        arrows.emplace_back(low, high);
    }
  }
  return arrows;
}

}  // namespace

Quiver hypercube_quiver(int n) {
  if (n < 0) throw Error(ErrorKind::InvalidArgument, "negative dimension");
  IndexSet all(static_cast<std::size_t>(n));
  std::iota(all.begin(), all.end(), 1);
  auto vertices = all_subsets(all);
  auto arrows = covering_arrows(vertices);
  return Quiver(std::move(vertices), std::move(arrows));
}

Quiver arrangement_quiver(int lines) {
  if (lines < 1) {
    throw Error(ErrorKind::InvalidArgument, "an arrangement needs a line");
  }
  std::vector<IndexSet> vertices{{}};
  for (int i = 1; i <= lines; ++i) vertices.push_back({i});
  for (int i = 1; i <= lines; ++i)
    for (int j = i + 1; j <= lines; ++j) vertices.push_back({i, j});
  auto arrows = covering_arrows(vertices);
  return Quiver(std::move(vertices), std::move(arrows));
}

Quiver fan_quiver(const Fan& fan) {
  if (const auto bad = validate_fan(fan)) {
    throw Error(ErrorKind::InvalidFan, bad->message);
  }
  std::map<IndexSet, std::vector<int>> loops;
  for (const auto& cone : fan.cones()) {
    auto labels = completion_labels_for(fan, reference_chart(fan, cone));
    if (!labels.empty()) loops.emplace(cone, std::move(labels));
  }
  return Quiver(fan.cones(), covering_arrows(fan.cones()), std::move(loops));
}

Quiver chart_quiver(const Fan& fan, const IndexSet& cone) {
  return fan_quiver(fan.restricted_to(cone));
}

}  // namespace pervq
