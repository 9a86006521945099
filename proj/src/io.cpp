#include "pervq/io.hpp"

#include <charconv>

namespace pervq {

namespace {

[[noreturn]] void parse_error(const std::string& message) {
  throw Error(ErrorKind::Parse, message);
}

const Json& member(const Json& j, const char* key, const std::string& what) {
  if (!j.is_object()) parse_error(what + " must be an object");
  const auto it = j.find(key);
  if (it == j.end()) {
    throw Error(ErrorKind::Missing, what + " has no \"" + key + "\"");
  }
  return *it;
}

BigInt integer_from_json(const Json& j, const std::string& what) {
  if (j.is_number_integer()) {
    return j.is_number_unsigned() ? BigInt(j.get<std::uint64_t>())
                                  : BigInt(j.get<std::int64_t>());
  }
  if (j.is_string()) {
    const Rational r = parse_rational(j.get<std::string>());
    if (boost::multiprecision::denominator(r) != 1) {
      parse_error(what + " must be an integer");
    }
    return boost::multiprecision::numerator(r);
  }
  parse_error(what + " must be an integer");
}

Json integer_to_json(const BigInt& x) {
  if (x >= std::numeric_limits<std::int64_t>::min() &&
      x <= std::numeric_limits<std::int64_t>::max()) {
    return x.convert_to<std::int64_t>();
  }
  return x.str();
}

std::size_t count_from_json(const Json& j, const std::string& what) {
  if (!j.is_number_integer() || j.get<std::int64_t>() < 0) {
    parse_error(what + " must be a non-negative integer");
  }
  return j.get<std::size_t>();
}

int label_from_json(const Json& j, const std::string& what) {
  if (j.is_number_integer()) return j.get<int>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    int value = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec == std::errc() && ptr == s.data() + s.size()) return value;
  }
  parse_error(what + " must be an integer label");
}

IndexSet index_set_from_json(const Json& j, const std::string& what) {
  if (!j.is_array()) parse_error(what + " must be an array of labels");
  IndexSet out;
  for (const auto& x : j) out.push_back(label_from_json(x, what));
  return out;
}

Json index_set_to_json(const IndexSet& s) {
  Json out = Json::array();
  for (int i : s) out.push_back(i);
  return out;
}

IndexSet key_from_string(const std::string& key, const std::string& what) {
  try {
    return parse_index_set_key(key);
  } catch (const Error& e) {
    parse_error(what + ": " + e.what());
  }
}

template <class T, class F>
Matrix<T> matrix_from_json(const Json& j, const std::string& what, F entry) {
  if (!j.is_array()) parse_error(what + " must be an array of rows");
  const std::size_t rows = j.size();
  std::size_t cols = 0;
  if (rows > 0) {
    if (!j[0].is_array()) parse_error(what + " must be an array of rows");
    cols = j[0].size();
  }
  Matrix<T> m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols) {
      throw Error(ErrorKind::Shape, what + " has ragged rows");
    }
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = entry(j[r][c]);
  }
  return m;
}

}  // namespace

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    parse_error(std::string("malformed JSON: ") + e.what());
  }
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

Json as_json(const RatMatrix& m) {
  Json out = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_string(m(r, c)));
    out.push_back(std::move(row));
  }
  return out;
}

Json as_json(const IntMatrix& m) {
  Json out = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c)
      row.push_back(integer_to_json(m(r, c)));
    out.push_back(std::move(row));
  }
  return out;
}

RatMatrix rat_matrix_from_json(const Json& j, const std::string& what) {
  return matrix_from_json<Rational>(j, what, [&](const Json& x) -> Rational {
    if (x.is_string()) return parse_rational(x.get<std::string>());
    if (x.is_number_integer()) return Rational(integer_from_json(x, what));
    parse_error(what + " entries must be rational strings");
  });
}

IntMatrix int_matrix_from_json(const Json& j, const std::string& what) {
  return matrix_from_json<BigInt>(
      j, what, [&](const Json& x) { return integer_from_json(x, what); });
}

Json as_json(const Fan& fan) {
  Json out;
  out["dim"] = fan.dim();
  Json rays = Json::array();
  for (const auto& r : fan.rays()) {
    Json ray = Json::array();
    for (const auto& x : r) ray.push_back(integer_to_json(x));
    rays.push_back(std::move(ray));
  }
  out["rays"] = std::move(rays);
  Json cones = Json::array();
  for (const auto& c : fan.cones()) cones.push_back(index_set_to_json(c));
  out["cones"] = std::move(cones);
  if (!fan.basis_overrides().empty()) {
    Json bases = Json::object();
    for (const auto& [k, b] : fan.basis_overrides())
      bases[index_set_key(k)] = as_json(b);
    out["bases"] = std::move(bases);
  }
  return out;
}

Fan fan_from_json(const Json& j) {
  const Json& dim = member(j, "dim", "fan");
  const std::size_t n = count_from_json(dim, "fan dim");
  std::vector<IntVector> rays;
  const Json& jr = member(j, "rays", "fan");
  if (!jr.is_array()) parse_error("fan rays must be an array");
  for (const auto& r : jr) {
    if (!r.is_array()) parse_error("each ray must be an array");
    IntVector v;
    for (const auto& x : r) v.push_back(integer_from_json(x, "ray entry"));
    rays.push_back(std::move(v));
  }
  std::vector<IndexSet> cones;
  const Json& jc = member(j, "cones", "fan");
  if (!jc.is_array()) parse_error("fan cones must be an array");
  for (const auto& c : jc) cones.push_back(index_set_from_json(c, "cone"));
  std::map<IndexSet, IntMatrix> bases;
  if (const auto it = j.find("bases"); it != j.end()) {
    if (!it->is_object()) parse_error("fan bases must be an object");
    for (const auto& [key, value] : it->items()) {
      bases.emplace(key_from_string(key, "basis key"),
                    int_matrix_from_json(value, "basis " + key));
    }
  }
  return Fan(n, std::move(rays), std::move(cones), std::move(bases));
}

Json as_json(const Quiver& q) {
  Json out;
  Json vertices = Json::array();
  for (const auto& v : q.vertices()) vertices.push_back(index_set_to_json(v));
  out["vertices"] = std::move(vertices);
  Json arrows = Json::array();
  for (const auto& a : q.arrows()) {
    arrows.push_back({{"low", index_set_to_json(q.vertices()[a.low])},
                      {"high", index_set_to_json(q.vertices()[a.high])}});
  }
  out["arrows"] = std::move(arrows);
  Json loops = Json::object();
  for (std::size_t x = 0; x < q.vertex_count(); ++x) {
    if (q.loops(x).empty()) continue;
    Json labels = Json::array();
    for (int l : q.loops(x)) labels.push_back(std::to_string(l));
    loops[index_set_key(q.vertices()[x])] = std::move(labels);
  }
  out["loops"] = std::move(loops);
  return out;
}

Quiver quiver_from_json(const Json& j) {
  const Json& jv = member(j, "vertices", "quiver");
  if (!jv.is_array()) parse_error("quiver vertices must be an array");
  std::vector<IndexSet> vertices;
  for (const auto& v : jv) vertices.push_back(index_set_from_json(v, "vertex"));
  std::vector<std::pair<IndexSet, IndexSet>> arrows;
  const Json& ja = member(j, "arrows", "quiver");
  if (!ja.is_array()) parse_error("quiver arrows must be an array");
  for (const auto& a : ja) {
    arrows.emplace_back(index_set_from_json(member(a, "low", "arrow"), "low"),
                        index_set_from_json(member(a, "high", "arrow"), "high"));
  }
  std::map<IndexSet, std::vector<int>> loops;
  if (const auto it = j.find("loops"); it != j.end()) {
    if (!it->is_object()) parse_error("quiver loops must be an object");
    for (const auto& [key, labels] : it->items()) {
      if (!labels.is_array()) parse_error("loop labels must be an array");
      std::vector<int> ls;
      for (const auto& l : labels) ls.push_back(label_from_json(l, "loop label"));
      loops.emplace(key_from_string(key, "loop vertex"), std::move(ls));
    }
  }
  try {
    return Quiver(std::move(vertices), std::move(arrows), std::move(loops));
  } catch (const Error& e) {
    parse_error(std::string("quiver: ") + e.what());
  }
}

Quiver resolve_quiver(const Json& j, const Fan* fan) {
  if (j.is_object()) return quiver_from_json(j);
  if (!j.is_string()) parse_error("quiver must be an object or a reference");
  const std::string ref = j.get<std::string>();
  const auto colon = ref.find(':');
  const std::string family = ref.substr(0, colon);
  const std::string arg =
      colon == std::string::npos ? std::string() : ref.substr(colon + 1);
  const auto number = [&]() {
    int n = -1;
    const auto [ptr, ec] =
        std::from_chars(arg.data(), arg.data() + arg.size(), n);
    if (ec != std::errc() || ptr != arg.data() + arg.size() || n < 0) {
      parse_error("quiver reference \"" + ref + "\" needs a count");
    }
    return n;
  };
  if (family == "hypercube") return hypercube_quiver(number());
  if (family == "arrangement") return arrangement_quiver(number());
  if (family == "fan" || family == "chart") {
    if (!fan) {
      throw Error(ErrorKind::Missing,
                  "quiver reference \"" + ref + "\" needs a fan");
    }
    if (family == "fan") return fan_quiver(*fan);
    return chart_quiver(*fan, key_from_string(arg, "chart reference"));
  }
  parse_error("unknown quiver reference \"" + ref + "\"");
}

Representation rep_from_json(const Json& j, const Fan* fan) {
  Quiver q = resolve_quiver(member(j, "quiver", "representation"), fan);
  RepBuilder builder(q);
  const Json& jd = member(j, "dims", "representation");
  if (!jd.is_object()) parse_error("dims must be an object");
  std::vector<bool> seen(q.vertex_count());
  for (const auto& [key, value] : jd.items()) {
    const IndexSet v = key_from_string(key, "dims key");
    const auto x = q.find_vertex(v);
    if (!x) parse_error("dims names unknown vertex " + format_index_set(v));
    builder.dim(v, count_from_json(value, "dim " + format_index_set(v)));
    seen[*x] = true;
  }
  for (std::size_t x = 0; x < q.vertex_count(); ++x) {
    if (!seen[x]) {
      throw Error(ErrorKind::Missing, "no dimension for vertex " +
                                          format_index_set(q.vertices()[x]));
    }
  }
  const Representation shape = builder.build();

  const auto read_arrows = [&](const char* which) {
    const auto it = j.find(which);
    if (it == j.end()) return;
    if (!it->is_object()) parse_error(std::string(which) + " must be an object");
    for (const auto& [key, value] : it->items()) {
      const auto dash = key.find('-');
      if (dash == std::string::npos) {
        parse_error(std::string(which) + " key \"" + key + "\" is not low-high");
      }
      const IndexSet lo = key_from_string(key.substr(0, dash), "arrow key");
      const IndexSet hi = key_from_string(key.substr(dash + 1), "arrow key");
      if (!q.find_arrow(lo, hi)) {
        parse_error(std::string(which) + " names unknown arrow " + key);
      }
      RatMatrix m = rat_matrix_from_json(value, std::string(which) + " " + key);
      if (which[0] == 'u') {
        builder.u(lo, hi, std::move(m));
      } else {
        builder.v(lo, hi, std::move(m));
      }
    }
  };
  read_arrows("u");
  read_arrows("v");
  if (const auto it = j.find("loops"); it != j.end()) {
    if (!it->is_object()) parse_error("loops must be an object");
    for (const auto& [key, value] : it->items()) {
      const auto colon = key.find(':');
      if (colon == std::string::npos) {
        parse_error("loop key \"" + key + "\" is not vertex:label");
      }
      const IndexSet v = key_from_string(key.substr(0, colon), "loop key");
      const auto x = q.find_vertex(v);
      const int label = label_from_json(Json(key.substr(colon + 1)), "loop key");
      if (!x || !q.find_loop(*x, label)) {
        parse_error("loops names unknown loop " + key);
      }
      builder.loop(v, label, rat_matrix_from_json(value, "loop " + key));
    }
  }

  for (std::size_t a = 0; a < q.arrows().size(); ++a) {
    const auto& ar = q.arrows()[a];
    const std::string name = index_set_key(q.vertices()[ar.low]) + "-" +
                             index_set_key(q.vertices()[ar.high]);
    const std::size_t lo = shape.dim(ar.low), hi = shape.dim(ar.high);
    if (lo * hi == 0) {
      // Maps to or from the zero space carry no data.
      builder.u(q.vertices()[ar.low], q.vertices()[ar.high], RatMatrix(hi, lo));
      builder.v(q.vertices()[ar.low], q.vertices()[ar.high], RatMatrix(lo, hi));
      continue;
    }
    if (!builder.has_u(a)) throw Error(ErrorKind::Missing, "no u map " + name);
    if (!builder.has_v(a)) throw Error(ErrorKind::Missing, "no v map " + name);
  }
  for (std::size_t x = 0; x < q.vertex_count(); ++x) {
    for (std::size_t l = 0; l < q.loops(x).size(); ++l) {
      const std::string name = index_set_key(q.vertices()[x]) + ":" +
                               std::to_string(q.loops(x)[l]);
      if (shape.dim(x) == 0) {
        builder.loop(q.vertices()[x], q.loops(x)[l], RatMatrix(0, 0));
      } else if (!builder.has_loop(x, l)) {
        throw Error(ErrorKind::Missing, "no loop map " + name);
      }
    }
  }
  return builder.build();
}

Json as_json(const Representation& rep, const Json& quiver) {
  const Quiver& q = rep.quiver();
  Json out;
  out["quiver"] = quiver;
  Json dims = Json::object();
  for (std::size_t x = 0; x < q.vertex_count(); ++x)
    dims[index_set_key(q.vertices()[x])] = rep.dim(x);
  out["dims"] = std::move(dims);
  Json u = Json::object(), v = Json::object();
  for (std::size_t a = 0; a < q.arrows().size(); ++a) {
    const auto& ar = q.arrows()[a];
    if (rep.dim(ar.low) * rep.dim(ar.high) == 0) continue;
    const std::string key = index_set_key(q.vertices()[ar.low]) + "-" +
                            index_set_key(q.vertices()[ar.high]);
    u[key] = as_json(rep.u(a));
    v[key] = as_json(rep.v(a));
  }
  out["u"] = std::move(u);
  out["v"] = std::move(v);
  Json loops = Json::object();
  for (std::size_t x = 0; x < q.vertex_count(); ++x) {
    if (rep.dim(x) == 0) continue;
    for (std::size_t l = 0; l < q.loops(x).size(); ++l) {
      loops[index_set_key(q.vertices()[x]) + ":" +
            std::to_string(q.loops(x)[l])] = as_json(rep.loop(x, l));
    }
  }
  out["loops"] = std::move(loops);
  return out;
}

Json as_json(const Representation& rep) {
  return as_json(rep, as_json(rep.quiver()));
}

DescentDatum descent_from_json(const Json& j) {
  Fan fan = fan_from_json(member(j, "fan", "descent datum"));
  std::map<IndexSet, Representation> charts;
  const Json& jc = member(j, "charts", "descent datum");
  if (!jc.is_object()) parse_error("charts must be an object");
  for (const auto& [key, value] : jc.items()) {
    const IndexSet k = key_from_string(key, "chart key");
    if (!fan.contains(k)) parse_error("chart " + key + " is not a cone");
    Json rep = value;
    if (rep.is_object() && !rep.contains("quiver")) rep["quiver"] = "chart:" + key;
    charts.emplace(k, rep_from_json(rep, &fan));
  }
  std::map<DeltaKey, RatMatrix> deltas;
  if (const auto it = j.find("deltas"); it != j.end()) {
    if (!it->is_object()) parse_error("deltas must be an object");
    for (const auto& [key, value] : it->items()) {
      const auto bar1 = key.find('|');
      const auto bar2 =
          bar1 == std::string::npos ? bar1 : key.find('|', bar1 + 1);
      if (bar2 == std::string::npos) {
        parse_error("delta key \"" + key + "\" is not K|K'|J");
      }
      const IndexSet k = key_from_string(key.substr(0, bar1), "delta key");
      const IndexSet kp =
          key_from_string(key.substr(bar1 + 1, bar2 - bar1 - 1), "delta key");
      const IndexSet s = key_from_string(key.substr(bar2 + 1), "delta key");
      RatMatrix m = rat_matrix_from_json(value, "delta " + key);
      if (kp < k) {
        if (!is_invertible(m)) {
          throw Error(ErrorKind::NotInvertible,
                      "delta " + key + " is not invertible");
        }
        m = invert(m);
        if (const auto other = deltas.find({kp, k, s});
            other != deltas.end() && other->second != m) {
          parse_error("delta " + key + " is not the inverse of its partner");
        }
        deltas[{kp, k, s}] = std::move(m);
      } else {
        if (const auto other = deltas.find({k, kp, s});
            other != deltas.end() && other->second != m) {
          parse_error("delta " + key + " is not the inverse of its partner");
        }
        deltas[{k, kp, s}] = std::move(m);
      }
    }
  }
  return DescentDatum(std::move(fan), std::move(charts), std::move(deltas));
}

Json as_json(const DescentDatum& d) {
  Json out;
  out["fan"] = as_json(d.fan());
  Json charts = Json::object();
  for (const auto& [k, rep] : d.charts())
    charts[index_set_key(k)] = as_json(rep, "chart:" + index_set_key(k));
  out["charts"] = std::move(charts);
  Json deltas = Json::object();
  for (const auto& [key, m] : d.deltas()) {
    const auto& [k, kp, s] = key;
    deltas[index_set_key(k) + "|" + index_set_key(kp) + "|" +
           index_set_key(s)] = as_json(m);
  }
  out["deltas"] = std::move(deltas);
  return out;
}

Json as_json(const Violation& v) {
  return {{"condition", v.condition},
          {"location", v.location},
          {"difference", as_json(v.difference)}};
}

Json as_json(const Morphism& m, const Quiver& q) {
  Json out = Json::object();
  for (std::size_t x = 0; x < q.vertex_count(); ++x)
    out[index_set_key(q.vertices()[x])] = as_json(m.components.at(x));
  return out;
}

}  // namespace pervq
