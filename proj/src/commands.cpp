#include "pervq/commands.hpp"

namespace pervq {

namespace {

Json violation_list(const std::vector<Violation>& vs) {
  Json out = Json::array();
  for (const auto& v : vs) out.push_back(as_json(v));
  return out;
}

CommandResult from_violations(const std::vector<Violation>& vs) {
  CommandResult r;
  r.status = vs.empty() ? Status::Ok : Status::Violation;
  r.payload["violations"] = violation_list(vs);
  return r;
}

}  // namespace

Json CommandResult::report() const {
  Json out = payload;
  out["status"] = std::string(to_string(status));
  return out;
}

std::string_view to_string(Status status) {
  switch (status) {
    case Status::Ok:
      return "ok";
    case Status::Violation:
      return "violation";
    case Status::Error:
      return "error";
  }
  return "error";
}

CommandResult error_result(const Error& e) {
  CommandResult r;
  r.status = Status::Error;
  r.error = e.kind();
  r.payload["error"] = {{"kind", std::string(to_string(e.kind()))},
                        {"message", e.what()}};
  return r;
}

Category parse_category(std::string_view name) {
  if (name == "cn") return Category::Cn;
  if (name == "csigma") return Category::CSigma;
  if (name == "cdelta") return Category::CDelta;
  throw Error(ErrorKind::InvalidArgument,
              "unknown category \"" + std::string(name) + "\"");
}

CommandResult cmd_fan_validate(const Fan& fan) {
  CommandResult r;
  Json violations = Json::array();
  if (const auto bad = validate_fan(fan)) {
    Json cones = Json::array();
    for (const auto& c : bad->cones) cones.push_back(index_set_key(c));
    violations.push_back({{"axiom", bad->axiom},
                          {"cones", cones},
                          {"message", bad->message}});
    r.status = Status::Violation;
    r.payload["violations"] = std::move(violations);
    return r;
  }
  Json smooth = Json::object();
  for (const auto& c : fan.cones()) {
    const bool ok = is_smooth(fan, c);
    smooth[index_set_key(c)] = ok;
    if (!ok) {
      violations.push_back({{"axiom", "non-smooth"},
                            {"cones", Json::array({index_set_key(c)})},
                            {"message", format_index_set(c) +
                                            " does not extend to a basis"}});
    }
  }
  r.status = violations.empty() ? Status::Ok : Status::Violation;
  r.payload["smooth"] = std::move(smooth);
  r.payload["violations"] = std::move(violations);
  return r;
}

CommandResult cmd_fan_dual(const Fan& fan) {
  CommandResult r;
  Json charts = Json::object();
  for (const auto& b : chart_bases(fan)) {
    Json labels = Json::array();
    for (int l : b.labels) labels.push_back(l);
    charts[index_set_key(b.cone)] = {{"labels", labels},
                                     {"basis", as_json(b.basis)},
                                     {"dual", as_json(dual_cone_smooth(b.basis))}};
  }
  r.payload["charts"] = std::move(charts);
  return r;
}

CommandResult cmd_fan_gluing(const Fan& fan) {
  CommandResult r;
  const auto bases = chart_bases(fan);
  Json maps = Json::object();
  for (const auto& from : bases)
    for (const auto& to : bases)
      if (from.cone != to.cone) {
        maps[index_set_key(from.cone) + "|" + index_set_key(to.cone)] =
            as_json(gluing_map(from, to).exponents);
      }
  r.payload["gluing"] = std::move(maps);
  Json violations = Json::array();
  if (const auto bad = check_cocycle(fan, bases)) {
    Json charts = Json::array();
    for (const auto& c : bad->charts) charts.push_back(index_set_key(c));
    violations.push_back({{"charts", charts}, {"message", bad->message}});
    r.status = Status::Violation;
  }
  r.payload["violations"] = std::move(violations);
  return r;
}

CommandResult cmd_quiver_build_fan(const Fan& fan) {
  CommandResult r;
  r.payload["quiver"] = as_json(fan_quiver(fan));
  return r;
}

CommandResult cmd_quiver_build_hypercube(int n) {
  CommandResult r;
  r.payload["quiver"] = as_json(hypercube_quiver(n));
  return r;
}

CommandResult cmd_quiver_build_arrangement(int lines) {
  CommandResult r;
  r.payload["quiver"] = as_json(arrangement_quiver(lines));
  return r;
}

CommandResult cmd_rep_validate(const Representation& rep, Category category,
                               const Fan* fan) {
  switch (category) {
    case Category::Cn:
      return from_violations(validate_Cn(rep));
    case Category::CSigma:
      return from_violations(validate_CSigma(rep));
    case Category::CDelta:
      if (!fan) {
        throw Error(ErrorKind::Missing, "category cdelta needs a fan");
      }
      return from_violations(validate_CDelta(rep, *fan));
  }
  throw Error(ErrorKind::InvalidArgument, "unknown category");
}

CommandResult cmd_rep_hom(const Representation& a, const Representation& b) {
  CommandResult r;
  const auto basis = hom_basis(a, b);
  Json out = Json::array();
  for (const auto& m : basis) out.push_back(as_json(m, a.quiver()));
  r.payload["dimension"] = basis.size();
  r.payload["basis"] = std::move(out);
  return r;
}

CommandResult cmd_rep_iso(const Representation& a, const Representation& b,
                          const IsoOptions& options) {
  CommandResult r;
  const IsoResult iso = are_isomorphic(a, b, options);
  r.status = iso.verdict == IsoVerdict::Isomorphic ? Status::Ok
                                                   : Status::Violation;
  r.payload["verdict"] = std::string(to_string(iso.verdict));
  r.payload["reason"] = iso.reason;
  if (iso.witness) r.payload["witness"] = as_json(*iso.witness, a.quiver());
  return r;
}

CommandResult cmd_descent_check(const DescentDatum& datum) {
  return from_violations(validate_descent(datum));
}

CommandResult cmd_descent_glue(const DescentDatum& datum) {
  const auto before = validate_descent(datum);
  if (!before.empty()) return from_violations(before);
  const Representation rep = glue(datum);
  CommandResult r = from_violations(validate_CDelta(rep, datum.fan()));
  r.payload["representation"] = as_json(rep, "fan");
  return r;
}

}  // namespace pervq
