// pervq command-line front end. Talks to the library only through pervq.h.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include "pervq/pervq.h"

namespace {

constexpr int kExitError = 2;

std::string json_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

int fail(const std::string& kind, const std::string& message) {
  std::cout << "{\n  \"error\": {\n    \"kind\": \"" << json_escape(kind)
            << "\",\n    \"message\": \"" << json_escape(message)
            << "\"\n  },\n  \"status\": \"error\"\n}\n";
  return kExitError;
}

int fail(pervq_status status) {
  return fail(pervq_status_name(status), pervq_last_error());
}

std::optional<std::string> slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct FanDeleter { void operator()(pervq_fan* p) const { pervq_fan_free(p); } };
struct RepDeleter { void operator()(pervq_rep* p) const { pervq_rep_free(p); } };
struct DescentDeleter {
  void operator()(pervq_descent* p) const { pervq_descent_free(p); }
};
struct ReportDeleter {
  void operator()(pervq_report* p) const { pervq_report_free(p); }
};
using FanPtr = std::unique_ptr<pervq_fan, FanDeleter>;
using RepPtr = std::unique_ptr<pervq_rep, RepDeleter>;
using DescentPtr = std::unique_ptr<pervq_descent, DescentDeleter>;
using ReportPtr = std::unique_ptr<pervq_report, ReportDeleter>;

// Carries an exit code out of nested loaders.
struct Abort {
  int code;
};

std::string read_or_abort(const std::string& path) {
  auto text = slurp(path);
  if (!text) throw Abort{fail("io", "cannot read " + path)};
  return *text;
}

FanPtr load_fan(const std::string& path) {
  const std::string text = read_or_abort(path);
  pervq_fan* fan = nullptr;
  if (const auto s = pervq_fan_parse(text.c_str(), &fan); s != PERVQ_OK)
    throw Abort{fail(s)};
  return FanPtr(fan);
}

RepPtr load_rep(const std::string& path, const pervq_fan* fan) {
  const std::string text = read_or_abort(path);
  pervq_rep* rep = nullptr;
  if (const auto s = pervq_rep_parse(text.c_str(), fan, &rep); s != PERVQ_OK)
    throw Abort{fail(s)};
  return RepPtr(rep);
}

DescentPtr load_descent(const std::string& path) {
  const std::string text = read_or_abort(path);
  pervq_descent* d = nullptr;
  if (const auto s = pervq_descent_parse(text.c_str(), &d); s != PERVQ_OK)
    throw Abort{fail(s)};
  return DescentPtr(d);
}

int report(pervq_report* raw) {
  ReportPtr r(raw);
  if (!r) return fail(PERVQ_ERR_INTERNAL);
  std::cout << pervq_report_json(r.get());
  return pervq_report_exit_code(r.get());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quiver models of perverse sheaves: fans, representations, descent"};
  app.require_subcommand(1);

  std::string file, file_b, fan_path, family = "fan", category, arg;
  std::uint64_t seed = 0;
  std::size_t max_attempts = 2000;

  auto* fan_cmd = app.add_subcommand("fan", "Fans and their charts");
  fan_cmd->require_subcommand(1);
  auto* fan_validate = fan_cmd->add_subcommand("validate", "Check fan axioms and smoothness");
  auto* fan_dual = fan_cmd->add_subcommand("dual", "Chart bases and dual generators");
  auto* fan_gluing = fan_cmd->add_subcommand("gluing", "Gluing exponent matrices and cocycle");
  for (auto* c : {fan_validate, fan_dual, fan_gluing})
    c->add_option("fan", file, "Fan JSON file")->required();

  auto* quiver_cmd = app.add_subcommand("quiver", "Quiver construction");
  quiver_cmd->require_subcommand(1);
  auto* quiver_build = quiver_cmd->add_subcommand("build", "Build a quiver");
  quiver_build->add_option("--family", family, "fan, hypercube or arrangement")
      ->check(CLI::IsMember({"fan", "hypercube", "arrangement"}));
  quiver_build->add_option("input", arg, "Fan JSON file, or a count")->required();

  auto* rep_cmd = app.add_subcommand("rep", "Representations");
  rep_cmd->require_subcommand(1);
  auto* rep_validate = rep_cmd->add_subcommand("validate", "Check category conditions");
  rep_validate->add_option("rep", file, "Representation JSON file")->required();
  rep_validate->add_option("--category", category, "cn, csigma or cdelta")
      ->required()
      ->check(CLI::IsMember({"cn", "csigma", "cdelta"}));
  auto* rep_hom = rep_cmd->add_subcommand("hom", "Basis of Hom(A, B)");
  auto* rep_iso = rep_cmd->add_subcommand("iso", "Isomorphism test");
  for (auto* c : {rep_hom, rep_iso}) {
    c->add_option("a", file, "Representation A")->required();
    c->add_option("b", file_b, "Representation B")->required();
  }
  for (auto* c : {rep_validate, rep_hom, rep_iso})
    c->add_option("--fan", fan_path, "Fan JSON file");
  rep_iso->add_option("--seed", seed, "Seed for the random search");
  rep_iso->add_option("--max-attempts", max_attempts, "Candidate bound");

  auto* descent_cmd = app.add_subcommand("descent", "Descent data");
  descent_cmd->require_subcommand(1);
  auto* descent_check = descent_cmd->add_subcommand("check", "Validate a descent datum");
  auto* descent_glue = descent_cmd->add_subcommand("glue", "Glue to a global representation");
  for (auto* c : {descent_check, descent_glue})
    c->add_option("datum", file, "Descent JSON file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitError;
  }

  try {
    pervq_report* out = nullptr;
    if (fan_validate->parsed() || fan_dual->parsed() || fan_gluing->parsed()) {
      const FanPtr fan = load_fan(file);
      if (fan_validate->parsed()) pervq_fan_validate(fan.get(), &out);
      if (fan_dual->parsed()) pervq_fan_dual(fan.get(), &out);
      if (fan_gluing->parsed()) pervq_fan_gluing(fan.get(), &out);
      return report(out);
    }
    if (quiver_build->parsed()) {
      if (family == "fan") {
        const FanPtr fan = load_fan(arg);
        pervq_quiver_build_fan(fan.get(), &out);
        return report(out);
      }
      int n = 0;
      try {
        std::size_t used = 0;
        n = std::stoi(arg, &used);
        if (used != arg.size()) throw std::invalid_argument(arg);
      } catch (const std::exception&) {
        return fail("invalid-argument", "expected a count, got \"" + arg + "\"");
      }
      if (family == "hypercube") {
        pervq_quiver_build_hypercube(n, &out);
      } else {
        pervq_quiver_build_arrangement(n, &out);
      }
      return report(out);
    }
    if (rep_validate->parsed() || rep_hom->parsed() || rep_iso->parsed()) {
      FanPtr fan;
      if (!fan_path.empty()) fan = load_fan(fan_path);
      const RepPtr a = load_rep(file, fan.get());
      if (rep_validate->parsed()) {
        pervq_rep_validate(a.get(), category.c_str(), fan.get(), &out);
        return report(out);
      }
      const RepPtr b = load_rep(file_b, fan.get());
      if (rep_hom->parsed()) {
        pervq_rep_hom(a.get(), b.get(), &out);
      } else {
        pervq_rep_iso(a.get(), b.get(), seed, max_attempts, &out);
      }
      return report(out);
    }
    if (descent_check->parsed() || descent_glue->parsed()) {
      const DescentPtr d = load_descent(file);
      if (descent_check->parsed()) {
        pervq_descent_check(d.get(), &out);
      } else {
        pervq_descent_glue(d.get(), &out);
      }
      return report(out);
    }
  } catch (const Abort& a) {
    return a.code;
  }
  return fail("invalid-argument", "no command given");
}
