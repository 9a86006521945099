#include <doctest.h>

#include <memory>
#include <string>
#include <thread>

#include <json.hpp>

#include "pervq/pervq.h"
#include "support/corpus.hpp"

namespace {

using Json = nlohmann::json;

struct Fan {
  pervq_fan* p = nullptr;
  ~Fan() { pervq_fan_free(p); }
};
struct Rep {
  pervq_rep* p = nullptr;
  ~Rep() { pervq_rep_free(p); }
};
struct Descent {
  pervq_descent* p = nullptr;
  ~Descent() { pervq_descent_free(p); }
};
struct Report {
  pervq_report* p = nullptr;
  ~Report() { pervq_report_free(p); }
  Json json() const { return Json::parse(pervq_report_json(p)); }
};

pervq_status load(Fan& f, const std::string& name) {
  return pervq_fan_parse(corpus::fixture(name).c_str(), &f.p);
}
pervq_status load(Rep& r, const std::string& name, const Fan* fan = nullptr) {
  return pervq_rep_parse(corpus::fixture(name).c_str(), fan ? fan->p : nullptr, &r.p);
}
pervq_status load(Descent& d, const std::string& name) {
  return pervq_descent_parse(corpus::fixture(name).c_str(), &d.p);
}

}  // namespace

TEST_CASE("version and status names") {
  CHECK(std::string(pervq_version()) == "0.1.0");
  CHECK(std::string(pervq_status_name(PERVQ_OK)) == "ok");
  CHECK(std::string(pervq_status_name(PERVQ_ERR_NOT_INVERTIBLE)) == "not-invertible");
  CHECK(std::string(pervq_status_name(static_cast<pervq_status>(99))) == "internal");
}

TEST_CASE("fan commands") {
  Fan p2;
  REQUIRE(load(p2, "fan_p2.json") == PERVQ_OK);
  Report r;
  CHECK(pervq_fan_validate(p2.p, &r.p) == PERVQ_OK);
  CHECK(pervq_report_exit_code(r.p) == 0);
  CHECK(r.json()["status"] == "ok");

  Fan singular;
  REQUIRE(load(singular, "fan_singular.json") == PERVQ_OK);
  Report v;
  CHECK(pervq_fan_validate(singular.p, &v.p) == PERVQ_VIOLATION);
  CHECK(v.json()["violations"][0]["axiom"] == "non-smooth");
  Report d;
  CHECK(pervq_fan_dual(singular.p, &d.p) == PERVQ_ERR_NOT_SMOOTH);
  CHECK(pervq_report_exit_code(d.p) == 2);
  CHECK(d.json()["error"]["kind"] == "not-smooth");
  CHECK(std::string(pervq_last_error()).find("{1,2}") != std::string::npos);

  Report g;
  CHECK(pervq_fan_gluing(p2.p, &g.p) == PERVQ_OK);
  CHECK(g.json()["gluing"].size() == 6);
}

TEST_CASE("parse errors leave no handle") {
  pervq_fan* f = reinterpret_cast<pervq_fan*>(0x1);
  CHECK(pervq_fan_parse("{", &f) == PERVQ_ERR_PARSE);
  CHECK(std::string(pervq_last_error()).size() > 0);
  pervq_fan* g = nullptr;
  CHECK(pervq_fan_parse(R"({"dim":2,"rays":[[1]],"cones":[[]]})", &g) ==
        PERVQ_ERR_INVALID_FAN);
  CHECK(g == nullptr);
  CHECK(pervq_fan_parse(nullptr, &g) == PERVQ_ERR_INVALID_ARGUMENT);
  CHECK(pervq_fan_parse("{}", nullptr) == PERVQ_ERR_INVALID_ARGUMENT);

  Rep r;
  CHECK(load(r, "rep_p1_shape.json") == PERVQ_ERR_MISSING);  // needs the fan
  Fan p1;
  REQUIRE(load(p1, "fan_p1.json") == PERVQ_OK);
  CHECK(load(r, "rep_p1_shape.json", &p1) == PERVQ_ERR_SHAPE);
  CHECK(std::string(pervq_last_error()).find("u {}-{2}") != std::string::npos);
  CHECK(load(r, "rep_loop_singular.json") == PERVQ_ERR_NOT_INVERTIBLE);

  Descent d;
  CHECK(load(d, "descent_p1_conflict.json") == PERVQ_ERR_PARSE);
  CHECK(load(d, "descent_p1_singular_delta.json") == PERVQ_ERR_NOT_INVERTIBLE);

  // Success clears the message.
  Fan ok;
  CHECK(load(ok, "fan_p1.json") == PERVQ_OK);
  CHECK(std::string(pervq_last_error()).empty());
}

TEST_CASE("null handles are rejected") {
  Report r;
  CHECK(pervq_fan_validate(nullptr, &r.p) == PERVQ_ERR_INVALID_ARGUMENT);
  CHECK(pervq_report_exit_code(r.p) == 2);
  CHECK(pervq_fan_validate(nullptr, nullptr) == PERVQ_ERR_INVALID_ARGUMENT);
  CHECK(pervq_report_exit_code(nullptr) == 2);
  CHECK(std::string(pervq_report_json(nullptr)).empty());
  pervq_fan_free(nullptr);
  pervq_rep_free(nullptr);
  pervq_descent_free(nullptr);
  pervq_report_free(nullptr);
}

TEST_CASE("representation commands") {
  Fan p1;
  REQUIRE(load(p1, "fan_p1.json") == PERVQ_OK);
  Rep good, bad, scaled;
  REQUIRE(load(good, "rep_p1_valid.json", &p1) == PERVQ_OK);
  REQUIRE(load(bad, "rep_p1_iii.json", &p1) == PERVQ_OK);
  REQUIRE(load(scaled, "rep_p1_scaled.json", &p1) == PERVQ_OK);

  Report a, b, c, d;
  CHECK(pervq_rep_validate(good.p, "cdelta", p1.p, &a.p) == PERVQ_OK);
  CHECK(pervq_rep_validate(bad.p, "cdelta", p1.p, &b.p) == PERVQ_VIOLATION);
  CHECK(b.json()["violations"][0]["location"] == "K={1} K'={2} J={} p=2");
  CHECK(pervq_rep_validate(good.p, "cdelta", nullptr, &c.p) == PERVQ_ERR_MISSING);
  CHECK(pervq_rep_validate(good.p, "nope", p1.p, &d.p) == PERVQ_ERR_INVALID_ARGUMENT);

  Report hom;
  CHECK(pervq_rep_hom(good.p, scaled.p, &hom.p) == PERVQ_OK);
  CHECK(hom.json()["dimension"] == 1);

  Report iso;
  CHECK(pervq_rep_iso(good.p, scaled.p, 3, 2000, &iso.p) == PERVQ_OK);
  CHECK(iso.json()["verdict"] == "isomorphic");
  Report undecided;
  CHECK(pervq_rep_iso(good.p, scaled.p, 3, 0, &undecided.p) == PERVQ_VIOLATION);
  CHECK(undecided.json()["verdict"] == "undecided");

  Report print;
  CHECK(pervq_rep_print(good.p, "\"fan\"", &print.p) == PERVQ_OK);
  CHECK(print.json()["representation"].dump() ==
        Json::parse(corpus::fixture("rep_p1_valid.json")).dump());
  Report inline_print;
  CHECK(pervq_rep_print(good.p, nullptr, &inline_print.p) == PERVQ_OK);
  CHECK(inline_print.json()["representation"]["quiver"]["vertices"].size() == 3);
}

TEST_CASE("quiver and descent commands") {
  Report h, a, bad;
  CHECK(pervq_quiver_build_hypercube(2, &h.p) == PERVQ_OK);
  CHECK(h.json()["quiver"] == Json::parse(corpus::fixture("quiver_q2.json")));
  CHECK(pervq_quiver_build_arrangement(3, &a.p) == PERVQ_OK);
  CHECK(a.json()["quiver"]["vertices"].size() == 7);
  CHECK(pervq_quiver_build_hypercube(-1, &bad.p) == PERVQ_ERR_INVALID_ARGUMENT);

  Descent d;
  REQUIRE(load(d, "descent_p2_valid.json") == PERVQ_OK);
  Report check, glue, print;
  CHECK(pervq_descent_check(d.p, &check.p) == PERVQ_OK);
  CHECK(pervq_descent_glue(d.p, &glue.p) == PERVQ_OK);
  CHECK(glue.json()["representation"]["quiver"] == "fan");
  CHECK(pervq_descent_print(d.p, &print.p) == PERVQ_OK);
  CHECK(print.json()["descent"] == Json::parse(corpus::fixture("descent_p2_valid.json")));

  Descent broken;
  REQUIRE(load(broken, "descent_p2_cocycle.json") == PERVQ_OK);
  Report v;
  CHECK(pervq_descent_check(broken.p, &v.p) == PERVQ_VIOLATION);
  CHECK(v.json()["violations"][0]["condition"] == "cocycle");
}

TEST_CASE("last error is per thread") {
  pervq_fan* f = nullptr;
  CHECK(pervq_fan_parse("{", &f) == PERVQ_ERR_PARSE);
  std::string other;
  std::thread([&] { other = pervq_last_error(); }).join();
  CHECK(other.empty());
  CHECK_FALSE(std::string(pervq_last_error()).empty());
}
