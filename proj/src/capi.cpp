#include "pervq/pervq.h"

#include <exception>
#include <memory>
#include <new>
#include <string>

#include "pervq/commands.hpp"

struct pervq_fan {
  pervq::Fan value;
};
struct pervq_rep {
  pervq::Representation value;
};
struct pervq_descent {
  pervq::DescentDatum value;
};
struct pervq_report {
  int exit_code;
  std::string json;
};

namespace {

thread_local std::string last_error;

pervq_status status_of(pervq::ErrorKind kind) {
  using pervq::ErrorKind;
  switch (kind) {
    case ErrorKind::Shape: return PERVQ_ERR_SHAPE;
    case ErrorKind::NotInvertible: return PERVQ_ERR_NOT_INVERTIBLE;
    case ErrorKind::NotCompletable: return PERVQ_ERR_NOT_COMPLETABLE;
    case ErrorKind::NonUnimodular: return PERVQ_ERR_NON_UNIMODULAR;
    case ErrorKind::NotSmooth: return PERVQ_ERR_NOT_SMOOTH;
    case ErrorKind::InvalidFan: return PERVQ_ERR_INVALID_FAN;
    case ErrorKind::UnknownCone: return PERVQ_ERR_UNKNOWN_CONE;
    case ErrorKind::IllPosed: return PERVQ_ERR_ILL_POSED;
    case ErrorKind::Parse: return PERVQ_ERR_PARSE;
    case ErrorKind::Missing: return PERVQ_ERR_MISSING;
    case ErrorKind::InvalidArgument: return PERVQ_ERR_INVALID_ARGUMENT;
    case ErrorKind::ValidationFailed: return PERVQ_ERR_VALIDATION_FAILED;
  }
  return PERVQ_ERR_INTERNAL;
}

// Runs `body`, recording any failure for pervq_last_error.
template <class F>
pervq_status shielded(F&& body) {
  last_error.clear();
  try {
    return body();
  } catch (const pervq::Error& e) {
    last_error = e.what();
    return status_of(e.kind());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
  } catch (const std::exception& e) {
    last_error = e.what();
  }
  return PERVQ_ERR_INTERNAL;
}

pervq_status emit(const pervq::CommandResult& r, pervq_report** out) {
  *out = new pervq_report{r.exit_code(), pervq::dump_json(r.report())};
  if (r.status == pervq::Status::Error) {
    last_error = r.payload["error"]["message"].get<std::string>();
    return status_of(*r.error);
  }
  return r.status == pervq::Status::Ok ? PERVQ_OK : PERVQ_VIOLATION;
}

template <class F>
pervq_status command(pervq_report** out, F&& body) {
  if (!out) {
    last_error = "null report pointer";
    return PERVQ_ERR_INVALID_ARGUMENT;
  }
  *out = nullptr;
  return shielded([&] { return emit(pervq::guarded(body), out); });
}

pervq_status require(const void* p, const char* what) {
  if (p) return PERVQ_OK;
  throw pervq::Error(pervq::ErrorKind::InvalidArgument,
                     std::string("null ") + what);
}

}  // namespace

extern "C" {

const char* pervq_version(void) { return "0.1.0"; }

const char* pervq_last_error(void) { return last_error.c_str(); }

const char* pervq_status_name(pervq_status status) {
  switch (status) {
    case PERVQ_OK: return "ok";
    case PERVQ_VIOLATION: return "violation";
    case PERVQ_ERR_SHAPE: return "shape";
    case PERVQ_ERR_NOT_INVERTIBLE: return "not-invertible";
    case PERVQ_ERR_NOT_COMPLETABLE: return "not-completable";
    case PERVQ_ERR_NON_UNIMODULAR: return "non-unimodular";
    case PERVQ_ERR_NOT_SMOOTH: return "not-smooth";
    case PERVQ_ERR_INVALID_FAN: return "invalid-fan";
    case PERVQ_ERR_UNKNOWN_CONE: return "unknown-cone";
    case PERVQ_ERR_ILL_POSED: return "ill-posed";
    case PERVQ_ERR_PARSE: return "parse";
    case PERVQ_ERR_MISSING: return "missing";
    case PERVQ_ERR_INVALID_ARGUMENT: return "invalid-argument";
    case PERVQ_ERR_VALIDATION_FAILED: return "validation-failed";
    case PERVQ_ERR_INTERNAL: return "internal";
  }
  return "internal";
}

pervq_status pervq_fan_parse(const char* json, pervq_fan** out) {
  return shielded([&] {
    require(json, "text");
    require(out, "output");
    *out = new pervq_fan{pervq::fan_from_json(pervq::parse_json(json))};
    return PERVQ_OK;
  });
}

void pervq_fan_free(pervq_fan* fan) { delete fan; }

pervq_status pervq_rep_parse(const char* json, const pervq_fan* fan,
                             pervq_rep** out) {
  return shielded([&] {
    require(json, "text");
    require(out, "output");
    *out = new pervq_rep{pervq::rep_from_json(pervq::parse_json(json),
                                              fan ? &fan->value : nullptr)};
    return PERVQ_OK;
  });
}

void pervq_rep_free(pervq_rep* rep) { delete rep; }

pervq_status pervq_descent_parse(const char* json, pervq_descent** out) {
  return shielded([&] {
    require(json, "text");
    require(out, "output");
    *out = new pervq_descent{
        pervq::descent_from_json(pervq::parse_json(json))};
    return PERVQ_OK;
  });
}

void pervq_descent_free(pervq_descent* datum) { delete datum; }

pervq_status pervq_fan_validate(const pervq_fan* fan, pervq_report** out) {
  return command(out, [&] {
    require(fan, "fan");
    return pervq::cmd_fan_validate(fan->value);
  });
}

pervq_status pervq_fan_dual(const pervq_fan* fan, pervq_report** out) {
  return command(out, [&] {
    require(fan, "fan");
    return pervq::cmd_fan_dual(fan->value);
  });
}

pervq_status pervq_fan_gluing(const pervq_fan* fan, pervq_report** out) {
  return command(out, [&] {
    require(fan, "fan");
    return pervq::cmd_fan_gluing(fan->value);
  });
}

pervq_status pervq_quiver_build_fan(const pervq_fan* fan, pervq_report** out) {
  return command(out, [&] {
    require(fan, "fan");
    return pervq::cmd_quiver_build_fan(fan->value);
  });
}

pervq_status pervq_quiver_build_hypercube(int n, pervq_report** out) {
  return command(out, [&] { return pervq::cmd_quiver_build_hypercube(n); });
}

pervq_status pervq_quiver_build_arrangement(int lines, pervq_report** out) {
  return command(out,
                 [&] { return pervq::cmd_quiver_build_arrangement(lines); });
}

pervq_status pervq_rep_validate(const pervq_rep* rep, const char* category,
                                const pervq_fan* fan, pervq_report** out) {
  return command(out, [&] {
    require(rep, "representation");
    require(category, "category");
    return pervq::cmd_rep_validate(rep->value,
                                   pervq::parse_category(category),
                                   fan ? &fan->value : nullptr);
  });
}

pervq_status pervq_rep_hom(const pervq_rep* a, const pervq_rep* b,
                           pervq_report** out) {
  return command(out, [&] {
    require(a, "representation");
    require(b, "representation");
    return pervq::cmd_rep_hom(a->value, b->value);
  });
}

pervq_status pervq_rep_iso(const pervq_rep* a, const pervq_rep* b,
                           uint64_t seed, size_t max_attempts,
                           pervq_report** out) {
  return command(out, [&] {
    require(a, "representation");
    require(b, "representation");
    return pervq::cmd_rep_iso(a->value, b->value, {seed, max_attempts});
  });
}

pervq_status pervq_rep_print(const pervq_rep* rep, const char* quiver_json,
                             pervq_report** out) {
  return command(out, [&] {
    require(rep, "representation");
    pervq::CommandResult r;
    r.payload["representation"] =
        quiver_json ? pervq::as_json(rep->value, pervq::parse_json(quiver_json))
                    : pervq::as_json(rep->value);
    return r;
  });
}

pervq_status pervq_descent_check(const pervq_descent* datum,
                                 pervq_report** out) {
  return command(out, [&] {
    require(datum, "descent datum");
    return pervq::cmd_descent_check(datum->value);
  });
}

pervq_status pervq_descent_glue(const pervq_descent* datum,
                                pervq_report** out) {
  return command(out, [&] {
    require(datum, "descent datum");
    return pervq::cmd_descent_glue(datum->value);
  });
}

pervq_status pervq_fan_print(const pervq_fan* fan, pervq_report** out) {
  return command(out, [&] {
    require(fan, "fan");
    pervq::CommandResult r;
    r.payload["fan"] = pervq::as_json(fan->value);
    return r;
  });
}

pervq_status pervq_descent_print(const pervq_descent* datum,
                                 pervq_report** out) {
  return command(out, [&] {
    require(datum, "descent datum");
    pervq::CommandResult r;
    r.payload["descent"] = pervq::as_json(datum->value);
    return r;
  });
}

int pervq_report_exit_code(const pervq_report* report) {
  return report ? report->exit_code : 2;
}

const char* pervq_report_json(const pervq_report* report) {
  return report ? report->json.c_str() : "";
}

void pervq_report_free(pervq_report* report) { delete report; }

}  // extern "C"
