/* C interface to libpervq.
 *
 * Objects are opaque handles created by the *_parse functions and released
 * with the matching *_free. Every command produces a report: a status and a
 * JSON document. Functions return a pervq_status; on failure the message is
 * available from pervq_last_error() until the next call on the same thread.
 */
#ifndef PERVQ_PERVQ_H
#define PERVQ_PERVQ_H

#include <stddef.h>
#include <stdint.h>

#if defined(PERVQ_BUILDING)
#define PERVQ_API __attribute__((visibility("default")))
#else
#define PERVQ_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct pervq_fan pervq_fan;
typedef struct pervq_rep pervq_rep;
typedef struct pervq_descent pervq_descent;
typedef struct pervq_report pervq_report;

typedef enum pervq_status {
  PERVQ_OK = 0,
  PERVQ_VIOLATION = 1,
  PERVQ_ERR_SHAPE = 2,
  PERVQ_ERR_NOT_INVERTIBLE,
  PERVQ_ERR_NOT_COMPLETABLE,
  PERVQ_ERR_NON_UNIMODULAR,
  PERVQ_ERR_NOT_SMOOTH,
  PERVQ_ERR_INVALID_FAN,
  PERVQ_ERR_UNKNOWN_CONE,
  PERVQ_ERR_ILL_POSED,
  PERVQ_ERR_PARSE,
  PERVQ_ERR_MISSING,
  PERVQ_ERR_INVALID_ARGUMENT,
  PERVQ_ERR_VALIDATION_FAILED,
  PERVQ_ERR_INTERNAL
} pervq_status;

PERVQ_API const char* pervq_version(void);
PERVQ_API const char* pervq_last_error(void);
/* Kebab-case name of a status, e.g. "not-invertible". */
PERVQ_API const char* pervq_status_name(pervq_status status);

PERVQ_API pervq_status pervq_fan_parse(const char* json, pervq_fan** out);
PERVQ_API void pervq_fan_free(pervq_fan* fan);

/* `fan` may be NULL unless the representation's quiver refers to one. */
PERVQ_API pervq_status pervq_rep_parse(const char* json, const pervq_fan* fan,
                                       pervq_rep** out);
PERVQ_API void pervq_rep_free(pervq_rep* rep);

PERVQ_API pervq_status pervq_descent_parse(const char* json,
                                           pervq_descent** out);
PERVQ_API void pervq_descent_free(pervq_descent* datum);

/* Commands. The report is written even when the status is an error. */
PERVQ_API pervq_status pervq_fan_validate(const pervq_fan* fan,
                                          pervq_report** out);
PERVQ_API pervq_status pervq_fan_dual(const pervq_fan* fan,
                                      pervq_report** out);
PERVQ_API pervq_status pervq_fan_gluing(const pervq_fan* fan,
                                        pervq_report** out);

PERVQ_API pervq_status pervq_quiver_build_fan(const pervq_fan* fan,
                                              pervq_report** out);
PERVQ_API pervq_status pervq_quiver_build_hypercube(int n, pervq_report** out);
PERVQ_API pervq_status pervq_quiver_build_arrangement(int lines,
                                                      pervq_report** out);

/* category: "cn", "csigma" or "cdelta" (the last needs `fan`). */
PERVQ_API pervq_status pervq_rep_validate(const pervq_rep* rep,
                                          const char* category,
                                          const pervq_fan* fan,
                                          pervq_report** out);
PERVQ_API pervq_status pervq_rep_hom(const pervq_rep* a, const pervq_rep* b,
                                     pervq_report** out);
PERVQ_API pervq_status pervq_rep_iso(const pervq_rep* a, const pervq_rep* b,
                                     uint64_t seed, size_t max_attempts,
                                     pervq_report** out);
/* Canonical JSON of a parsed representation; `quiver_json` is written as
 * its "quiver" member. */
PERVQ_API pervq_status pervq_rep_print(const pervq_rep* rep,
                                       const char* quiver_json,
                                       pervq_report** out);

PERVQ_API pervq_status pervq_descent_check(const pervq_descent* datum,
                                           pervq_report** out);
PERVQ_API pervq_status pervq_descent_glue(const pervq_descent* datum,
                                          pervq_report** out);

/* Canonical JSON of a parsed object. */
PERVQ_API pervq_status pervq_fan_print(const pervq_fan* fan,
                                       pervq_report** out);
PERVQ_API pervq_status pervq_descent_print(const pervq_descent* datum,
                                           pervq_report** out);

/* 0 ok, 1 violation, 2 error. */
PERVQ_API int pervq_report_exit_code(const pervq_report* report);
/* Owned by the report; valid until pervq_report_free. */
PERVQ_API const char* pervq_report_json(const pervq_report* report);
PERVQ_API void pervq_report_free(pervq_report* report);

#ifdef __cplusplus
}
#endif

#endif /* PERVQ_PERVQ_H */
