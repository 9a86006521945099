#pragma once

// Command-level operations behind the CLI and the C API. Each returns a
// status and a JSON payload; library errors become status Error.

#include <cstdint>
#include <optional>
#include <string>

#include "pervq/io.hpp"

namespace pervq {

enum class Status { Ok = 0, Violation = 1, Error = 2 };

struct CommandResult {
  Status status = Status::Ok;
  Json payload = Json::object();
  std::optional<ErrorKind> error;

  int exit_code() const noexcept { return static_cast<int>(status); }
  /// The payload with a "status" member added.
  Json report() const;
};

std::string_view to_string(Status status);

CommandResult error_result(const Error& e);

enum class Category { Cn, CSigma, CDelta };
/// "cn", "csigma" or "cdelta"; throws InvalidArgument otherwise.
Category parse_category(std::string_view name);

CommandResult cmd_fan_validate(const Fan& fan);
CommandResult cmd_fan_dual(const Fan& fan);
CommandResult cmd_fan_gluing(const Fan& fan);

CommandResult cmd_quiver_build_fan(const Fan& fan);
CommandResult cmd_quiver_build_hypercube(int n);
CommandResult cmd_quiver_build_arrangement(int lines);

CommandResult cmd_rep_validate(const Representation& rep, Category category,
                               const Fan* fan);
CommandResult cmd_rep_hom(const Representation& a, const Representation& b);
CommandResult cmd_rep_iso(const Representation& a, const Representation& b,
                          const IsoOptions& options);

CommandResult cmd_descent_check(const DescentDatum& datum);
CommandResult cmd_descent_glue(const DescentDatum& datum);

/// Runs `body`, turning a thrown Error into an error result.
template <class F>
CommandResult guarded(F&& body) {
  try {
    return body();
  } catch (const Error& e) {
    return error_result(e);
  }
}

}  // namespace pervq
