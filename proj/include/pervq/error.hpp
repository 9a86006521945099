#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pervq {

enum class ErrorKind {
  Shape,
  NotInvertible,
  NotCompletable,
  NonUnimodular,
  NotSmooth,
  InvalidFan,
  UnknownCone,
  IllPosed,
  Parse,
  Missing,
  InvalidArgument,
  ValidationFailed,
};

std::string_view to_string(ErrorKind kind);

/// Base exception for every recoverable failure raised by the library.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace pervq
