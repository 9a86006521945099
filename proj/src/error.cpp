#include "pervq/error.hpp"

namespace pervq {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Shape: return "shape";
    case ErrorKind::NotInvertible: return "not-invertible";
    case ErrorKind::NotCompletable: return "not-completable";
    case ErrorKind::NonUnimodular: return "non-unimodular";
    case ErrorKind::NotSmooth: return "not-smooth";
    case ErrorKind::InvalidFan: return "invalid-fan";
    case ErrorKind::UnknownCone: return "unknown-cone";
    case ErrorKind::IllPosed: return "ill-posed";
    case ErrorKind::Parse: return "parse";
    case ErrorKind::Missing: return "missing";
    case ErrorKind::InvalidArgument: return "invalid-argument";
    case ErrorKind::ValidationFailed: return "validation-failed";
  }
  return "unknown";
}

}  // namespace pervq
