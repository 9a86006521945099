#pragma once

// JSON forms of every library object. Rationals are strings "p/q" or "p";
// index sets appear as keys in the form "1,2" ("" for the empty set).

#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "pervq/descent.hpp"

namespace pervq {

using Json = nlohmann::json;

/// Throws Parse with the parser's position on malformed text.
Json parse_json(std::string_view text);
/// Two-space indented, keys sorted, trailing newline.
std::string dump_json(const Json& j);

Json as_json(const RatMatrix& m);
Json as_json(const IntMatrix& m);
RatMatrix rat_matrix_from_json(const Json& j, const std::string& what);
IntMatrix int_matrix_from_json(const Json& j, const std::string& what);

Json as_json(const Fan& fan);
Fan fan_from_json(const Json& j);

Json as_json(const Quiver& quiver);
Quiver quiver_from_json(const Json& j);

/// Resolves the "quiver" member of a representation: an inline quiver, or
/// one of "hypercube:<n>", "arrangement:<n>", "fan" (needs `fan`), and
/// "chart:<K>" (needs `fan`).
Quiver resolve_quiver(const Json& j, const Fan* fan);

/// Every vertex needs a dimension and every nonempty map must be present.
Representation rep_from_json(const Json& j, const Fan* fan = nullptr);
/// `quiver` is written verbatim as the "quiver" member.
Json as_json(const Representation& rep, const Json& quiver);
/// The representation with its quiver written inline.
Json as_json(const Representation& rep);

DescentDatum descent_from_json(const Json& j);
Json as_json(const DescentDatum& datum);

Json as_json(const Violation& v);
Json as_json(const Morphism& m, const Quiver& quiver);

}  // namespace pervq
