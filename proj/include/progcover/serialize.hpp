#pragma once

// JSON forms used by instance files and CLI output. Every number is an exact
// rational string ("p/q" or "p"), never a JSON float.
//
//   descriptor   {"r": "2", "m": 2}
//   element      ["0", "1"]         coordinates over 1, q, ..., q^(m-1)
//                "3/2"              shorthand for a rational element
//   ap           {"v": <element>, "d": <element>}
//   gp           {"u": <element>, "q": <element>}
//   instance     {"descriptor": ..., "mode": "ap"|"gp", "elements": [<element>, ...]}
//
// A missing descriptor means Q.

#include "progcover/bounds.hpp"
#include "progcover/errors.hpp"
#include "progcover/cover.hpp"
#include "progcover/progressions.hpp"

#include <json.hpp>

#include <string>

namespace progcover {

using Json = nlohmann::ordered_json;

// Schema violations, reported with the JSON pointer of the offending value.
class schema_error : public usage_error {
public:
    schema_error(const std::string& pointer, const std::string& what)
        : usage_error((pointer.empty() ? std::string("(root)") : pointer) + ": " + what), pointer_(pointer) {}
    const std::string& pointer() const noexcept { return pointer_; }

private:
    std::string pointer_;
};

// Parses text, turning syntax errors into usage_error with line/column.
Json parse_json_text(const std::string& text, const std::string& source);

RootDescriptor descriptor_from_json(const Json& j, const std::string& pointer = "/descriptor");
FieldElement element_from_json(const Json& j, const RootDescriptor& d, const std::string& pointer);
ArithmeticProgression ap_from_json(const Json& j, const RootDescriptor& d, const std::string& pointer = "/ap");
GeometricProgression gp_from_json(const Json& j, const RootDescriptor& d, const std::string& pointer = "/gp");
CoverInstance instance_from_json(const Json& j);
// Rational from a JSON string or integer.
Rational rational_from_json(const Json& j, const std::string& pointer);

Json to_json(const RootDescriptor& d);
Json to_json(const FieldElement& x);
Json to_json(const ArithmeticProgression& ap);
Json to_json(const GeometricProgression& gp);
Json to_json(const IntersectionPoint& p);
Json to_json(const CoverSolution& s);
Json to_json(const Lemma1Report& r);
Json to_json(const Theorem2Cover& c);
Json to_json(const BoundRow& row, bool with_runtime);
Json to_json(const BoundReport& r, bool with_runtime);
Json to_json(const DensityReport& r);
Json to_json(const FilterResult& r);

} // namespace progcover
