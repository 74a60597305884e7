#pragma once

// JSON documents for fans, actions and field descriptors, and the report
// builders shared by the command-line tool. Integers are JSON numbers when
// they fit in 64 bits and decimal strings otherwise; floats are rejected.

#include "toricsym/divisors.hpp"
#include "toricsym/fan.hpp"
#include "toricsym/mmp.hpp"
#include "toricsym/qfield.hpp"
#include "toricsym/symmetry.hpp"

#include <json.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace toricsym {

using Json = nlohmann::ordered_json;

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Json integer_to_json(const Integer& x);
Integer integer_from_json(const Json& j);
Json vector_to_json(const IntVector& v);
IntVector vector_from_json(const Json& j);
Json matrix_to_json(const IntMatrix& m);
IntMatrix matrix_from_json(const Json& j);

// {"lattice": "...", "rays": [[...], ...], "max_cones": [[i, j], ...]}
// Rays of an A2 lattice may be given in ambient Z^3 form. max_cones may be
// omitted for rank 2, in which case the cones come from the angular order.
Fan fan_from_json(const Json& j);
// Emits ambient coordinates for A2 lattices and always lists max_cones.
Json fan_to_json(const Fan& fan);

// {"generators": [matrix | "s3" | "negation", ...], "names": [...],
//  "galois": matrix}. Everything is optional; "generators" may also be the
// bare string "s3".
struct ActionSpec {
  std::vector<IntMatrix> generators;
  std::vector<std::string> names;
  std::optional<IntMatrix> galois;
};

ActionSpec action_from_json(const Json& j, const Lattice& lattice);
Json action_to_json(const ActionSpec& a);

// {"name": "...", "kind": "rationals" | "reals" | "quadratic", "d": k,
//  "star_clause2": bool, "star_clause3": bool,
//  "witness": ["expr", "expr"]}; witness expressions use quad_eval syntax.
FieldDescriptor field_from_json(const Json& j);

Json read_json_file(const std::string& path);

Json group_to_json(const FGAbelianGroup& g);

// Flags, class group, blocks, relations; orbits, faithfulness, invariant
// Picard number and form class when an action is given.
Json check_report(const Fan& fan, const std::optional<GroupAction>& g, const std::optional<GaloisDatum>& galois);
Json orbit_report(const Fan& fan, const GroupAction& g);
Json trace_to_json(const MMPTrace& t);

// Indented "key: value" rendering of a report document.
std::string render_plain(const Json& j);

}  // namespace toricsym
