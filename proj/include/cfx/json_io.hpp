#pragma once

// JSON parsing and serialization for every structured input and output:
// seeds, paths, loops, Laurent polynomials, filling sets, reflection-group
// inputs, and exact rational certificates.  Serialization goes through a
// local dumper so floating-point numbers always carry 17 significant digits
// and repeated runs produce byte-identical files.

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "cfx/laurent.hpp"
#include "cfx/ratmat.hpp"
#include "cfx/seed.hpp"
#include "cfx/weyl.hpp"

namespace cfx {

using Json = nlohmann::ordered_json;

// Deterministic writer: objects keep insertion order, floats use %.17g.
std::string dump_json(const Json& j, int indent = 2);

Json load_json_file(const std::string& path);  // InputError on I/O or parse failure
void write_text_file(const std::string& path, const std::string& text);

// Integers are emitted as JSON numbers when they fit in 64 bits and as
// decimal strings beyond that; both forms are accepted on input.
Json int_to_json(const Int& v);
Int int_from_json(const Json& j);

Json ivec_to_json(const IVec& v);
IVec ivec_from_json(const Json& j);
Json imat_to_json(const IMat& m);
IMat imat_from_json(const Json& j);

// Exact fractions travel as "p/q" strings.
Json rat_to_json(const Rat& q);
Rat rat_from_json(const Json& j);
Json qvec_to_json(const QVec& v);

Json seed_to_json(const ExchangeMatrix& ex);
ExchangeMatrix seed_from_json(const Json& j);

Json path_to_json(const Path& p);
Path path_from_json(const Json& j);

Json laurent_to_json(const LaurentPoly& f);
LaurentPoly laurent_from_json(const Json& j);

struct NamedLoop {
  std::string name;
  Path path;
};

// Accepts {"loops": [{"name"?, "path"}...]} or a single {"name"?, "path"}.
std::vector<NamedLoop> loops_from_json(const Json& j);

// {"elements": [laurent-with-optional-name, ...]}
std::vector<std::pair<std::string, LaurentPoly>> filling_from_json(const Json& j);

WeylInput weyl_from_json(const Json& j);
Json weyl_to_json(const WeylInput& w);

}  // namespace cfx
