#pragma once

#include <vector>

#include "dgc/cech.hpp"
#include "dgc/json_io.hpp"

namespace dgc {

// {"schema":1, "kind":"cover", "points":[[...]], "levels":[{"bidegree":[m,n], "sets":[[...]]}],
//  "fill":"whole"|"singletons"}. Level sets hold cell indices in nerve order.
RawCover raw_cover_from_json(const Json& j);
Json raw_cover_to_json(const RawCover& c);

// {"schema":1, "kind":"cover_chain", "covers":[cover bodies, coarse to fine]}.
std::vector<RawCover> cover_chain_from_json(const Json& j);

}  // namespace dgc
