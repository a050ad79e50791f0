#pragma once

#include <json.hpp>

namespace powpres {

// Key order is part of the byte-identical output contract, so the ordered
// variant is used everywhere.
using Json = nlohmann::ordered_json;

}  // namespace powpres
