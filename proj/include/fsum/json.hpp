#pragma once

#include <json.hpp>

namespace fsum {

// Insertion-ordered so that reports serialize byte-identically across runs.
using Json = nlohmann::ordered_json;

} // namespace fsum
