#pragma once

// Internal glue between core types and nlohmann::json. Kept out of the
// public headers so installed consumers do not need the vendored json.hpp.

#include <json.hpp>

#include "carnot/hermitian.hpp"

namespace carnot::detail {

nlohmann::json hermitian_to_json(const HermitianOperator& op);
HermitianOperator hermitian_from_json(const nlohmann::json& j);

}  // namespace carnot::detail
