#pragma once

#include <json.hpp>

#include "ikd/kernel.hpp"

namespace ikd {

nlohmann::json proof_to_json(const Proof& t);
// Builds an unchecked tree; run check_proof on the result.
Proof proof_from_json(const nlohmann::json& j);

}  // namespace ikd
