// JSON form of pc-presentations.
#pragma once

#include <string>

#include "json.hpp"
#include "ptree/pcgroup.hpp"

namespace ptree {

nlohmann::json to_json(const PcGroup& G);
PcGroup pc_from_json(const nlohmann::json& j);
// compact canonical text of the presentation (stable field order)
std::string serialize(const PcGroup& G);

}  // namespace ptree
