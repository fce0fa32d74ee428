// Copyright 2026 The kih authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef KIH_JSON_IO_HPP
#define KIH_JSON_IO_HPP

#include <optional>
#include <string>

#include <json.hpp>

#include "kih/coloring.hpp"
#include "kih/hierarchy.hpp"
#include "kih/hull.hpp"
#include "kih/lp.hpp"
#include "kih/pip.hpp"
#include "kih/tree.hpp"

namespace kih {

// All rationals serialize as "p/q" text ("/q" omitted when q = 1); 0-1
// points over a support serialize as strings like "0101".

nlohmann::json rat_vec_to_json(const RatVec& v);
RatVec rat_vec_from_json(const nlohmann::json& j);

std::string bits_to_string(const Bits& b);
Bits bits_from_string(const std::string& s);

nlohmann::json pip_to_json(const PipInstance& pip);
PipInstance pip_from_json(const nlohmann::json& j);

nlohmann::json tree_to_json(const TreeInstance& tree);
TreeInstance tree_from_json(const nlohmann::json& j);

nlohmann::json convex_combination_to_json(const ConvexCombination& c);
ConvexCombination convex_combination_from_json(const nlohmann::json& j);

nlohmann::json cut_certificate_to_json(const CutCertificate& c);
CutCertificate cut_certificate_from_json(const nlohmann::json& j);

nlohmann::json lp_outcome_to_json(const LpOutcome& o);
LpOutcome lp_outcome_from_json(const nlohmann::json& j);

nlohmann::json hierarchy_result_to_json(const HierarchyResult& r);
HierarchyResult hierarchy_result_from_json(const nlohmann::json& j);

/// An instance file holds either a pip or a tree; trees also expose their
/// pip form (one row per edge).
struct LoadedInstance {
  std::optional<TreeInstance> tree;
  PipInstance pip;
};

LoadedInstance instance_from_json(const nlohmann::json& j);
LoadedInstance load_instance_file(const std::string& path);

nlohmann::json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const nlohmann::json& j);

}  // namespace kih

#endif  // KIH_JSON_IO_HPP
