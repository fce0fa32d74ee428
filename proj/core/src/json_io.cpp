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

#include "kih/json_io.hpp"

#include <fstream>

#include "kih/error.hpp"

namespace kih {

using nlohmann::json;

nlohmann::json rat_vec_to_json(const RatVec& v) {
  json a = json::array();
  for (const Rat& r : v) a.push_back(r.to_string());
  return a;
}

RatVec rat_vec_from_json(const json& j) {
  if (!j.is_array()) throw InputError("json: expected an array of rationals");
  RatVec v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) v[i] = Rat::from_string(j[i].get<std::string>());
  return v;
}

std::string bits_to_string(const Bits& b) {
  std::string s(b.size(), '0');
  for (std::size_t i = 0; i < b.size(); ++i)
    if (b[i]) s[i] = '1';
  return s;
}

Bits bits_from_string(const std::string& s) {
  Bits b(s.size(), false);
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '1')
      b[i] = true;
    else if (s[i] != '0')
      throw InputError("json: 0-1 point string has a character other than 0/1");
  }
  return b;
}

nlohmann::json pip_to_json(const PipInstance& pip) {
  json j;
  j["kind"] = "pip";
  j["n"] = pip.n;
  j["m"] = pip.m;
  json rows = json::array();
  for (int i = 0; i < pip.m; ++i) rows.push_back(rat_vec_to_json(pip.A.row(i)));
  j["A"] = std::move(rows);
  j["b"] = rat_vec_to_json(pip.b);
  j["w"] = rat_vec_to_json(pip.w);
  if (!pip.row_labels.empty()) j["row_labels"] = pip.row_labels;
  if (!pip.col_labels.empty()) j["col_labels"] = pip.col_labels;
  return j;
}

PipInstance pip_from_json(const json& j) {
  int n = j.at("n").get<int>();
  int m = j.at("m").get<int>();
  if (n < 0 || m < 0) throw InputError("pip json: negative dimensions");
  const json& rows = j.at("A");
  if (static_cast<int>(rows.size()) != m) throw InputError("pip json: A has wrong row count");
  RatMat A(m, n);
  for (int i = 0; i < m; ++i) {
    RatVec row = rat_vec_from_json(rows[i]);
    if (static_cast<int>(row.size()) != n) throw InputError("pip json: A row length != n");
    for (int c = 0; c < n; ++c) A.at(i, c) = row[c];
  }
  RatVec b = rat_vec_from_json(j.at("b"));
  RatVec w = rat_vec_from_json(j.at("w"));
  std::vector<std::string> row_labels, col_labels;
  if (j.contains("row_labels")) row_labels = j["row_labels"].get<std::vector<std::string>>();
  if (j.contains("col_labels")) col_labels = j["col_labels"].get<std::vector<std::string>>();
  return PipInstance::create(std::move(A), std::move(b), std::move(w), std::move(row_labels),
                             std::move(col_labels));
}

nlohmann::json tree_to_json(const TreeInstance& tree) {
  json j;
  j["kind"] = "tree";
  j["root"] = tree.root;
  j["vertices"] = tree.vertices;
  json edges = json::array();
  for (const TreeEdge& e : tree.edges)
    edges.push_back({{"u", e.u}, {"v", e.v}, {"capacity", e.capacity.to_string()}});
  j["edges"] = std::move(edges);
  json requests = json::array();
  for (const Request& r : tree.requests)
    requests.push_back({{"id", r.id},
                        {"s", r.s},
                        {"t", r.t},
                        {"demand", r.demand.to_string()},
                        {"profit", r.profit.to_string()}});
  j["requests"] = std::move(requests);
  return j;
}

TreeInstance tree_from_json(const json& j) {
  TreeInstance t;
  t.root = j.at("root").get<int>();
  t.vertices = j.at("vertices").get<std::vector<int>>();
  for (const json& e : j.at("edges"))
    t.edges.push_back({e.at("u").get<int>(), e.at("v").get<int>(),
                       Rat::from_string(e.at("capacity").get<std::string>())});
  for (const json& r : j.at("requests"))
    t.requests.push_back({r.at("id").get<int>(), r.at("s").get<int>(), r.at("t").get<int>(),
                          Rat::from_string(r.at("demand").get<std::string>()),
                          Rat::from_string(r.at("profit").get<std::string>())});
  t.finalize();
  return t;
}

nlohmann::json convex_combination_to_json(const ConvexCombination& c) {
  json atoms = json::array();
  for (const auto& a : c.atoms)
    atoms.push_back({{"point", bits_to_string(a.point)}, {"weight", a.weight.to_string()}});
  return json{{"atoms", std::move(atoms)}};
}

ConvexCombination convex_combination_from_json(const json& j) {
  ConvexCombination c;
  for (const json& a : j.at("atoms"))
    c.atoms.push_back({bits_from_string(a.at("point").get<std::string>()),
                       Rat::from_string(a.at("weight").get<std::string>())});
  return c;
}

nlohmann::json cut_certificate_to_json(const CutCertificate& c) {
  return json{{"coeffs", rat_vec_to_json(c.coeffs)},
              {"rhs", c.rhs.to_string()},
              {"witness",
               {{"point", bits_to_string(c.validity_witness.point)},
                {"value", c.validity_witness.value.to_string()}}},
              {"violation", c.violation.to_string()}};
}

CutCertificate cut_certificate_from_json(const json& j) {
  CutCertificate c;
  c.coeffs = rat_vec_from_json(j.at("coeffs"));
  c.rhs = Rat::from_string(j.at("rhs").get<std::string>());
  c.validity_witness.point = bits_from_string(j.at("witness").at("point").get<std::string>());
  c.validity_witness.value = Rat::from_string(j.at("witness").at("value").get<std::string>());
  c.violation = Rat::from_string(j.at("violation").get<std::string>());
  return c;
}

nlohmann::json lp_outcome_to_json(const LpOutcome& o) {
  if (const auto* opt = std::get_if<LpOptimal>(&o))
    return json{{"status", "optimal"},
                {"x", rat_vec_to_json(opt->x)},
                {"value", opt->value.to_string()},
                {"duals", rat_vec_to_json(opt->duals)}};
  if (const auto* inf = std::get_if<LpInfeasible>(&o))
    return json{{"status", "infeasible"}, {"farkas", rat_vec_to_json(inf->farkas)}};
  const auto& ray = std::get<LpUnbounded>(o);
  return json{{"status", "unbounded"}, {"ray", rat_vec_to_json(ray.ray)}};
}

LpOutcome lp_outcome_from_json(const json& j) {
  std::string status = j.at("status").get<std::string>();
  if (status == "optimal")
    return LpOptimal{rat_vec_from_json(j.at("x")),
                     Rat::from_string(j.at("value").get<std::string>()),
                     rat_vec_from_json(j.at("duals"))};
  if (status == "infeasible") return LpInfeasible{rat_vec_from_json(j.at("farkas"))};
  if (status == "unbounded") return LpUnbounded{rat_vec_from_json(j.at("ray"))};
  throw InputError("lp outcome json: unknown status \"" + status + "\"");
}

nlohmann::json hierarchy_result_to_json(const HierarchyResult& r) {
  json rank_cuts = json::array();
  for (const RankCut& rc : r.rank_cuts)
    rank_cuts.push_back({{"columns", rc.columns}, {"rank", rc.rank}});
  json cuts = json::array();
  for (const auto& [rows, cut] : r.cuts)
    cuts.push_back({{"rows", rows}, {"cut", cut_certificate_to_json(cut)}});
  json memberships = json::array();
  for (const auto& [rows, comb] : r.memberships)
    memberships.push_back({{"rows", rows}, {"certificate", convex_combination_to_json(comb)}});
  return json{{"t", r.t},
              {"subset_filter", r.subset_filter},
              {"rank_cuts", std::move(rank_cuts)},
              {"x_star", rat_vec_to_json(r.x_star)},
              {"value", r.value.to_string()},
              {"iterations", r.iterations},
              {"cuts", std::move(cuts)},
              {"memberships", std::move(memberships)}};
}

HierarchyResult hierarchy_result_from_json(const json& j) {
  HierarchyResult r;
  r.t = j.at("t").get<int>();
  r.subset_filter = j.at("subset_filter").get<bool>();
  for (const json& rc : j.at("rank_cuts"))
    r.rank_cuts.push_back({rc.at("columns").get<std::vector<int>>(), rc.at("rank").get<int>()});
  r.x_star = rat_vec_from_json(j.at("x_star"));
  r.value = Rat::from_string(j.at("value").get<std::string>());
  r.iterations = j.at("iterations").get<long>();
  for (const json& c : j.at("cuts"))
    r.cuts.emplace_back(c.at("rows").get<std::vector<int>>(),
                        cut_certificate_from_json(c.at("cut")));
  for (const json& m : j.at("memberships"))
    r.memberships.emplace_back(m.at("rows").get<std::vector<int>>(),
                               convex_combination_from_json(m.at("certificate")));
  return r;
}

LoadedInstance instance_from_json(const json& j) {
  std::string kind = j.at("kind").get<std::string>();
  LoadedInstance li;
  if (kind == "tree") {
    li.tree = tree_from_json(j);
    li.pip = to_pip(*li.tree);
  } else if (kind == "pip") {
    li.pip = pip_from_json(j);
  } else {
    throw InputError("instance json: unknown kind \"" + kind + "\"");
  }
  return li;
}

LoadedInstance load_instance_file(const std::string& path) {
  return instance_from_json(read_json_file(path));
}

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open \"" + path + "\"");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw InputError("malformed JSON in \"" + path + "\": " + e.what());
  }
  return j;
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write \"" + path + "\"");
  out << j.dump(2) << "\n";
}

}  // namespace kih
