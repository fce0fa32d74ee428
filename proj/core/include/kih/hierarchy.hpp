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

#ifndef KIH_HIERARCHY_HPP
#define KIH_HIERARCHY_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kih/hull.hpp"
#include "kih/pip.hpp"
#include "kih/tree.hpp"

namespace kih {

/// Exact binomial coefficient with an overflow guard.
long long binom(int m, int t);

/// All t-subsets of {0,..,m-1} in lexicographic order.
std::vector<std::vector<int>> lex_subsets(int m, int t);

enum class RankFamilyKind { Pairs, PerRowSupports, RootToLeafPaths, Explicit, ExhaustiveUpTo };

struct RankCutSpec {
  RankFamilyKind kind = RankFamilyKind::Pairs;
  std::vector<std::vector<int>> explicit_sets;  // Explicit / RootToLeafPaths
  int max_size = 2;                             // ExhaustiveUpTo
};

/// Builds the spec for the root-to-leaf family of a tree instance: one
/// column set per leaf, holding the requests routing entirely inside that
/// root-to-leaf path.
RankCutSpec rank_spec_root_to_leaf(const TreeInstance& tree);

struct RankCut {
  std::vector<int> columns;  // sorted
  int rank = 0;
};

struct RankCutFamily {
  RankCutSpec spec;
  std::vector<RankCut> cuts;
};

/// Computes exact ranks for the family and keeps the binding cuts
/// (rank < |S|); a cut at rank |S| is implied by the box. Enumeration
/// families refuse to expand past an internal budget.
RankCutFamily generate_rank_cuts(const PipInstance& pip, const RankCutSpec& spec);

struct HierarchyOptions {
  /// Skip subsets whose support carries only zeros of the current point;
  /// such subsets cannot be violated and verification recovers them.
  bool subset_filter = false;
  std::vector<RankCut> rank_cuts;
  /// Master re-solves before giving up; default 10·C(m,t).
  std::optional<long> iteration_budget;
  int jobs = 1;
};

/// A fully certified level-t optimum: x_star satisfies the base rows, the
/// rank cuts and every accumulated hull cut; `memberships` certifies
/// x_star ∈ K_I(S) for every queried subset, hence x_star ∈ P^t; each cut
/// is valid for the hull it came from, so value = max{w·x : x ∈ P^t}
/// (with rank cuts: over the rank-strengthened level).
struct HierarchyResult {
  int t = 0;
  bool subset_filter = false;
  std::vector<RankCut> rank_cuts;
  RatVec x_star;
  Rat value;
  std::vector<std::pair<std::vector<int>, CutCertificate>> cuts;
  std::vector<std::pair<std::vector<int>, ConvexCombination>> memberships;
  long iterations = 0;
};

/// Cutting-plane optimization over hierarchy level t: solve the master,
/// query membership for each |S| = t in lexicographic order, add every
/// violated cut (deduplicated after normalization), repeat until all
/// subsets certify Inside. Membership queries fan out over `jobs` workers
/// and merge in subset order, so parallel runs are byte-identical to
/// serial ones. Throws BudgetError when the iteration budget runs out.
HierarchyResult optimize_level(const PipInstance& pip, int t, const HierarchyOptions& opts = {});

struct LevelMembership {
  bool inside = false;
  std::vector<std::pair<std::vector<int>, ConvexCombination>> memberships;
  std::optional<std::pair<std::vector<int>, CutCertificate>> outside_witness;
};

/// Decides x ∈ P^t by querying every |S| = t subset; collects all Inside
/// certificates or stops at the first Outside witness.
LevelMembership point_in_level(const PipInstance& pip, int t, const RatVec& x, int jobs = 1);

/// Exact recheck of a HierarchyResult: base/rank/cut feasibility of
/// x_star, validity of every cut (re-priced) and rank value (re-solved),
/// every membership certificate, coverage of the full subset family, and
/// re-solved master optimality of `value`.
bool verify_hierarchy_result(const PipInstance& pip, const HierarchyResult& result);

/// Relaxation value of the instance: base rows plus optional rank cuts,
/// no hull cuts ("level 0").
Rat lp_value(const PipInstance& pip, const std::vector<RankCut>& rank_cuts = {});

struct GapRow {
  std::string instance_id;
  int k = 0;
  int m = 0;
  int t = 0;  // 0 means the plain relaxation
  std::string formulation;  // "plain" or "rank"
  Rat value;
  Rat ip_value;
  Rat gap;
  long iterations = 0;
  long cuts = 0;
};

struct GapReportOptions {
  bool with_rank = false;
  RankCutSpec rank_spec;
  bool subset_filter = false;
  std::optional<long> iteration_budget;
  int jobs = 1;
};

/// One row per (t, formulation): exact level value, exact IP optimum and
/// their ratio.
std::vector<GapRow> gap_report(const PipInstance& pip, const std::string& instance_id,
                               const std::vector<int>& t_list, const GapReportOptions& opts = {});

/// CSV serialization of a gap table (header + one line per row, all
/// numbers as exact "p/q" text).
std::string gap_report_csv(const std::vector<GapRow>& rows);

}  // namespace kih

#endif  // KIH_HIERARCHY_HPP
