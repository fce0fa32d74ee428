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

#ifndef KIH_KNAPSACK_HPP
#define KIH_KNAPSACK_HPP

#include <optional>

#include "kih/pip.hpp"

namespace kih {

/// A feasible 0-1 point of a subsystem together with its exact objective
/// value.
struct PricingResult {
  Bits point;  // over the subsystem support
  Rat value;
};

struct BnbOptions {
  /// Abort with BudgetError after this many search nodes; never a wrong
  /// answer. Unset means no limit.
  std::optional<long> node_budget;
};

/// Globally optimal 0-1 point of the knapsack intersection
/// max{objective·z : z feasible for the subsystem}. Depth-first branch and
/// bound over support columns ordered by decreasing objective/weight
/// density, bounded by the cheapest single-row fractional relaxation.
/// Among ties the lexicographically smallest point in column order is
/// returned, so certificates are deterministic. Entries with objective
/// ≤ 0 are fixed to zero (packing monotonicity).
PricingResult max_weight_feasible(const SubSystem& sub, const RatVec& objective,
                                  const BnbOptions& opts = {});

/// rank(S) = size of the largest subset of the given columns that is
/// feasible for every row of the instance.
int rank(const PipInstance& pip, const std::vector<int>& columns,
         const BnbOptions& opts = {});

/// Exact 0-1 optimum of the whole instance.
struct IpResult {
  Bits point;  // over all n columns
  Rat value;
};
IpResult ip_solve(const PipInstance& pip, const BnbOptions& opts = {});

}  // namespace kih

#endif  // KIH_KNAPSACK_HPP
