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

// Independent brute-force oracles used to pin expected values. These stay
// deliberately separate from the solver paths they check: linear systems
// are solved by plain Gaussian elimination and 0-1 optima by full
// enumeration.

#ifndef KIH_TESTS_ORACLES_HPP
#define KIH_TESTS_ORACLES_HPP

#include <optional>
#include <random>
#include <vector>

#include "kih/hull.hpp"
#include "kih/lp.hpp"
#include "kih/pip.hpp"

namespace kih::testing {

/// Exact solve of a square rational system; nullopt when singular.
std::optional<RatVec> gaussian_solve(const RatMat& a, const RatVec& rhs);

/// LP optimum by enumerating every basic solution (all n-subsets of rows
/// taken as equalities plus active bounds). Requires finite bounds on all
/// variables; nullopt means infeasible.
std::optional<Rat> enum_lp_value(const LinearProgram& lp);

/// All feasible 0-1 points of a subsystem, in increasing binary order
/// (bit k of the counter drives support position k).
std::vector<Bits> enum_feasible_points(const SubSystem& sub);

/// Brute-force pricing maximum over all 2^support points.
Rat enum_max_weight(const SubSystem& sub, const RatVec& objective);

/// Brute-force rank: largest subset of `columns` feasible on all rows.
int enum_rank(const PipInstance& pip, const std::vector<int>& columns);

/// Membership decided by one LP over every enumerated feasible point.
bool exhaustive_membership(const SubSystem& sub, const RatVec& x_full);

/// Random packing instance honoring all PipInstance invariants.
PipInstance random_pip(std::mt19937_64& rng, int n_min, int n_max, int m_min, int m_max);

/// Random LP with finite bounds and integer data in [-9, 9].
LinearProgram random_lp(std::mt19937_64& rng, int max_vars = 5, int max_rows = 6);

/// Random rational with small numerator/denominator, possibly negative.
Rat random_rat(std::mt19937_64& rng, long num_range = 9, long den_range = 4);

}  // namespace kih::testing

#endif  // KIH_TESTS_ORACLES_HPP
