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

#ifndef KIH_LP_HPP
#define KIH_LP_HPP

#include <optional>
#include <variant>
#include <vector>

#include "kih/rat.hpp"

namespace kih {

enum class RowSense { LessEq, Eq, GreaterEq };

struct LpRow {
  RatVec coeffs;
  Rat rhs;
  RowSense sense = RowSense::LessEq;
};

/// Variable bounds; an absent side means unbounded in that direction.
struct VarBounds {
  std::optional<Rat> lower;
  std::optional<Rat> upper;
};

/// max objective·x  subject to  rows  and  lower ≤ x ≤ upper.
struct LinearProgram {
  RatVec objective;
  std::vector<LpRow> rows;
  std::vector<VarBounds> bounds;

  std::size_t num_vars() const { return objective.size(); }
  /// Throws InputError on any dimension mismatch or lower > upper.
  void validate() const;
};

/// x satisfies every row and bound exactly; duals are sign-feasible
/// (y_i ≥ 0 on ≤ rows, y_i ≤ 0 on ≥ rows, free on = rows), complementary
/// slackness holds, and the dual objective equals `value`.
struct LpOptimal {
  RatVec x;
  Rat value;
  RatVec duals;
};

/// Row multipliers for the ≤-normalized system (≥ rows negated), all ≥ 0
/// on inequality rows, whose combined inequality has a box-minimum
/// strictly above its combined right-hand side.
struct LpInfeasible {
  RatVec farkas;
};

/// Feasible direction with positive objective: A·ray respects every row
/// sense at rate ≤ 0 / = 0 / ≥ 0, and ray_j is only nonzero towards an
/// infinite bound.
struct LpUnbounded {
  RatVec ray;
};

using LpOutcome = std::variant<LpOptimal, LpInfeasible, LpUnbounded>;

/// Exact bounded-variable primal simplex, Bland pivoting (terminates on
/// every input), two phases with explicit artificials. Deterministic:
/// identical inputs give identical outcomes. Each returned certificate is
/// self-checked before it leaves the solver.
LpOutcome solve_lp(const LinearProgram& lp);

/// True iff the outcome's certificate invariants hold exactly for `lp`.
/// Never throws; any shape mismatch or violated invariant returns false.
bool verify_lp_outcome(const LinearProgram& lp, const LpOutcome& outcome);

}  // namespace kih

#endif  // KIH_LP_HPP
