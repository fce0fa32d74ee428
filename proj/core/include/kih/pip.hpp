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

#ifndef KIH_PIP_HPP
#define KIH_PIP_HPP

#include <string>
#include <vector>

#include "kih/rat.hpp"

namespace kih {

/// 0-1 selection over the support of a subsystem.
using Bits = std::vector<bool>;

/// Packing integer program  max{w·x : x ∈ {0,1}^n, Ax ≤ b}  with all data
/// nonnegative. Immutable after construction; `create` rejects negative
/// entries and any variable that is infeasible on its own (some A[i][j]
/// exceeding b[i]).
struct PipInstance {
  int n = 0;
  int m = 0;
  RatMat A;
  RatVec b;
  RatVec w;
  std::vector<std::string> row_labels;  // optional, empty or size m
  std::vector<std::string> col_labels;  // optional, empty or size n

  static PipInstance create(RatMat A, RatVec b, RatVec w,
                            std::vector<std::string> row_labels = {},
                            std::vector<std::string> col_labels = {});
};

/// A row subset S of a parent instance together with its support: the
/// columns carrying a positive coefficient in some selected row.
struct SubSystem {
  const PipInstance* pip = nullptr;
  std::vector<int> rows;     // sorted, unique
  std::vector<int> support;  // sorted

  std::size_t support_size() const { return support.size(); }
};

/// Builds the row-subset view. Throws InputError on an empty set or an
/// out-of-range row index.
SubSystem subsystem(const PipInstance& pip, std::vector<int> rows);

/// True iff the selection (indexed by the subsystem's support) respects
/// every selected row's capacity.
bool is_feasible_point(const SubSystem& sub, const Bits& x01);

/// Load of the selection on one parent row, counting support columns only.
Rat row_load(const SubSystem& sub, int row, const Bits& x01);

}  // namespace kih

#endif  // KIH_PIP_HPP
