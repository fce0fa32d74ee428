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

#include "kih/pip.hpp"

#include <algorithm>

#include "kih/error.hpp"

namespace kih {

PipInstance PipInstance::create(RatMat A, RatVec b, RatVec w,
                                std::vector<std::string> row_labels,
                                std::vector<std::string> col_labels) {
  PipInstance p;
  p.m = static_cast<int>(A.rows());
  p.n = static_cast<int>(A.cols());
  if (b.size() != A.rows()) throw InputError("PipInstance: b length != row count");
  if (w.size() != A.cols()) throw InputError("PipInstance: w length != column count");
  if (!row_labels.empty() && row_labels.size() != A.rows())
    throw InputError("PipInstance: row_labels length != row count");
  if (!col_labels.empty() && col_labels.size() != A.cols())
    throw InputError("PipInstance: col_labels length != column count");
  for (std::size_t i = 0; i < b.size(); ++i)
    if (b[i].sign() < 0) throw InputError("PipInstance: negative b entry");
  for (std::size_t j = 0; j < w.size(); ++j)
    if (w[j].sign() < 0) throw InputError("PipInstance: negative profit");
  for (std::size_t i = 0; i < A.rows(); ++i) {
    for (std::size_t j = 0; j < A.cols(); ++j) {
      const Rat& a = A.at(i, j);
      if (a.sign() < 0) throw InputError("PipInstance: negative coefficient");
      // Individually infeasible variables are rejected, not fixed to zero.
      if (a > b[i])
        throw InputError("PipInstance: variable " + std::to_string(j) +
                         " infeasible on its own in row " + std::to_string(i));
    }
  }
  p.A = std::move(A);
  p.b = std::move(b);
  p.w = std::move(w);
  p.row_labels = std::move(row_labels);
  p.col_labels = std::move(col_labels);
  return p;
}

SubSystem subsystem(const PipInstance& pip, std::vector<int> rows) {
  if (rows.empty()) throw InputError("subsystem: empty row set");
  std::sort(rows.begin(), rows.end());
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
  for (int r : rows)
    if (r < 0 || r >= pip.m)
      throw InputError("subsystem: row index " + std::to_string(r) + " out of range");
  SubSystem s;
  s.pip = &pip;
  s.rows = std::move(rows);
  for (int j = 0; j < pip.n; ++j) {
    for (int r : s.rows) {
      if (pip.A.at(r, j).sign() > 0) {
        s.support.push_back(j);
        break;
      }
    }
  }
  return s;
}

Rat row_load(const SubSystem& sub, int row, const Bits& x01) {
  if (x01.size() != sub.support.size())
    throw InputError("row_load: selection length != support size");
  Rat load;
  for (std::size_t k = 0; k < sub.support.size(); ++k)
    if (x01[k]) load += sub.pip->A.at(row, sub.support[k]);
  return load;
}

bool is_feasible_point(const SubSystem& sub, const Bits& x01) {
  for (int r : sub.rows)
    if (row_load(sub, r, x01) > sub.pip->b[r]) return false;
  return true;
}

}  // namespace kih
