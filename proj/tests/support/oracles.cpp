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

#include "oracles.hpp"

#include <algorithm>

namespace kih::testing {

std::optional<RatVec> gaussian_solve(const RatMat& a, const RatVec& rhs) {
  const std::size_t n = a.rows();
  if (a.cols() != n || rhs.size() != n) return std::nullopt;
  std::vector<std::vector<Rat>> m(n, std::vector<Rat>(n + 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m[i][j] = a.at(i, j);
    m[i][n] = rhs[i];
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m[pivot][col].is_zero()) ++pivot;
    if (pivot == n) return std::nullopt;
    std::swap(m[col], m[pivot]);
    Rat inv = Rat(1) / m[col][col];
    for (std::size_t j = col; j <= n; ++j) m[col][j] *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || m[i][col].is_zero()) continue;
      Rat f = m[i][col];
      for (std::size_t j = col; j <= n; ++j) m[i][j] -= f * m[col][j];
    }
  }
  RatVec x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = m[i][n];
  return x;
}

std::optional<Rat> enum_lp_value(const LinearProgram& lp) {
  const std::size_t n = lp.num_vars();
  struct Constraint {
    RatVec coeffs;
    Rat rhs;
    bool mandatory;
  };
  std::vector<Constraint> pool;
  for (const auto& row : lp.rows)
    pool.push_back({row.coeffs, row.rhs, row.sense == RowSense::Eq});
  for (std::size_t j = 0; j < n; ++j) {
    if (!lp.bounds[j].lower || !lp.bounds[j].upper)
      throw InputError("enum_lp_value: needs finite bounds");
    RatVec e(n);
    e[j] = Rat(1);
    pool.push_back({e, *lp.bounds[j].lower, false});
    pool.push_back({e, *lp.bounds[j].upper, false});
  }

  std::vector<std::size_t> mandatory, optional_idx;
  for (std::size_t i = 0; i < pool.size(); ++i)
    (pool[i].mandatory ? mandatory : optional_idx).push_back(i);
  if (mandatory.size() > n) return std::nullopt;

  auto feasible = [&](const RatVec& x) {
    for (std::size_t j = 0; j < n; ++j)
      if (x[j] < *lp.bounds[j].lower || x[j] > *lp.bounds[j].upper) return false;
    for (const auto& row : lp.rows) {
      Rat lhs = row.coeffs.dot(x);
      switch (row.sense) {
        case RowSense::LessEq: if (lhs > row.rhs) return false; break;
        case RowSense::Eq: if (lhs != row.rhs) return false; break;
        case RowSense::GreaterEq: if (lhs < row.rhs) return false; break;
      }
    }
    return true;
  };

  std::optional<Rat> best;
  std::size_t need = n - mandatory.size();
  std::vector<std::size_t> pick(need);
  auto try_candidate = [&](const std::vector<std::size_t>& chosen) {
    RatMat sys(n, n);
    RatVec rhs(n);
    std::size_t r = 0;
    for (std::size_t idx : mandatory) {
      for (std::size_t j = 0; j < n; ++j) sys.at(r, j) = pool[idx].coeffs[j];
      rhs[r] = pool[idx].rhs;
      ++r;
    }
    for (std::size_t idx : chosen) {
      for (std::size_t j = 0; j < n; ++j) sys.at(r, j) = pool[idx].coeffs[j];
      rhs[r] = pool[idx].rhs;
      ++r;
    }
    auto x = gaussian_solve(sys, rhs);
    if (!x || !feasible(*x)) return;
    Rat v = lp.objective.dot(*x);
    if (!best || v > *best) best = v;
  };

  if (need == 0) {
    try_candidate({});
    return best;
  }
  // All `need`-subsets of the optional constraints.
  std::vector<std::size_t> comb(need);
  for (std::size_t i = 0; i < need; ++i) comb[i] = i;
  if (optional_idx.size() < need) return std::nullopt;
  for (;;) {
    std::vector<std::size_t> chosen(need);
    for (std::size_t i = 0; i < need; ++i) chosen[i] = optional_idx[comb[i]];
    try_candidate(chosen);
    std::size_t i = need;
    while (i > 0 && comb[i - 1] == optional_idx.size() - need + (i - 1)) --i;
    if (i == 0) break;
    ++comb[i - 1];
    for (std::size_t j = i; j < need; ++j) comb[j] = comb[j - 1] + 1;
  }
  return best;
}

std::vector<Bits> enum_feasible_points(const SubSystem& sub) {
  const std::size_t s = sub.support.size();
  if (s > 20) throw InputError("enum_feasible_points: support too large");
  std::vector<Bits> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << s); ++mask) {
    Bits p(s, false);
    for (std::size_t k = 0; k < s; ++k) p[k] = (mask >> k) & 1;
    if (is_feasible_point(sub, p)) out.push_back(std::move(p));
  }
  return out;
}

Rat enum_max_weight(const SubSystem& sub, const RatVec& objective) {
  Rat best;  // zero point is always feasible
  for (const Bits& p : enum_feasible_points(sub)) {
    Rat v;
    for (std::size_t k = 0; k < p.size(); ++k)
      if (p[k]) v += objective[k];
    if (v > best) best = v;
  }
  return best;
}

int enum_rank(const PipInstance& pip, const std::vector<int>& columns) {
  const std::size_t s = columns.size();
  if (s > 20) throw InputError("enum_rank: set too large");
  int best = 0;
  for (std::size_t mask = 0; mask < (std::size_t{1} << s); ++mask) {
    int size = 0;
    RatVec load(pip.m);
    bool ok = true;
    for (std::size_t k = 0; k < s && ok; ++k) {
      if (!((mask >> k) & 1)) continue;
      ++size;
      for (int i = 0; i < pip.m && ok; ++i) {
        load[i] += pip.A.at(i, columns[k]);
        if (load[i] > pip.b[i]) ok = false;
      }
    }
    if (ok) best = std::max(best, size);
  }
  return best;
}

bool exhaustive_membership(const SubSystem& sub, const RatVec& x_full) {
  std::vector<Bits> points = enum_feasible_points(sub);
  LinearProgram lp;
  lp.objective = RatVec(points.size());
  lp.bounds.assign(points.size(), VarBounds{Rat(0), Rat(1)});
  for (std::size_t k = 0; k < sub.support.size(); ++k) {
    LpRow row;
    row.coeffs = RatVec(points.size());
    for (std::size_t a = 0; a < points.size(); ++a)
      if (points[a][k]) row.coeffs[a] = Rat(1);
    row.rhs = x_full[sub.support[k]];
    row.sense = RowSense::Eq;
    lp.rows.push_back(std::move(row));
  }
  LpRow convexity;
  convexity.coeffs = RatVec(points.size());
  for (std::size_t a = 0; a < points.size(); ++a) convexity.coeffs[a] = Rat(1);
  convexity.rhs = Rat(1);
  convexity.sense = RowSense::Eq;
  lp.rows.push_back(std::move(convexity));
  return std::holds_alternative<LpOptimal>(solve_lp(lp));
}

Rat random_rat(std::mt19937_64& rng, long num_range, long den_range) {
  std::uniform_int_distribution<long> num(-num_range, num_range);
  std::uniform_int_distribution<long> den(1, den_range);
  return Rat(num(rng), den(rng));
}

PipInstance random_pip(std::mt19937_64& rng, int n_min, int n_max, int m_min, int m_max) {
  std::uniform_int_distribution<int> nd(n_min, n_max), md(m_min, m_max);
  int n = nd(rng), m = md(rng);
  std::uniform_int_distribution<int> coin(0, 9);
  std::uniform_int_distribution<long> entry(1, 9);
  RatMat A(m, n);
  RatVec b(m), w(n);
  for (int i = 0; i < m; ++i) {
    Rat row_max, row_sum;
    for (int j = 0; j < n; ++j) {
      if (coin(rng) < 4) continue;  // keep some sparsity
      A.at(i, j) = Rat(entry(rng));
      row_max = kih::max(row_max, A.at(i, j));
      row_sum += A.at(i, j);
    }
    // Capacity between "largest single item fits" and "everything fits".
    Rat span = row_sum - row_max;
    long extra = span.is_zero() ? 0 : std::uniform_int_distribution<long>(
                                          0, span.num().get_si() / span.den().get_si())(rng);
    b[i] = row_max + Rat(extra);
  }
  for (int j = 0; j < n; ++j) {
    std::uniform_int_distribution<long> wnum(0, 9);
    w[j] = Rat(wnum(rng), std::uniform_int_distribution<long>(1, 3)(rng));
  }
  return PipInstance::create(std::move(A), std::move(b), std::move(w));
}

LinearProgram random_lp(std::mt19937_64& rng, int max_vars, int max_rows) {
  std::uniform_int_distribution<int> nd(1, max_vars), md(1, max_rows);
  int n = nd(rng), m = md(rng);
  LinearProgram lp;
  lp.objective = RatVec(n);
  std::uniform_int_distribution<long> entry(-9, 9);
  std::uniform_int_distribution<int> sense(0, 9);
  for (int j = 0; j < n; ++j) lp.objective[j] = Rat(entry(rng));
  int eq_used = 0;
  for (int i = 0; i < m; ++i) {
    LpRow row;
    row.coeffs = RatVec(n);
    for (int j = 0; j < n; ++j) row.coeffs[j] = Rat(entry(rng));
    row.rhs = Rat(entry(rng));
    int s = sense(rng);
    if (s < 5)
      row.sense = RowSense::LessEq;
    else if (s < 8 || eq_used + 1 >= n)
      row.sense = RowSense::GreaterEq;
    else {
      row.sense = RowSense::Eq;
      ++eq_used;
    }
    lp.rows.push_back(std::move(row));
  }
  for (int j = 0; j < n; ++j) {
    long lo = std::uniform_int_distribution<long>(-3, 0)(rng);
    long hi = std::uniform_int_distribution<long>(0, 3)(rng);
    lp.bounds.push_back({Rat(lo), Rat(hi)});
  }
  return lp;
}

}  // namespace kih::testing
