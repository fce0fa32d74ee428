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

#include "kih/hierarchy.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "kih/error.hpp"
#include "kih/knapsack.hpp"
#include "kih/lp.hpp"

namespace kih {

long long binom(int m, int t) {
  if (t < 0 || t > m) return 0;
  constexpr long long kLimit = 1LL << 40;
  long long r = 1;
  t = std::min(t, m - t);
  for (int i = 1; i <= t; ++i) {
    r = r * (m - t + i) / i;  // exact: product of i consecutive integers
    if (r > kLimit) throw BudgetError("binom: subset family too large to enumerate");
  }
  return r;
}

std::vector<std::vector<int>> lex_subsets(int m, int t) {
  std::vector<std::vector<int>> out;
  if (t < 0 || t > m) return out;
  out.reserve(static_cast<std::size_t>(binom(m, t)));
  std::vector<int> cur(t);
  for (int i = 0; i < t; ++i) cur[i] = i;
  for (;;) {
    out.push_back(cur);
    int i = t - 1;
    while (i >= 0 && cur[i] == m - t + i) --i;
    if (i < 0) break;
    ++cur[i];
    for (int j = i + 1; j < t; ++j) cur[j] = cur[j - 1] + 1;
  }
  if (t == 0) out.assign(1, {});
  return out;
}

RankCutSpec rank_spec_root_to_leaf(const TreeInstance& tree) {
  RankCutSpec spec;
  spec.kind = RankFamilyKind::RootToLeafPaths;
  for (int v = 0; v < static_cast<int>(tree.vertices.size()); ++v) {
    if (v == tree.root || !tree.children[v].empty()) continue;
    std::set<int> path_edges;
    for (int u = v; u != tree.root; u = tree.parent[u]) path_edges.insert(tree.parent_edge[u]);
    std::vector<int> cols;
    for (int r = 0; r < tree.num_requests(); ++r) {
      bool inside = true;
      for (int e : tree.request_edges[r])
        if (!path_edges.count(e)) {
          inside = false;
          break;
        }
      if (inside) cols.push_back(r);
    }
    if (!cols.empty()) spec.explicit_sets.push_back(std::move(cols));
  }
  return spec;
}

RankCutFamily generate_rank_cuts(const PipInstance& pip, const RankCutSpec& spec) {
  RankCutFamily fam;
  fam.spec = spec;
  std::vector<std::vector<int>> sets;
  switch (spec.kind) {
    case RankFamilyKind::Pairs:
      for (int i = 0; i < pip.n; ++i)
        for (int j = i + 1; j < pip.n; ++j) sets.push_back({i, j});
      break;
    case RankFamilyKind::PerRowSupports:
      for (int i = 0; i < pip.m; ++i) {
        std::vector<int> cols;
        for (int j = 0; j < pip.n; ++j)
          if (pip.A.at(i, j).sign() > 0) cols.push_back(j);
        if (!cols.empty()) sets.push_back(std::move(cols));
      }
      break;
    case RankFamilyKind::RootToLeafPaths:
    case RankFamilyKind::Explicit:
      sets = spec.explicit_sets;
      break;
    case RankFamilyKind::ExhaustiveUpTo: {
      if (spec.max_size < 1) throw InputError("rank cuts: exhaustive size must be >= 1");
      constexpr long long kEnumLimit = 200000;
      long long total = 0;
      for (int s = 1; s <= spec.max_size && s <= pip.n; ++s) total += binom(pip.n, s);
      if (total > kEnumLimit)
        throw BudgetError("rank cuts: exhaustive enumeration budget exceeded");
      for (int s = 1; s <= spec.max_size && s <= pip.n; ++s)
        for (auto& sub : lex_subsets(pip.n, s)) sets.push_back(std::move(sub));
      break;
    }
  }
  for (auto& cols : sets) {
    std::sort(cols.begin(), cols.end());
    cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
    int r = rank(pip, cols);
    // A cut at rank |S| is implied by the 0-1 box; keep the binding ones.
    if (r < static_cast<int>(cols.size())) fam.cuts.push_back({std::move(cols), r});
  }
  return fam;
}

namespace {

RatVec restrict_support(const SubSystem& sub, const RatVec& x) {
  RatVec xs(sub.support.size());
  for (std::size_t k = 0; k < sub.support.size(); ++k) xs[k] = x[sub.support[k]];
  return xs;
}

bool all_zero(const RatVec& v) {
  for (const Rat& r : v)
    if (!r.is_zero()) return false;
  return true;
}

LinearProgram build_master(const PipInstance& pip, const std::vector<RankCut>& rank_cuts,
                           const std::vector<std::pair<std::vector<int>, CutCertificate>>& cuts,
                           const std::vector<SubSystem>& cut_subs) {
  LinearProgram lp;
  lp.objective = pip.w;
  lp.bounds.assign(pip.n, VarBounds{Rat(0), Rat(1)});
  for (int i = 0; i < pip.m; ++i) lp.rows.push_back({pip.A.row(i), pip.b[i], RowSense::LessEq});
  for (const RankCut& rc : rank_cuts) {
    LpRow row;
    row.coeffs = RatVec(pip.n);
    for (int j : rc.columns) row.coeffs[j] = Rat(1);
    row.rhs = Rat(rc.rank);
    lp.rows.push_back(std::move(row));
  }
  for (std::size_t c = 0; c < cuts.size(); ++c) {
    LpRow row;
    row.coeffs = RatVec(pip.n);
    const SubSystem& sub = cut_subs[c];
    for (std::size_t k = 0; k < sub.support.size(); ++k)
      row.coeffs[sub.support[k]] = cuts[c].second.coeffs[k];
    row.rhs = cuts[c].second.rhs;
    lp.rows.push_back(std::move(row));
  }
  return lp;
}

std::string cut_key(const RatVec& full_coeffs, const Rat& rhs) {
  std::ostringstream os;
  for (const Rat& c : full_coeffs) os << c.to_string() << ",";
  os << "|" << rhs.to_string();
  return os.str();
}

// Per-subset query state: lazily built subsystem and oracle, plus the last
// Inside answer keyed on the support-restricted point (cuts elsewhere leave
// it untouched, so the certificate stays valid).
struct SubsetState {
  std::optional<SubSystem> sub;
  std::unique_ptr<MembershipOracle> oracle;
  std::optional<RatVec> cached_x;
  std::optional<ConvexCombination> cached_inside;
};

enum class QueryKind { SkippedZero, Inside, Outside };

struct QueryResult {
  QueryKind kind = QueryKind::SkippedZero;
  std::optional<ConvexCombination> inside;
  std::optional<CutCertificate> outside;
};

void run_queries(const PipInstance& pip, const std::vector<std::vector<int>>& subsets,
                 std::vector<SubsetState>& states, const RatVec& x, bool filter, int jobs,
                 std::vector<QueryResult>& results) {
  results.assign(subsets.size(), {});
  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      SubsetState& st = states[i];
      if (!st.sub) st.sub = subsystem(pip, subsets[i]);
      RatVec x_sup = restrict_support(*st.sub, x);
      QueryResult& qr = results[i];
      if (filter && all_zero(x_sup)) {
        qr.kind = QueryKind::SkippedZero;
        continue;
      }
      if (st.cached_x && *st.cached_x == x_sup && st.cached_inside) {
        qr.kind = QueryKind::Inside;
        qr.inside = st.cached_inside;
        continue;
      }
      if (!st.oracle) st.oracle = std::make_unique<MembershipOracle>(*st.sub);
      MembershipOutcome out = st.oracle->query(x);
      if (auto* comb = std::get_if<ConvexCombination>(&out)) {
        qr.kind = QueryKind::Inside;
        qr.inside = *comb;
        st.cached_x = std::move(x_sup);
        st.cached_inside = std::move(*comb);
      } else {
        qr.kind = QueryKind::Outside;
        qr.outside = std::get<CutCertificate>(std::move(out));
        st.cached_x.reset();
        st.cached_inside.reset();
      }
    }
  };
  int n_jobs = std::max(1, jobs);
  if (n_jobs == 1 || subsets.size() <= 1) {
    work(0, subsets.size());
    return;
  }
  n_jobs = std::min<int>(n_jobs, static_cast<int>(subsets.size()));
  std::vector<std::thread> threads;
  std::vector<std::exception_ptr> errors(n_jobs);
  std::size_t chunk = (subsets.size() + n_jobs - 1) / n_jobs;
  for (int w = 0; w < n_jobs; ++w) {
    std::size_t begin = w * chunk;
    std::size_t end = std::min(subsets.size(), begin + chunk);
    threads.emplace_back([&, w, begin, end] {
      try {
        work(begin, end);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& th : threads) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

// Masters are packing-shaped: max c·x over ≤-rows and the [0,1] box. Once
// cuts pile up the row count dwarfs the variable count, so solving the
// transposed dual (min y·b + μ·1 s.t. Aᵀy + μ ≥ c, y,μ ≥ 0) keeps the
// simplex basis at n×n instead of m×m. The recovered point is accepted
// only with an exact weak-duality certificate; anything less falls back to
// the direct solve.
std::optional<LpOptimal> solve_master_transposed(const LinearProgram& lp) {
  const std::size_t n = lp.num_vars(), m = lp.rows.size();
  LinearProgram dual;
  dual.objective = RatVec(m + n);
  dual.bounds.assign(m + n, VarBounds{Rat(0), std::nullopt});
  for (std::size_t i = 0; i < m; ++i) dual.objective[i] = -lp.rows[i].rhs;
  for (std::size_t j = 0; j < n; ++j) dual.objective[m + j] = Rat(-1);
  dual.rows.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    LpRow row;
    row.coeffs = RatVec(m + n);
    for (std::size_t i = 0; i < m; ++i) row.coeffs[i] = lp.rows[i].coeffs[j];
    row.coeffs[m + j] = Rat(1);
    row.rhs = lp.objective[j];
    row.sense = RowSense::GreaterEq;
    dual.rows.push_back(std::move(row));
  }
  LpOutcome dual_out = solve_lp(dual);
  const auto* dopt = std::get_if<LpOptimal>(&dual_out);
  if (dopt == nullptr) return std::nullopt;

  LpOptimal primal;
  primal.x = RatVec(n);
  for (std::size_t j = 0; j < n; ++j) primal.x[j] = -dopt->duals[j];
  primal.value = -dopt->value;
  primal.duals = RatVec(m);
  for (std::size_t i = 0; i < m; ++i) primal.duals[i] = dopt->x[i];
  // (y, μ) is dual feasible, so matching objectives certify optimality.
  if (lp.objective.dot(primal.x) != primal.value) return std::nullopt;
  LpOutcome as_outcome{primal};
  if (!verify_lp_outcome(lp, as_outcome)) return std::nullopt;
  return primal;
}

RatVec solve_master_or_throw(const LinearProgram& lp, Rat* value) {
  if (lp.rows.size() > lp.num_vars()) {
    bool box_packing = true;
    for (const auto& row : lp.rows)
      if (row.sense != RowSense::LessEq) box_packing = false;
    for (const auto& b : lp.bounds)
      if (!b.lower || !b.upper || *b.lower != Rat(0) || *b.upper != Rat(1)) box_packing = false;
    if (box_packing) {
      if (auto opt = solve_master_transposed(lp)) {
        if (value != nullptr) *value = opt->value;
        return opt->x;
      }
    }
  }
  LpOutcome out = solve_lp(lp);
  const auto* opt = std::get_if<LpOptimal>(&out);
  if (opt == nullptr)
    throw std::logic_error("hierarchy master LP must be feasible and bounded");
  if (value != nullptr) *value = opt->value;
  return opt->x;
}

}  // namespace

HierarchyResult optimize_level(const PipInstance& pip, int t, const HierarchyOptions& opts) {
  if (t < 1 || t > pip.m) throw InputError("optimize_level: t must be in [1, m]");
  std::vector<std::vector<int>> subsets = lex_subsets(pip.m, t);
  std::vector<SubsetState> states(subsets.size());

  long budget = opts.iteration_budget.value_or(0);
  if (budget <= 0) {
    long long def = 10 * binom(pip.m, t);
    budget = static_cast<long>(std::min<long long>(def, 1'000'000'000LL));
  }

  HierarchyResult res;
  res.t = t;
  res.subset_filter = opts.subset_filter;
  res.rank_cuts = opts.rank_cuts;

  std::vector<SubSystem> cut_subs;
  std::set<std::string> active_cut_keys;
  std::vector<QueryResult> round;

  for (;;) {
    if (res.iterations >= budget) {
      std::ostringstream os;
      os << "optimize_level: iteration budget " << budget << " exhausted at t=" << t
         << " with " << res.cuts.size() << " cuts; last master value "
         << res.value.to_string();
      throw BudgetError(os.str());
    }
    ++res.iterations;
    LinearProgram master = build_master(pip, opts.rank_cuts, res.cuts, cut_subs);
    res.x_star = solve_master_or_throw(master, &res.value);

    run_queries(pip, subsets, states, res.x_star, opts.subset_filter, opts.jobs, round);

    bool any_violated = false;
    for (std::size_t i = 0; i < subsets.size(); ++i) {
      if (round[i].kind != QueryKind::Outside) continue;
      any_violated = true;
      const SubSystem& sub = *states[i].sub;
      RatVec full(pip.n);
      for (std::size_t k = 0; k < sub.support.size(); ++k)
        full[sub.support[k]] = round[i].outside->coeffs[k];
      std::string key = cut_key(full, round[i].outside->rhs);
      if (active_cut_keys.insert(key).second) {
        res.cuts.emplace_back(subsets[i], std::move(*round[i].outside));
        cut_subs.push_back(sub);
      }
    }
    if (!any_violated) break;
  }

  res.memberships.clear();
  for (std::size_t i = 0; i < subsets.size(); ++i)
    if (round[i].kind == QueryKind::Inside)
      res.memberships.emplace_back(subsets[i], std::move(*round[i].inside));
  return res;
}

LevelMembership point_in_level(const PipInstance& pip, int t, const RatVec& x, int jobs) {
  if (t < 1 || t > pip.m) throw InputError("point_in_level: t must be in [1, m]");
  std::vector<std::vector<int>> subsets = lex_subsets(pip.m, t);
  std::vector<SubsetState> states(subsets.size());
  std::vector<QueryResult> results;
  run_queries(pip, subsets, states, x, /*filter=*/false, jobs, results);

  LevelMembership lm;
  lm.inside = true;
  for (std::size_t i = 0; i < subsets.size(); ++i) {
    if (results[i].kind == QueryKind::Outside) {
      lm.inside = false;
      lm.outside_witness = {subsets[i], std::move(*results[i].outside)};
      lm.memberships.clear();
      return lm;
    }
    lm.memberships.emplace_back(subsets[i], std::move(*results[i].inside));
  }
  return lm;
}

bool verify_hierarchy_result(const PipInstance& pip, const HierarchyResult& res) {
  try {
    if (res.t < 1 || res.t > pip.m) return false;
    if (res.x_star.size() != static_cast<std::size_t>(pip.n)) return false;
    for (const Rat& v : res.x_star)
      if (v.sign() < 0 || v > Rat(1)) return false;
    for (int i = 0; i < pip.m; ++i)
      if (pip.A.row(i).dot(res.x_star) > pip.b[i]) return false;
    if (pip.w.dot(res.x_star) != res.value) return false;

    for (const RankCut& rc : res.rank_cuts) {
      if (rank(pip, rc.columns) != rc.rank) return false;
      Rat sum;
      for (int j : rc.columns) {
        if (j < 0 || j >= pip.n) return false;
        sum += res.x_star[j];
      }
      if (sum > Rat(rc.rank)) return false;
    }

    for (const auto& [rows, cut] : res.cuts) {
      SubSystem sub = subsystem(pip, rows);
      if (cut.coeffs.size() != sub.support.size()) return false;
      if (cut.violation.sign() <= 0) return false;  // sign of the historical violation
      RatVec x_sup = restrict_support(sub, res.x_star);
      if (cut.coeffs.dot(x_sup) > cut.rhs) return false;
      if (!is_feasible_point(sub, cut.validity_witness.point)) return false;
      Rat witness_value;
      for (std::size_t k = 0; k < sub.support.size(); ++k)
        if (cut.validity_witness.point[k]) witness_value += cut.coeffs[k];
      if (witness_value != cut.validity_witness.value) return false;
      PricingResult repriced = max_weight_feasible(sub, cut.coeffs);
      if (repriced.value != cut.validity_witness.value) return false;
      if (repriced.value > cut.rhs) return false;
    }

    std::set<std::vector<int>> certified;
    for (const auto& [rows, comb] : res.memberships) {
      SubSystem sub = subsystem(pip, rows);
      if (static_cast<int>(rows.size()) != res.t) return false;
      MembershipOutcome out{comb};
      if (!verify_membership_certificate(sub, res.x_star, out)) return false;
      certified.insert(rows);
    }
    for (const auto& rows : lex_subsets(pip.m, res.t)) {
      if (certified.count(rows)) continue;
      if (!res.subset_filter) return false;
      SubSystem sub = subsystem(pip, rows);
      if (!all_zero(restrict_support(sub, res.x_star))) return false;
    }

    // x_star must also be the exact optimum of its own master.
    std::vector<SubSystem> cut_subs;
    cut_subs.reserve(res.cuts.size());
    for (const auto& [rows, cut] : res.cuts) cut_subs.push_back(subsystem(pip, rows));
    LinearProgram master = build_master(pip, res.rank_cuts, res.cuts, cut_subs);
    Rat master_value;
    solve_master_or_throw(master, &master_value);
    return master_value == res.value;
  } catch (const std::exception&) {
    return false;
  }
}

Rat lp_value(const PipInstance& pip, const std::vector<RankCut>& rank_cuts) {
  LinearProgram lp = build_master(pip, rank_cuts, {}, {});
  Rat value;
  solve_master_or_throw(lp, &value);
  return value;
}

std::vector<GapRow> gap_report(const PipInstance& pip, const std::string& instance_id,
                               const std::vector<int>& t_list, const GapReportOptions& opts) {
  IpResult ip = ip_solve(pip);
  if (ip.value.is_zero()) throw InputError("gap_report: IP optimum is zero, gap undefined");

  std::vector<RankCut> rank_cuts;
  if (opts.with_rank) rank_cuts = generate_rank_cuts(pip, opts.rank_spec).cuts;

  std::vector<GapRow> rows;
  for (int t : t_list) {
    for (int use_rank = 0; use_rank <= (opts.with_rank ? 1 : 0); ++use_rank) {
      GapRow row;
      row.instance_id = instance_id;
      row.k = pip.n;
      row.m = pip.m;
      row.t = t;
      row.formulation = use_rank ? "rank" : "plain";
      if (t == 0) {
        row.value = lp_value(pip, use_rank ? rank_cuts : std::vector<RankCut>{});
        row.iterations = 0;
        row.cuts = 0;
      } else {
        HierarchyOptions hopts;
        hopts.subset_filter = opts.subset_filter;
        hopts.iteration_budget = opts.iteration_budget;
        hopts.jobs = opts.jobs;
        if (use_rank) hopts.rank_cuts = rank_cuts;
        HierarchyResult hr = optimize_level(pip, t, hopts);
        row.value = hr.value;
        row.iterations = hr.iterations;
        row.cuts = static_cast<long>(hr.cuts.size());
      }
      row.ip_value = ip.value;
      row.gap = row.value / ip.value;
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::string gap_report_csv(const std::vector<GapRow>& rows) {
  std::ostringstream os;
  os << "instance_id,k,m,t,formulation,value,ip_value,gap,iterations,cuts\n";
  for (const GapRow& r : rows) {
    os << r.instance_id << "," << r.k << "," << r.m << "," << r.t << "," << r.formulation << ","
       << r.value.to_string() << "," << r.ip_value.to_string() << "," << r.gap.to_string() << ","
       << r.iterations << "," << r.cuts << "\n";
  }
  return os.str();
}

}  // namespace kih
