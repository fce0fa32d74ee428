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

#include "kih/knapsack.hpp"

#include <algorithm>
#include <cassert>

#include "kih/error.hpp"

namespace kih {

namespace {

// Branch-and-bound state over the active (positive-objective) support
// columns of one subsystem.
class Search {
 public:
  Search(const SubSystem& sub, const RatVec& objective, const BnbOptions& opts)
      : sub_(sub), obj_(objective), budget_(opts.node_budget) {
    const std::size_t s = sub.support.size();
    for (std::size_t k = 0; k < s; ++k)
      if (obj_[k].sign() > 0) active_.push_back(k);

    // Density order: objective over normalized load, descending; ties by
    // column position for determinism.
    std::vector<Rat> weight(s);
    for (std::size_t k : active_) {
      Rat wsum;
      for (int r : sub.rows) {
        const Rat& a = sub.pip->A.at(r, sub.support[k]);
        if (!a.is_zero()) wsum += a / sub.pip->b[r];
      }
      weight[k] = wsum;  // > 0: every support column loads some row
    }
    std::sort(active_.begin(), active_.end(), [&](std::size_t a, std::size_t b) {
      Rat lhs = obj_[a] * weight[b];
      Rat rhs = obj_[b] * weight[a];
      if (lhs != rhs) return lhs > rhs;
      return a < b;
    });

    pos_.assign(s, 0);
    for (std::size_t d = 0; d < active_.size(); ++d) pos_[active_[d]] = d;

    // Per-row greedy orders for the fractional single-row bounds.
    row_order_.resize(sub.rows.size());
    for (std::size_t ri = 0; ri < sub.rows.size(); ++ri) {
      int r = sub.rows[ri];
      auto& ord = row_order_[ri];
      ord = active_;
      std::sort(ord.begin(), ord.end(), [&](std::size_t a, std::size_t b) {
        const Rat& aa = sub.pip->A.at(r, sub.support[a]);
        const Rat& ab = sub.pip->A.at(r, sub.support[b]);
        bool za = aa.is_zero(), zb = ab.is_zero();
        if (za != zb) return za;  // free columns first
        if (!za) {
          Rat lhs = obj_[a] * ab;
          Rat rhs = obj_[b] * aa;
          if (lhs != rhs) return lhs > rhs;
        }
        return a < b;
      });
    }
  }

  // Maximum objective value over feasible selections that respect the
  // partial fixing (-1 free, 0 out, 1 in). Infeasible fixings yield no
  // value.
  std::optional<Rat> best_value(const std::vector<signed char>& fixing) {
    std::vector<Rat> slack(sub_.rows.size());
    Rat base;
    for (std::size_t ri = 0; ri < sub_.rows.size(); ++ri) slack[ri] = sub_.pip->b[sub_.rows[ri]];
    for (std::size_t k = 0; k < fixing.size(); ++k) {
      if (fixing[k] != 1) continue;
      base += obj_[k];
      for (std::size_t ri = 0; ri < sub_.rows.size(); ++ri) {
        slack[ri] -= sub_.pip->A.at(sub_.rows[ri], sub_.support[k]);
        if (slack[ri].sign() < 0) return std::nullopt;
      }
    }
    incumbent_ = Rat(0);
    target_.reset();
    dive(0, base, slack, fixing);
    return incumbent_;
  }

  // True iff some feasible completion of the fixing reaches `target`.
  bool reaches(const std::vector<signed char>& fixing, const Rat& target) {
    std::vector<Rat> slack(sub_.rows.size());
    Rat base;
    for (std::size_t ri = 0; ri < sub_.rows.size(); ++ri) slack[ri] = sub_.pip->b[sub_.rows[ri]];
    for (std::size_t k = 0; k < fixing.size(); ++k) {
      if (fixing[k] != 1) continue;
      base += obj_[k];
      for (std::size_t ri = 0; ri < sub_.rows.size(); ++ri) {
        slack[ri] -= sub_.pip->A.at(sub_.rows[ri], sub_.support[k]);
        if (slack[ri].sign() < 0) return false;
      }
    }
    target_ = target;
    found_ = false;
    incumbent_ = target - Rat(1);
    dive(0, base, slack, fixing);
    return found_;
  }

  const std::vector<std::size_t>& active() const { return active_; }

 private:
  void charge_node() {
    ++nodes_;
    if (budget_ && nodes_ > *budget_)
      throw BudgetError("knapsack node budget of " + std::to_string(*budget_) + " exhausted");
  }

  // Cheapest single-row fractional completion bound over free columns at
  // or after position `depth` in density order.
  Rat completion_bound(std::size_t depth, const std::vector<Rat>& slack,
                       const std::vector<signed char>& fixing) {
    std::optional<Rat> best;
    for (std::size_t ri = 0; ri < sub_.rows.size(); ++ri) {
      Rat cap = slack[ri];
      Rat total;
      int r = sub_.rows[ri];
      for (std::size_t k : row_order_[ri]) {
        if (fixing[k] != -1 || pos_[k] < depth) continue;
        const Rat& a = sub_.pip->A.at(r, sub_.support[k]);
        if (a.is_zero()) {
          total += obj_[k];
          continue;
        }
        if (cap.is_zero()) continue;
        if (a <= cap) {
          total += obj_[k];
          cap -= a;
        } else {
          total += obj_[k] * cap / a;
          cap = Rat(0);
        }
      }
      if (!best || total < *best) best = total;
      if (best->is_zero()) break;
    }
    return best ? *best : Rat(0);
  }

  void dive(std::size_t depth, const Rat& value, std::vector<Rat>& slack,
            const std::vector<signed char>& fixing) {
    if (target_ && found_) return;
    charge_node();
    if (value > incumbent_) incumbent_ = value;
    if (target_ && value >= *target_) {
      found_ = true;
      return;
    }
    if (depth == active_.size()) return;
    Rat bound = value + completion_bound(depth, slack, fixing);
    if (bound <= incumbent_ && !target_) return;
    if (target_ && bound < *target_) return;

    std::size_t k = active_[depth];
    if (fixing[k] != -1) {
      dive(depth + 1, value, slack, fixing);
      return;
    }

    // Include first: density order makes the greedy dive a good incumbent.
    bool fits = true;
    for (std::size_t ri = 0; ri < sub_.rows.size() && fits; ++ri)
      if (sub_.pip->A.at(sub_.rows[ri], sub_.support[k]) > slack[ri]) fits = false;
    if (fits) {
      for (std::size_t ri = 0; ri < sub_.rows.size(); ++ri)
        slack[ri] -= sub_.pip->A.at(sub_.rows[ri], sub_.support[k]);
      dive(depth + 1, value + obj_[k], slack, fixing);
      for (std::size_t ri = 0; ri < sub_.rows.size(); ++ri)
        slack[ri] += sub_.pip->A.at(sub_.rows[ri], sub_.support[k]);
      if (target_ && found_) return;
    }
    dive(depth + 1, value, slack, fixing);
  }

  const SubSystem& sub_;
  const RatVec& obj_;
  std::optional<long> budget_;
  long nodes_ = 0;
  std::vector<std::size_t> active_;
  std::vector<std::size_t> pos_;                  // support index -> density position
  std::vector<std::vector<std::size_t>> row_order_;
  Rat incumbent_;
  std::optional<Rat> target_;
  bool found_ = false;
};

}  // namespace

PricingResult max_weight_feasible(const SubSystem& sub, const RatVec& objective,
                                  const BnbOptions& opts) {
  if (objective.size() != sub.support.size())
    throw InputError("max_weight_feasible: objective length != support size");

  PricingResult res;
  res.point.assign(sub.support.size(), false);
  res.value = Rat(0);
  if (sub.support.empty()) return res;

  Search search(sub, objective, opts);
  std::vector<signed char> fixing(sub.support.size(), -1);
  for (std::size_t k = 0; k < fixing.size(); ++k)
    if (objective[k].sign() <= 0) fixing[k] = 0;

  std::optional<Rat> opt = search.best_value(fixing);
  assert(opt.has_value());
  res.value = *opt;

  // Second pass: fix columns in column order, preferring zero, so that the
  // reported point is the lexicographically smallest optimum.
  for (std::size_t k = 0; k < fixing.size(); ++k) {
    if (fixing[k] != -1) continue;
    fixing[k] = 0;
    if (!search.reaches(fixing, res.value)) fixing[k] = 1;
  }
  for (std::size_t k = 0; k < fixing.size(); ++k) res.point[k] = fixing[k] == 1;

  // The fixing is now fully decided and must itself be the optimum.
  Rat check;
  for (std::size_t k = 0; k < fixing.size(); ++k)
    if (res.point[k]) check += objective[k];
  if (check != res.value || !is_feasible_point(sub, res.point))
    throw std::logic_error("max_weight_feasible: inconsistent optimum reconstruction");
  return res;
}

int rank(const PipInstance& pip, const std::vector<int>& columns, const BnbOptions& opts) {
  std::vector<int> cols = columns;
  std::sort(cols.begin(), cols.end());
  cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
  for (int c : cols)
    if (c < 0 || c >= pip.n)
      throw InputError("rank: column index " + std::to_string(c) + " out of range");
  if (cols.empty()) return 0;
  if (pip.m == 0) return static_cast<int>(cols.size());

  std::vector<int> all_rows(pip.m);
  for (int i = 0; i < pip.m; ++i) all_rows[i] = i;
  SubSystem sub = subsystem(pip, all_rows);

  // Columns with no load anywhere sit outside the support and are always
  // packable.
  int free_count = 0;
  RatVec obj(sub.support.size());
  for (int c : cols) {
    auto it = std::lower_bound(sub.support.begin(), sub.support.end(), c);
    if (it == sub.support.end() || *it != c)
      ++free_count;
    else
      obj[static_cast<std::size_t>(it - sub.support.begin())] = Rat(1);
  }
  PricingResult r = max_weight_feasible(sub, obj, opts);
  assert(r.value.is_integer());
  return free_count + static_cast<int>(r.value.num().get_si());
}

IpResult ip_solve(const PipInstance& pip, const BnbOptions& opts) {
  IpResult res;
  res.point.assign(pip.n, false);
  res.value = Rat(0);
  if (pip.n == 0) return res;

  if (pip.m == 0) {
    for (int j = 0; j < pip.n; ++j)
      if (pip.w[j].sign() > 0) {
        res.point[j] = true;
        res.value += pip.w[j];
      }
    return res;
  }

  std::vector<int> all_rows(pip.m);
  for (int i = 0; i < pip.m; ++i) all_rows[i] = i;
  SubSystem sub = subsystem(pip, all_rows);

  // Zero columns never load a row; take them whenever they pay.
  RatVec obj(sub.support.size());
  for (std::size_t k = 0; k < sub.support.size(); ++k) obj[k] = pip.w[sub.support[k]];
  PricingResult r = max_weight_feasible(sub, obj, opts);
  res.value = r.value;
  for (std::size_t k = 0; k < sub.support.size(); ++k) res.point[sub.support[k]] = r.point[k];
  std::size_t s = 0;
  for (int j = 0; j < pip.n; ++j) {
    if (s < sub.support.size() && sub.support[s] == j) {
      ++s;
      continue;
    }
    if (pip.w[j].sign() > 0) {
      res.point[j] = true;
      res.value += pip.w[j];
    }
  }
  return res;
}

}  // namespace kih
