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

#include "kih/lp.hpp"

#include <cassert>
#include <stdexcept>
#include <utility>

namespace kih {

void LinearProgram::validate() const {
  const std::size_t n = num_vars();
  if (bounds.size() != n)
    throw InputError("LinearProgram: bounds count " + std::to_string(bounds.size()) +
                     " != variable count " + std::to_string(n));
  for (const auto& row : rows)
    if (row.coeffs.size() != n)
      throw InputError("LinearProgram: row has " + std::to_string(row.coeffs.size()) +
                       " coefficients, expected " + std::to_string(n));
  for (const auto& b : bounds)
    if (b.lower && b.upper && *b.lower > *b.upper)
      throw InputError("LinearProgram: variable lower bound exceeds upper bound");
}

namespace {

enum class VarStatus { Basic, AtLower, AtUpper, FreeZero };

// Bounded-variable primal simplex over exact rationals.
//
// Computational form: every row becomes  a_i·x + s_i = b_i  with the slack
// box encoding the sense (≤: [0,∞), =: [0,0], ≥: (−∞,0]).  Phase 1 adds one
// artificial per initially infeasible row and maximizes the negated total
// infeasibility; phase 2 fixes the artificials at zero and maximizes the
// real objective.  Entering and leaving variables follow Bland's
// smallest-index rule, which guarantees termination.
class Simplex {
 public:
  explicit Simplex(const LinearProgram& lp) : lp_(lp), n_(lp.num_vars()), m_(lp.rows.size()) {}

  LpOutcome run() {
    init();
    StepResult r1 = iterate(phase1_costs_);
    if (r1 == StepResult::Unbounded)
      throw std::logic_error("simplex: phase 1 reported unbounded");
    if (total_infeasibility() > Rat(0)) return extract_infeasible();
    for (std::size_t v = art_begin_; v < nvars_; ++v) {
      lb_[v] = Rat(0);
      ub_[v] = Rat(0);
    }
    StepResult r2 = iterate(real_costs_);
    if (r2 == StepResult::Unbounded) return extract_unbounded();
    return extract_optimal();
  }

 private:
  enum class StepResult { Optimal, Unbounded };

  const LinearProgram& lp_;
  std::size_t n_, m_;
  std::size_t nvars_ = 0;      // structural + slack + artificial
  std::size_t art_begin_ = 0;  // first artificial variable index

  std::vector<std::vector<Rat>> cols_;  // structural columns, dense over rows
  std::vector<std::optional<Rat>> lb_, ub_;
  std::vector<VarStatus> status_;
  std::vector<std::size_t> basis_;        // row position -> variable
  std::vector<std::size_t> art_row_;      // artificial index offset -> row
  std::vector<std::vector<Rat>> binv_;    // basis inverse, m x m
  std::vector<Rat> xB_;                   // basic variable values by row position
  std::vector<Rat> phase1_costs_, real_costs_;

  bool is_slack(std::size_t v) const { return v >= n_ && v < n_ + m_; }
  bool is_artificial(std::size_t v) const { return v >= art_begin_; }
  std::size_t row_of(std::size_t v) const {
    return is_slack(v) ? v - n_ : art_row_[v - art_begin_];
  }
  bool fixed(std::size_t v) const { return lb_[v] && ub_[v] && *lb_[v] == *ub_[v]; }

  Rat nonbasic_value(std::size_t v) const {
    switch (status_[v]) {
      case VarStatus::AtLower: return *lb_[v];
      case VarStatus::AtUpper: return *ub_[v];
      case VarStatus::FreeZero: return Rat(0);
      case VarStatus::Basic: break;
    }
    throw std::logic_error("simplex: nonbasic_value on basic variable");
  }

  void init() {
    // Structural bounds and initial statuses.
    lb_.resize(n_ + m_);
    ub_.resize(n_ + m_);
    status_.assign(n_ + m_, VarStatus::AtLower);
    for (std::size_t j = 0; j < n_; ++j) {
      lb_[j] = lp_.bounds[j].lower;
      ub_[j] = lp_.bounds[j].upper;
      if (lb_[j])
        status_[j] = VarStatus::AtLower;
      else if (ub_[j])
        status_[j] = VarStatus::AtUpper;
      else
        status_[j] = VarStatus::FreeZero;
    }
    for (std::size_t i = 0; i < m_; ++i) {
      std::size_t s = n_ + i;
      switch (lp_.rows[i].sense) {
        case RowSense::LessEq: lb_[s] = Rat(0); ub_[s] = std::nullopt; break;
        case RowSense::Eq: lb_[s] = Rat(0); ub_[s] = Rat(0); break;
        case RowSense::GreaterEq: lb_[s] = std::nullopt; ub_[s] = Rat(0); break;
      }
      status_[s] = VarStatus::Basic;
    }

    cols_.assign(n_, std::vector<Rat>(m_));
    for (std::size_t i = 0; i < m_; ++i)
      for (std::size_t j = 0; j < n_; ++j) cols_[j][i] = lp_.rows[i].coeffs[j];

    // Slack basis; residuals decide which rows need an artificial.
    basis_.resize(m_);
    xB_.assign(m_, Rat(0));
    binv_.assign(m_, std::vector<Rat>(m_, Rat(0)));
    for (std::size_t i = 0; i < m_; ++i) binv_[i][i] = Rat(1);

    std::vector<Rat> residual(m_);
    for (std::size_t i = 0; i < m_; ++i) residual[i] = lp_.rows[i].rhs;
    for (std::size_t j = 0; j < n_; ++j) {
      Rat v = nonbasic_value(j);
      if (v.is_zero()) continue;
      for (std::size_t i = 0; i < m_; ++i)
        if (!cols_[j][i].is_zero()) residual[i] -= cols_[j][i] * v;
    }

    art_begin_ = n_ + m_;
    nvars_ = n_ + m_;
    for (std::size_t i = 0; i < m_; ++i) {
      std::size_t s = n_ + i;
      bool below = lb_[s] && residual[i] < *lb_[s];
      bool above = ub_[s] && residual[i] > *ub_[s];
      if (!below && !above) {
        basis_[i] = s;
        xB_[i] = residual[i];
        continue;
      }
      // Clamp the slack to its violated bound and absorb the remainder in a
      // fresh artificial basic variable.
      Rat clamped = below ? *lb_[s] : *ub_[s];
      status_[s] = below ? VarStatus::AtLower : VarStatus::AtUpper;
      Rat rho = residual[i] - clamped;
      std::size_t a = nvars_++;
      art_row_.push_back(i);
      if (rho.sign() > 0) {
        lb_.push_back(Rat(0));
        ub_.push_back(std::nullopt);
      } else {
        lb_.push_back(std::nullopt);
        ub_.push_back(Rat(0));
      }
      status_.push_back(VarStatus::Basic);
      basis_[i] = a;
      xB_[i] = rho;
    }

    phase1_costs_.assign(nvars_, Rat(0));
    for (std::size_t a = art_begin_; a < nvars_; ++a)
      phase1_costs_[a] = lb_[a] ? Rat(-1) : Rat(1);
    real_costs_.assign(nvars_, Rat(0));
    for (std::size_t j = 0; j < n_; ++j) real_costs_[j] = lp_.objective[j];
  }

  Rat total_infeasibility() const {
    Rat t;
    for (std::size_t p = 0; p < m_; ++p)
      if (is_artificial(basis_[p])) t += xB_[p].abs();
    for (std::size_t a = art_begin_; a < nvars_; ++a)
      if (status_[a] != VarStatus::Basic) t += nonbasic_value(a).abs();
    return t;
  }

  std::vector<Rat> duals(const std::vector<Rat>& costs) const {
    std::vector<Rat> y(m_, Rat(0));
    for (std::size_t p = 0; p < m_; ++p) {
      const Rat& cb = costs[basis_[p]];
      if (cb.is_zero()) continue;
      for (std::size_t i = 0; i < m_; ++i)
        if (!binv_[p][i].is_zero()) y[i] += cb * binv_[p][i];
    }
    return y;
  }

  Rat reduced_cost(std::size_t v, const std::vector<Rat>& y, const std::vector<Rat>& costs) const {
    Rat d = costs[v];
    if (v < n_) {
      for (std::size_t i = 0; i < m_; ++i)
        if (!y[i].is_zero() && !cols_[v][i].is_zero()) d -= y[i] * cols_[v][i];
    } else {
      d -= y[row_of(v)];
    }
    return d;
  }

  std::vector<Rat> ftran(std::size_t v) const {
    std::vector<Rat> w(m_, Rat(0));
    if (v < n_) {
      for (std::size_t p = 0; p < m_; ++p) {
        Rat s;
        for (std::size_t i = 0; i < m_; ++i)
          if (!binv_[p][i].is_zero() && !cols_[v][i].is_zero()) s += binv_[p][i] * cols_[v][i];
        w[p] = s;
      }
    } else {
      std::size_t r = row_of(v);
      for (std::size_t p = 0; p < m_; ++p) w[p] = binv_[p][r];
    }
    return w;
  }

  StepResult iterate(const std::vector<Rat>& costs) {
    for (;;) {
      std::vector<Rat> y = duals(costs);

      // Bland: first improving nonbasic variable by index.
      std::size_t enter = nvars_;
      int dir = 0;
      for (std::size_t v = 0; v < nvars_; ++v) {
        if (status_[v] == VarStatus::Basic || fixed(v)) continue;
        Rat d = reduced_cost(v, y, costs);
        int s = d.sign();
        if (s == 0) continue;
        if (status_[v] == VarStatus::AtLower && s > 0) { enter = v; dir = 1; break; }
        if (status_[v] == VarStatus::AtUpper && s < 0) { enter = v; dir = -1; break; }
        if (status_[v] == VarStatus::FreeZero) { enter = v; dir = s; break; }
      }
      if (enter == nvars_) return StepResult::Optimal;

      std::vector<Rat> w = ftran(enter);

      // Step length t ≥ 0 moves the entering value by dir·t and each basic
      // value by -dir·w_p·t.
      std::optional<Rat> best;
      std::size_t block_row = m_;
      bool block_at_upper = false;
      for (std::size_t p = 0; p < m_; ++p) {
        Rat delta = Rat(-dir) * w[p];
        int ds = delta.sign();
        if (ds == 0) continue;
        std::size_t bv = basis_[p];
        std::optional<Rat> limit;
        bool to_upper = false;
        if (ds > 0 && ub_[bv]) {
          limit = (*ub_[bv] - xB_[p]) / delta;
          to_upper = true;
        } else if (ds < 0 && lb_[bv]) {
          limit = (xB_[p] - *lb_[bv]) / (-delta);
        }
        if (!limit) continue;
        if (!best || *limit < *best ||
            (*limit == *best && (block_row == m_ || bv < basis_[block_row]))) {
          best = limit;
          block_row = p;
          block_at_upper = to_upper;
        }
      }

      // The entering variable may also stop at its own opposite bound.
      std::optional<Rat> own;
      if (dir > 0 && ub_[enter]) own = *ub_[enter] - nonbasic_value(enter);
      if (dir < 0 && lb_[enter]) own = nonbasic_value(enter) - *lb_[enter];

      if (!best && !own) return StepResult::Unbounded;

      if (own && (!best || *own < *best)) {
        // Bound flip, basis unchanged.
        const Rat& t = *own;
        for (std::size_t p = 0; p < m_; ++p)
          if (!w[p].is_zero()) xB_[p] -= Rat(dir) * w[p] * t;
        status_[enter] =
            status_[enter] == VarStatus::AtLower ? VarStatus::AtUpper : VarStatus::AtLower;
        continue;
      }

      const Rat& t = *best;
      Rat enter_value = nonbasic_value(enter) + Rat(dir) * t;
      for (std::size_t p = 0; p < m_; ++p)
        if (p != block_row && !w[p].is_zero()) xB_[p] -= Rat(dir) * w[p] * t;

      std::size_t leave = basis_[block_row];
      status_[leave] = block_at_upper ? VarStatus::AtUpper : VarStatus::AtLower;
      status_[enter] = VarStatus::Basic;
      basis_[block_row] = enter;
      xB_[block_row] = enter_value;

      const Rat piv = w[block_row];
      Rat inv_piv = Rat(1) / piv;
      for (std::size_t i = 0; i < m_; ++i) binv_[block_row][i] *= inv_piv;
      for (std::size_t p = 0; p < m_; ++p) {
        if (p == block_row || w[p].is_zero()) continue;
        const Rat f = w[p];
        for (std::size_t i = 0; i < m_; ++i)
          if (!binv_[block_row][i].is_zero()) binv_[p][i] -= f * binv_[block_row][i];
      }
    }
  }

  RatVec structural_solution() const {
    RatVec x(n_);
    for (std::size_t j = 0; j < n_; ++j)
      if (status_[j] != VarStatus::Basic) x[j] = nonbasic_value(j);
    for (std::size_t p = 0; p < m_; ++p)
      if (basis_[p] < n_) x[basis_[p]] = xB_[p];
    return x;
  }

  LpOutcome extract_optimal() const {
    LpOptimal opt;
    opt.x = structural_solution();
    opt.value = lp_.objective.dot(opt.x);
    std::vector<Rat> y = duals(real_costs_);
    opt.duals = RatVec(m_);
    for (std::size_t i = 0; i < m_; ++i) opt.duals[i] = y[i];
    LpOutcome out{opt};
    if (!verify_lp_outcome(lp_, out))
      throw std::logic_error("simplex: optimal certificate failed self-check");
    return out;
  }

  LpOutcome extract_infeasible() const {
    std::vector<Rat> y = duals(phase1_costs_);
    LpInfeasible inf;
    inf.farkas = RatVec(m_);
    for (std::size_t i = 0; i < m_; ++i)
      inf.farkas[i] = lp_.rows[i].sense == RowSense::GreaterEq ? -y[i] : y[i];
    LpOutcome out{inf};
    if (!verify_lp_outcome(lp_, out))
      throw std::logic_error("simplex: infeasibility certificate failed self-check");
    return out;
  }

  LpOutcome extract_unbounded() const {
    // Rebuild the unbounded direction from the last entering candidate.
    std::vector<Rat> y = duals(real_costs_);
    std::size_t enter = nvars_;
    int dir = 0;
    for (std::size_t v = 0; v < nvars_; ++v) {
      if (status_[v] == VarStatus::Basic || fixed(v)) continue;
      Rat d = reduced_cost(v, y, real_costs_);
      int s = d.sign();
      if (s == 0) continue;
      if ((status_[v] == VarStatus::AtLower && s > 0) ||
          (status_[v] == VarStatus::AtUpper && s < 0) || status_[v] == VarStatus::FreeZero) {
        std::vector<Rat> w = ftran(v);
        int dd = status_[v] == VarStatus::FreeZero ? s : (s > 0 ? 1 : -1);
        bool blocked = false;
        if ((dd > 0 && ub_[v]) || (dd < 0 && lb_[v])) blocked = true;
        for (std::size_t p = 0; p < m_ && !blocked; ++p) {
          Rat delta = Rat(-dd) * w[p];
          int ds = delta.sign();
          if (ds > 0 && ub_[basis_[p]]) blocked = true;
          if (ds < 0 && lb_[basis_[p]]) blocked = true;
        }
        if (!blocked) {
          enter = v;
          dir = dd;
          RatVec ray(n_);
          if (v < n_) ray[v] = Rat(dir);
          for (std::size_t p = 0; p < m_; ++p)
            if (basis_[p] < n_) ray[basis_[p]] = Rat(-dir) * w[p];
          LpOutcome out{LpUnbounded{ray}};
          if (!verify_lp_outcome(lp_, out))
            throw std::logic_error("simplex: unbounded certificate failed self-check");
          return out;
        }
      }
    }
    throw std::logic_error("simplex: unbounded state without an unbounded direction");
  }
};

bool within(const std::optional<Rat>& lo, const Rat& v, const std::optional<Rat>& hi) {
  if (lo && v < *lo) return false;
  if (hi && v > *hi) return false;
  return true;
}

bool verify_optimal(const LinearProgram& lp, const LpOptimal& o) {
  const std::size_t n = lp.num_vars(), m = lp.rows.size();
  if (o.x.size() != n || o.duals.size() != m) return false;
  for (std::size_t j = 0; j < n; ++j)
    if (!within(lp.bounds[j].lower, o.x[j], lp.bounds[j].upper)) return false;
  for (std::size_t i = 0; i < m; ++i) {
    Rat lhs = lp.rows[i].coeffs.dot(o.x);
    switch (lp.rows[i].sense) {
      case RowSense::LessEq: if (lhs > lp.rows[i].rhs) return false; break;
      case RowSense::Eq: if (lhs != lp.rows[i].rhs) return false; break;
      case RowSense::GreaterEq: if (lhs < lp.rows[i].rhs) return false; break;
    }
  }
  if (lp.objective.dot(o.x) != o.value) return false;

  // Dual sign feasibility and exact complementary slackness on rows.
  for (std::size_t i = 0; i < m; ++i) {
    const Rat& y = o.duals[i];
    if (lp.rows[i].sense == RowSense::LessEq && y.sign() < 0) return false;
    if (lp.rows[i].sense == RowSense::GreaterEq && y.sign() > 0) return false;
    if (!y.is_zero() && lp.rows[i].coeffs.dot(o.x) != lp.rows[i].rhs) return false;
  }

  // Reduced costs: positive ones demand x_j at a finite upper bound,
  // negative ones at a finite lower bound.  Their bound terms close the
  // duality gap exactly.
  Rat dual_value;
  for (std::size_t i = 0; i < m; ++i) dual_value += o.duals[i] * lp.rows[i].rhs;
  for (std::size_t j = 0; j < n; ++j) {
    Rat d = lp.objective[j];
    for (std::size_t i = 0; i < m; ++i)
      if (!o.duals[i].is_zero() && !lp.rows[i].coeffs[j].is_zero())
        d -= o.duals[i] * lp.rows[i].coeffs[j];
    if (d.sign() > 0) {
      if (!lp.bounds[j].upper || o.x[j] != *lp.bounds[j].upper) return false;
      dual_value += d * *lp.bounds[j].upper;
    } else if (d.sign() < 0) {
      if (!lp.bounds[j].lower || o.x[j] != *lp.bounds[j].lower) return false;
      dual_value += d * *lp.bounds[j].lower;
    }
  }
  return dual_value == o.value;
}

bool verify_infeasible(const LinearProgram& lp, const LpInfeasible& c) {
  const std::size_t n = lp.num_vars(), m = lp.rows.size();
  if (c.farkas.size() != m) return false;
  // Multipliers act on the ≤-normalized rows: inequality rows need f ≥ 0,
  // equality rows are free.
  RatVec g(n);
  Rat rhs;
  for (std::size_t i = 0; i < m; ++i) {
    const Rat& f = c.farkas[i];
    if (f.is_zero()) continue;
    int flip = lp.rows[i].sense == RowSense::GreaterEq ? -1 : 1;
    if (lp.rows[i].sense != RowSense::Eq && f.sign() < 0) return false;
    for (std::size_t j = 0; j < n; ++j)
      if (!lp.rows[i].coeffs[j].is_zero()) g[j] += Rat(flip) * f * lp.rows[i].coeffs[j];
    rhs += Rat(flip) * f * lp.rows[i].rhs;
  }
  // Even the box-minimum of the combined inequality exceeds its rhs.
  Rat box_min;
  for (std::size_t j = 0; j < n; ++j) {
    int s = g[j].sign();
    if (s > 0) {
      if (!lp.bounds[j].lower) return false;
      box_min += g[j] * *lp.bounds[j].lower;
    } else if (s < 0) {
      if (!lp.bounds[j].upper) return false;
      box_min += g[j] * *lp.bounds[j].upper;
    }
  }
  return box_min > rhs;
}

bool verify_unbounded(const LinearProgram& lp, const LpUnbounded& u) {
  const std::size_t n = lp.num_vars();
  if (u.ray.size() != n) return false;
  if (lp.objective.dot(u.ray) <= Rat(0)) return false;
  for (const auto& row : lp.rows) {
    Rat rate = row.coeffs.dot(u.ray);
    switch (row.sense) {
      case RowSense::LessEq: if (rate.sign() > 0) return false; break;
      case RowSense::Eq: if (!rate.is_zero()) return false; break;
      case RowSense::GreaterEq: if (rate.sign() < 0) return false; break;
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (u.ray[j].sign() > 0 && lp.bounds[j].upper) return false;
    if (u.ray[j].sign() < 0 && lp.bounds[j].lower) return false;
  }
  return true;
}

}  // namespace

LpOutcome solve_lp(const LinearProgram& lp) {
  lp.validate();
  Simplex s(lp);
  return s.run();
}

bool verify_lp_outcome(const LinearProgram& lp, const LpOutcome& outcome) {
  try {
    lp.validate();
    if (const auto* o = std::get_if<LpOptimal>(&outcome)) return verify_optimal(lp, *o);
    if (const auto* c = std::get_if<LpInfeasible>(&outcome)) return verify_infeasible(lp, *c);
    if (const auto* u = std::get_if<LpUnbounded>(&outcome)) return verify_unbounded(lp, *u);
    return false;
  } catch (const std::exception&) {
    return false;
  }
}

}  // namespace kih
