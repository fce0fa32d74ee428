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

#include "kih/hull.hpp"

#include <algorithm>
#include <stdexcept>

#include "kih/error.hpp"
#include "kih/lp.hpp"

namespace kih {

namespace {

RatVec restrict_to_support(const SubSystem& sub, const RatVec& x_full) {
  RatVec xs(sub.support.size());
  for (std::size_t k = 0; k < sub.support.size(); ++k) xs[k] = x_full[sub.support[k]];
  return xs;
}

// Master feasibility LP over the chosen atoms: nonnegative weights that
// reproduce the target on every support coordinate and sum to one.
LpOutcome solve_master(const std::vector<Bits>& pool, const std::vector<std::size_t>& atom_ids,
                       const RatVec& x_sup) {
  const std::size_t s = x_sup.size();
  LinearProgram lp;
  lp.objective = RatVec(atom_ids.size());
  lp.bounds.assign(atom_ids.size(), VarBounds{Rat(0), std::nullopt});
  lp.rows.reserve(s + 1);
  for (std::size_t k = 0; k < s; ++k) {
    LpRow row;
    row.coeffs = RatVec(atom_ids.size());
    for (std::size_t a = 0; a < atom_ids.size(); ++a)
      if (pool[atom_ids[a]][k]) row.coeffs[a] = Rat(1);
    row.rhs = x_sup[k];
    row.sense = RowSense::Eq;
    lp.rows.push_back(std::move(row));
  }
  LpRow convexity;
  convexity.coeffs = RatVec(atom_ids.size());
  for (std::size_t a = 0; a < atom_ids.size(); ++a) convexity.coeffs[a] = Rat(1);
  convexity.rhs = Rat(1);
  convexity.sense = RowSense::Eq;
  lp.rows.push_back(std::move(convexity));
  return solve_lp(lp);
}

constexpr std::size_t kExhaustiveSupportLimit = 8;

// Deepest separating inequality in the ∞-normalization: maximize
// c·x - r over all (c, r) with |c_j| ≤ 1 that are valid for every feasible
// point, generating atom rows lazily through the pricing oracle. A
// nonpositive optimum proves x ∈ conv(pool) instead, in which case the
// feasibility master takes over again.
struct DeepCut {
  RatVec coeffs;
  Rat rhs;
  PricingResult witness;
  Rat violation;
};

Rat atom_value(const Bits& atom, const RatVec& coeffs) {
  Rat v;
  for (std::size_t k = 0; k < atom.size(); ++k)
    if (atom[k]) v += coeffs[k];
  return v;
}

std::optional<DeepCut> deepest_cut(const SubSystem& sub, const RatVec& x_sup,
                                   std::vector<Bits>& pool, bool exhaustive_pool,
                                   std::vector<Bits> row_atoms) {
  const std::size_t s = x_sup.size();
  const Rat r_bound(static_cast<long>(s) + 1);
  row_atoms.insert(row_atoms.begin(), Bits(s, false));
  for (;;) {
    LinearProgram lp;
    lp.objective = RatVec(s + 1);
    for (std::size_t k = 0; k < s; ++k) lp.objective[k] = x_sup[k];
    lp.objective[s] = Rat(-1);
    lp.bounds.assign(s, VarBounds{Rat(-1), Rat(1)});
    lp.bounds.push_back(VarBounds{-r_bound, r_bound});
    for (const Bits& atom : row_atoms) {
      LpRow row;
      row.coeffs = RatVec(s + 1);
      for (std::size_t k = 0; k < s; ++k)
        if (atom[k]) row.coeffs[k] = Rat(1);
      row.coeffs[s] = Rat(-1);
      row.rhs = Rat(0);
      lp.rows.push_back(std::move(row));
    }
    LpOutcome out = solve_lp(lp);
    const auto* opt = std::get_if<LpOptimal>(&out);
    if (opt == nullptr) throw std::logic_error("deepest_cut: separation LP not optimal");
    if (opt->value.sign() <= 0) return std::nullopt;

    DeepCut cut;
    cut.coeffs = RatVec(s);
    for (std::size_t k = 0; k < s; ++k) cut.coeffs[k] = opt->x[k];
    cut.rhs = opt->x[s];
    cut.violation = opt->value;

    PricingResult priced;
    if (exhaustive_pool) {
      bool have = false;
      for (const Bits& p : pool) {
        Rat v = atom_value(p, cut.coeffs);
        if (!have || v > priced.value) {
          priced.value = v;
          priced.point = p;
          have = true;
        }
      }
    } else {
      priced = max_weight_feasible(sub, cut.coeffs);
    }
    if (priced.value <= cut.rhs) {
      cut.witness = std::move(priced);
      return cut;
    }
    if (!exhaustive_pool &&
        std::find(pool.begin(), pool.end(), priced.point) == pool.end())
      pool.push_back(priced.point);
    row_atoms.push_back(std::move(priced.point));
  }
}

}  // namespace

MembershipOracle::MembershipOracle(SubSystem sub) : sub_(std::move(sub)) {
  const std::size_t s = sub_.support.size();
  if (s <= kExhaustiveSupportLimit) {
    exhaustive_pool_ = true;
    for (std::size_t mask = 0; mask < (std::size_t{1} << s); ++mask) {
      Bits p(s, false);
      for (std::size_t k = 0; k < s; ++k) p[k] = (mask >> k) & 1;
      if (is_feasible_point(sub_, p)) pool_.push_back(std::move(p));
    }
    return;
  }
  pool_.push_back(Bits(s, false));
  for (std::size_t k = 0; k < s; ++k) {
    Bits singleton(s, false);
    singleton[k] = true;
    pool_.push_back(std::move(singleton));  // feasible: every variable fits alone
  }
}

MembershipOutcome MembershipOracle::inside_from_weights(const std::vector<std::size_t>& atom_ids,
                                                        const RatVec& weights,
                                                        const RatVec& x_full) {
  ConvexCombination comb;
  for (std::size_t a = 0; a < atom_ids.size(); ++a)
    if (weights[a].sign() > 0) comb.atoms.push_back({pool_[atom_ids[a]], weights[a]});
  last_inside_atoms_.clear();
  for (std::size_t a = 0; a < atom_ids.size(); ++a)
    if (weights[a].sign() > 0) last_inside_atoms_.push_back(atom_ids[a]);
  MembershipOutcome res{std::move(comb)};
  if (!verify_membership_certificate(sub_, x_full, res))
    throw std::logic_error("membership: inside certificate failed self-check");
  return res;
}

MembershipOutcome MembershipOracle::query(const RatVec& x_full) {
  if (x_full.size() != static_cast<std::size_t>(sub_.pip->n))
    throw InputError("membership: point length != variable count");
  for (const Rat& v : x_full)
    if (v.sign() < 0 || v > Rat(1)) throw InputError("membership: point leaves the [0,1] box");

  RatVec x_sup = restrict_to_support(sub_, x_full);
  const std::size_t max_atoms = sub_.support.size() >= 62
                                    ? ~0ULL
                                    : (1ULL << sub_.support.size()) + 1;

  // Warm path: the atoms of the previous Inside answer often still carry
  // the new point after a small master perturbation.
  if (!last_inside_atoms_.empty() && last_inside_atoms_.size() < pool_.size()) {
    LpOutcome out = solve_master(pool_, last_inside_atoms_, x_sup);
    if (const auto* opt = std::get_if<LpOptimal>(&out))
      return inside_from_weights(last_inside_atoms_, opt->x, x_full);
  }

  std::vector<std::size_t> all_ids;
  for (;;) {
    if (pool_.size() > max_atoms)
      throw std::logic_error("membership: atom pool exceeded the feasible point count");
    all_ids.resize(pool_.size());
    for (std::size_t a = 0; a < pool_.size(); ++a) all_ids[a] = a;
    LpOutcome out = solve_master(pool_, all_ids, x_sup);
    if (const auto* opt = std::get_if<LpOptimal>(&out))
      return inside_from_weights(all_ids, opt->x, x_full);

    const auto* inf = std::get_if<LpInfeasible>(&out);
    if (inf == nullptr) throw std::logic_error("membership: master LP unbounded");

    const std::size_t s = x_sup.size();
    if (!exhaustive_pool_) {
      // Farkas multipliers give an inequality satisfied by every pool atom
      // and violated by the target; pricing either exposes a missing atom
      // or proves the point outside.
      RatVec farkas_coeffs(s);
      for (std::size_t k = 0; k < s; ++k) farkas_coeffs[k] = -inf->farkas[k];
      PricingResult priced = max_weight_feasible(sub_, farkas_coeffs);
      if (priced.value > inf->farkas[s]) {
        pool_.push_back(std::move(priced.point));
        continue;
      }
    }

    // Outside for sure. Replace the Farkas direction by the deepest
    // ∞-normalized valid inequality; its pricing rounds may add a few more
    // pool atoms but the separation value stays positive.
    std::optional<DeepCut> deep = deepest_cut(sub_, x_sup, pool_, exhaustive_pool_, {});
    if (!deep) throw std::logic_error("membership: lost the separating inequality");
    CutCertificate cut;
    Rat scale;
    for (std::size_t k = 0; k < s; ++k) scale = kih::max(scale, deep->coeffs[k].abs());
    if (scale.is_zero()) throw std::logic_error("membership: zero separating inequality");
    cut.coeffs = RatVec(s);
    for (std::size_t k = 0; k < s; ++k) cut.coeffs[k] = deep->coeffs[k] / scale;
    cut.rhs = deep->rhs / scale;
    cut.validity_witness.point = deep->witness.point;
    cut.validity_witness.value = deep->witness.value / scale;
    cut.violation = cut.coeffs.dot(x_sup) - cut.rhs;
    MembershipOutcome res{std::move(cut)};
    if (!verify_membership_certificate(sub_, x_full, res))
      throw std::logic_error("membership: outside certificate failed self-check");
    return res;
  }
}

MembershipOutcome membership(const SubSystem& sub, const RatVec& x_full) {
  MembershipOracle oracle(sub);
  return oracle.query(x_full);
}

bool verify_membership_certificate(const SubSystem& sub, const RatVec& x_full,
                                   const MembershipOutcome& cert) {
  try {
    if (x_full.size() != static_cast<std::size_t>(sub.pip->n)) return false;
    for (const Rat& v : x_full)
      if (v.sign() < 0 || v > Rat(1)) return false;
    RatVec x_sup = restrict_to_support(sub, x_full);
    const std::size_t s = x_sup.size();

    if (const auto* comb = std::get_if<ConvexCombination>(&cert)) {
      Rat total;
      RatVec sum(s);
      for (const auto& atom : comb->atoms) {
        if (atom.point.size() != s) return false;
        if (atom.weight.sign() <= 0) return false;
        if (!is_feasible_point(sub, atom.point)) return false;
        total += atom.weight;
        for (std::size_t k = 0; k < s; ++k)
          if (atom.point[k]) sum[k] += atom.weight;
      }
      if (total != Rat(1)) return false;
      return sum == x_sup;
    }

    const auto& cut = std::get<CutCertificate>(cert);
    if (cut.coeffs.size() != s || cut.validity_witness.point.size() != s) return false;
    if (cut.violation.sign() <= 0) return false;
    if (cut.coeffs.dot(x_sup) - cut.rhs != cut.violation) return false;
    if (!is_feasible_point(sub, cut.validity_witness.point)) return false;
    Rat witness_value;
    for (std::size_t k = 0; k < s; ++k)
      if (cut.validity_witness.point[k]) witness_value += cut.coeffs[k];
    if (witness_value != cut.validity_witness.value) return false;
    // Validity: an independent re-pricing must confirm the witness as the
    // exact maximum, and that maximum must respect the rhs.
    PricingResult repriced = max_weight_feasible(sub, cut.coeffs);
    if (repriced.value != cut.validity_witness.value) return false;
    return repriced.value <= cut.rhs;
  } catch (const std::exception&) {
    return false;
  }
}

}  // namespace kih
