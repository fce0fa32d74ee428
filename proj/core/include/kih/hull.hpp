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

#ifndef KIH_HULL_HPP
#define KIH_HULL_HPP

#include <variant>
#include <vector>

#include "kih/knapsack.hpp"
#include "kih/pip.hpp"

namespace kih {

/// Certificate that a point lies in the integer hull of a subsystem:
/// positive weights summing to one over feasible 0-1 atoms whose weighted
/// sum reproduces the point on the support, exactly.
struct ConvexCombination {
  struct Atom {
    Bits point;  // over the subsystem support
    Rat weight;
  };
  std::vector<Atom> atoms;
};

/// Certificate that a point lies outside the integer hull: a valid
/// inequality coeffs·z ≤ rhs for every feasible 0-1 z (the witness attains
/// the pricing maximum) that the queried point violates by `violation`.
/// Normalized so the largest |coefficient| is one.
struct CutCertificate {
  RatVec coeffs;  // over the subsystem support
  Rat rhs;
  PricingResult validity_witness;
  Rat violation;
};

using MembershipOutcome = std::variant<ConvexCombination, CutCertificate>;

inline bool is_inside(const MembershipOutcome& o) {
  return std::holds_alternative<ConvexCombination>(o);
}

/// Exact membership oracle for one subsystem's integer hull, with a
/// persistent atom pool so repeated queries (cutting-plane rounds) reuse
/// earlier pricing work. Pool seed: the zero vector and all support
/// singletons; supports of at most 8 columns enumerate every feasible
/// point up front, which turns pricing into a pool scan. Each query owns
/// its private master LP; distinct oracles can run concurrently.
class MembershipOracle {
 public:
  explicit MembershipOracle(SubSystem sub);

  /// Decides x ∈ K_I(S) for a point over all n variables. Coordinates off
  /// the support factor out and only need the [0,1] box check; support
  /// coordinates are matched exactly. Throws InputError if x leaves the
  /// box. The returned certificate verifies by construction.
  MembershipOutcome query(const RatVec& x_full);

  const SubSystem& sub() const { return sub_; }
  std::size_t pool_size() const { return pool_.size(); }

 private:
  MembershipOutcome inside_from_weights(const std::vector<std::size_t>& atom_ids,
                                        const RatVec& weights, const RatVec& x_full);

  SubSystem sub_;
  std::vector<Bits> pool_;
  bool exhaustive_pool_ = false;
  std::vector<std::size_t> last_inside_atoms_;  // warm start for the next query
};

/// One-shot membership query (fresh oracle).
MembershipOutcome membership(const SubSystem& sub, const RatVec& x_full);

/// Exact recheck of either certificate kind against the subsystem and the
/// queried point. Returns false on any violation; never throws.
bool verify_membership_certificate(const SubSystem& sub, const RatVec& x_full,
                                   const MembershipOutcome& cert);

}  // namespace kih

#endif  // KIH_HULL_HPP
