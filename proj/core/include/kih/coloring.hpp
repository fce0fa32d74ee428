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

#ifndef KIH_COLORING_HPP
#define KIH_COLORING_HPP

#include <optional>
#include <vector>

#include "kih/hull.hpp"
#include "kih/tree.hpp"

namespace kih {

/// True iff every class member sum respects the capacity of every edge in
/// `edge_set` (the S-routability condition).
bool routable_on_edges(const TreeInstance& tree, const std::vector<int>& request_ids,
                       const std::vector<int>& edge_set);

/// Closure subtree of an edge set: rooted at the lowest common ancestor v
/// of all edge endpoints, spanning every path from v to an edge of S, plus
/// v's parent edge when it exists. Every layer has at most |S| vertices.
struct ClosureSubtree {
  int root_vertex = 0;
  std::optional<int> parent_edge;
  std::vector<int> edges;                 // sorted, includes parent_edge
  std::vector<std::vector<int>> layers;   // layers[0] = {root_vertex}
  std::size_t max_width = 0;
};

ClosureSubtree closure_subtree(const TreeInstance& tree, const std::vector<int>& edge_set);

/// Layered colouring of the closure subtree: class i collects the requests
/// of layers i, i+c, i+2c, … (the deterministic outcome of rotating each
/// child subtree's classes into alignment before merging). Requires every
/// layer width ≤ 2^(h(c-1)) and verifies that each class is
/// E(T')-routable rather than assuming it.
std::vector<std::vector<int>> layered_coloring(const TreeInstance& tree,
                                               const ClosureSubtree& closure, int c);

/// Partition of all requests into at most c+1 classes, each routable on
/// every edge of S, where c = min{c : |S| ≤ 2^(h(c-1))}: the layered
/// classes of the closure plus one class of the requests below the closure
/// (routable under any subtree edge) together with the requests that never
/// touch S. Every class is verified. S = ∅ degenerates to the single class
/// of all requests with c = 0.
struct SRoutablePartition {
  std::vector<int> S;  // sorted edge indices
  std::vector<std::vector<int>> classes;
  int c = 0;
};

SRoutablePartition s_routable_partition(const TreeInstance& tree,
                                        const std::vector<int>& edge_set);

/// Convex-combination certificate that (1/|classes|)·1 lies in K_I(S):
/// one atom per partition class, restricted to the support of S, each with
/// weight 1/|classes|.
ConvexCombination uniform_membership_certificate(const TreeInstance& tree,
                                                 const std::vector<int>& edge_set);

/// Support of an edge set: ids of the requests routing on some edge of S,
/// sorted. Matches the column support of the corresponding pip subsystem.
std::vector<int> edge_set_support(const TreeInstance& tree, const std::vector<int>& edge_set);

/// Partition of the staircase requests into |S|+1 classes, each routable
/// on every edge of S: the saturating request of every S-edge alone, plus
/// one class of all remaining requests. Yields the 1/(t+1) certificate.
std::vector<std::vector<int>> staircase_partition(int k, const std::vector<int>& edge_set);

/// Partition of the tree (minus the root) into edge- and vertex-disjoint
/// subtrees of ℓ levels each: block i holds the subtrees hanging at level
/// i·ℓ+1, every subtree spanning its root vertex, the ℓ-1 levels below it
/// and its parent edge.
struct LayerPartition {
  int ell = 0;
  std::vector<std::vector<std::vector<int>>> blocks;  // blocks[i][s] = request ids
};

LayerPartition layer_partition(const TreeInstance& tree, int ell);

/// Exact per-block profits w·x restricted to each block; their sum equals
/// w·x since the blocks cover every request.
std::vector<Rat> layer_profit_check(const TreeInstance& tree, const LayerPartition& partition,
                                    const RatVec& x);

/// Exact minimum number of S-routable classes, by backtracking search.
/// Only offered for small instances; throws InputError above the limit.
int exact_chromatic(const TreeInstance& tree, const std::vector<int>& edge_set,
                    int max_requests = 12);

}  // namespace kih

#endif  // KIH_COLORING_HPP
