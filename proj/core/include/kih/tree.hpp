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

#ifndef KIH_TREE_HPP
#define KIH_TREE_HPP

#include <cstdint>
#include <vector>

#include "kih/pip.hpp"
#include "kih/rat.hpp"

namespace kih {

struct TreeEdge {
  int u = 0;  // endpoint closer to the root once rooted
  int v = 0;
  Rat capacity;
};

struct Request {
  int id = 0;
  int s = 0;
  int t = 0;
  Rat demand;
  Rat profit;
};

/// Capacitated tree plus all-or-nothing requests. Immutable after
/// construction: `finalize` roots the tree, validates every invariant
/// (tree shape, positive capacities, s ≠ t, each request routable on its
/// own) and precomputes parent/depth/path data.
struct TreeInstance {
  int root = 0;
  std::vector<int> vertices;  // 0..V-1
  std::vector<TreeEdge> edges;
  std::vector<Request> requests;  // ids 0..k-1 in order

  // Rooted view, filled by finalize().
  std::vector<int> parent;       // parent vertex, -1 at root
  std::vector<int> parent_edge;  // edge index to parent, -1 at root
  std::vector<int> depth;
  std::vector<std::vector<int>> children;
  std::vector<std::vector<int>> request_edges;    // request id -> path edge indices
  std::vector<std::vector<int>> edge_requests;    // edge index -> requests routing on it

  void finalize();

  int num_edges() const { return static_cast<int>(edges.size()); }
  int num_requests() const { return static_cast<int>(requests.size()); }
};

/// Path instance: k+1 vertices on a line rooted at vertex 0; the i-th edge
/// from the root (1-based) has capacity 2^(k-i) and carries a request from
/// its lower endpoint to the root with equal demand and profit 1, so each
/// request exactly saturates its own deepest edge.
TreeInstance generate_staircase(int k);

/// Self-similar single-sink family of height h ≥ 2: the root has a single
/// child, every other internal vertex has 2^(h-1) children, and an edge
/// into level ℓ has capacity 2^(h(h-ℓ+1)). The vertex request at level ℓ
/// has demand 2^(h(h-ℓ+1)) - 2^(h(h-ℓ)) and profit 2^(-(h-1)(ℓ-1)), so
/// each level's total profit is exactly 1.
TreeInstance generate_friggstad_gao(int h);

/// Per-level data of the generate_friggstad_gao family.
struct FgMeta {
  int h = 0;
  Rat capacity(int level) const;   // edge into the level
  Rat demand(int level) const;
  Rat profit(int level) const;
  long long level_size(int level) const;  // |level_ℓ| = 2^((h-1)(ℓ-1)), level 0 is {root}
  /// First vertex id of the level (vertices are laid out level by level).
  long long level_first_vertex(int level) const;
};
FgMeta fg_meta(int h);

/// Number of requests in levels 0..ℓ of the height-h family:
/// n(ℓ) = Σ_{i=0}^{ℓ-1} 2^((h-1)i).
long long n_of_level(int h, int level);

/// Edge indices along the unique path between the request's endpoints,
/// ordered from s towards t.
std::vector<int> request_path(const TreeInstance& tree, int request_id);

/// True iff routing every listed request respects every edge capacity.
bool is_routable(const TreeInstance& tree, const std::vector<int>& request_ids);

/// One knapsack row per edge (coefficient d_r iff the request routes on
/// it), one column per request, profits copied.
PipInstance to_pip(const TreeInstance& tree);

/// Seeded random tree instance for property tests; demands are drawn below
/// the path minimum capacity so every request stays individually routable.
struct RandomTreeParams {
  int num_vertices = 8;
  int num_requests = 6;
  long max_capacity = 32;
  std::uint64_t seed = 1;
};
TreeInstance generate_random_tree(const RandomTreeParams& params);

}  // namespace kih

#endif  // KIH_TREE_HPP
