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

#include "kih/coloring.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "kih/error.hpp"

namespace kih {

namespace {

std::vector<int> sorted_unique_edges(const TreeInstance& tree, const std::vector<int>& edge_set) {
  std::vector<int> s = edge_set;
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  for (int e : s)
    if (e < 0 || e >= tree.num_edges())
      throw InputError("edge set: index " + std::to_string(e) + " out of range");
  return s;
}

int tree_height(const TreeInstance& tree) {
  int h = 0;
  for (int d : tree.depth) h = std::max(h, d);
  return h;
}

// The constructions below assume the single-sink layout of the generated
// families: every non-root vertex carries exactly one request to the root.
std::vector<int> request_at_vertex(const TreeInstance& tree) {
  std::vector<int> at(tree.vertices.size(), -1);
  for (const Request& r : tree.requests) {
    if (r.t != tree.root || r.s == tree.root || at[r.s] != -1)
      throw InputError("coloring: instance is not single-sink with one request per vertex");
    at[r.s] = r.id;
  }
  for (int v = 0; v < static_cast<int>(tree.vertices.size()); ++v)
    if (v != tree.root && at[v] == -1)
      throw InputError("coloring: vertex " + std::to_string(v) + " carries no request");
  return at;
}

int lca(const TreeInstance& tree, int a, int b) {
  while (a != b) {
    if (tree.depth[a] >= tree.depth[b])
      a = tree.parent[a];
    else
      b = tree.parent[b];
  }
  return a;
}

long long width_bound(int h, int c) {
  if (c < 1) return 0;
  long long exp = static_cast<long long>(h) * (c - 1);
  if (exp > 62) return -1;  // effectively unbounded at desk scale
  return 1LL << exp;
}

}  // namespace

bool routable_on_edges(const TreeInstance& tree, const std::vector<int>& request_ids,
                       const std::vector<int>& edge_set) {
  std::vector<char> in_set(tree.num_edges(), 0);
  for (int e : edge_set) in_set[e] = 1;
  std::vector<Rat> load(tree.num_edges());
  for (int r : request_ids) {
    if (r < 0 || r >= tree.num_requests())
      throw InputError("routable_on_edges: request id out of range");
    for (int e : tree.request_edges[r]) {
      if (!in_set[e]) continue;
      load[e] += tree.requests[r].demand;
      if (load[e] > tree.edges[e].capacity) return false;
    }
  }
  return true;
}

std::vector<int> edge_set_support(const TreeInstance& tree, const std::vector<int>& edge_set) {
  std::vector<int> s = sorted_unique_edges(tree, edge_set);
  std::set<int> support;
  for (int e : s) support.insert(tree.edge_requests[e].begin(), tree.edge_requests[e].end());
  return {support.begin(), support.end()};
}

ClosureSubtree closure_subtree(const TreeInstance& tree, const std::vector<int>& edge_set) {
  std::vector<int> s = sorted_unique_edges(tree, edge_set);
  if (s.empty()) throw InputError("closure_subtree: empty edge set");

  int v = tree.edges[s[0]].u;
  for (int e : s) {
    v = lca(tree, v, tree.edges[e].u);
    v = lca(tree, v, tree.edges[e].v);
  }

  std::vector<char> marked(tree.vertices.size(), 0);
  marked[v] = 1;
  for (int e : s)
    for (int x = tree.edges[e].v; !marked[x]; x = tree.parent[x]) marked[x] = 1;

  ClosureSubtree cl;
  cl.root_vertex = v;
  if (v != tree.root) cl.parent_edge = tree.parent_edge[v];

  std::set<int> edges;
  if (cl.parent_edge) edges.insert(*cl.parent_edge);
  int max_depth = tree.depth[v];
  for (int x = 0; x < static_cast<int>(tree.vertices.size()); ++x) {
    if (!marked[x]) continue;
    max_depth = std::max(max_depth, tree.depth[x]);
    if (x != v) edges.insert(tree.parent_edge[x]);
  }
  cl.edges.assign(edges.begin(), edges.end());

  cl.layers.assign(max_depth - tree.depth[v] + 1, {});
  for (int x = 0; x < static_cast<int>(tree.vertices.size()); ++x)
    if (marked[x]) cl.layers[tree.depth[x] - tree.depth[v]].push_back(x);
  for (const auto& layer : cl.layers) cl.max_width = std::max(cl.max_width, layer.size());
  return cl;
}

std::vector<std::vector<int>> layered_coloring(const TreeInstance& tree,
                                               const ClosureSubtree& closure, int c) {
  if (c < 1) throw InputError("layered_coloring: c must be >= 1");
  const int h = tree_height(tree);
  long long bound = width_bound(h, c);
  if (bound >= 0 && static_cast<long long>(closure.max_width) > bound)
    throw InputError("layered_coloring: layer width " + std::to_string(closure.max_width) +
                     " exceeds the 2^(h(c-1)) precondition");

  std::vector<int> at = request_at_vertex(tree);
  std::vector<std::vector<int>> classes(c);
  for (std::size_t layer = 0; layer < closure.layers.size(); ++layer) {
    // Layer 1 holds the closure root; classes cycle every c layers.
    std::size_t cls = layer % c;
    for (int x : closure.layers[layer])
      if (at[x] >= 0) classes[cls].push_back(at[x]);
  }
  for (auto& cls : classes) std::sort(cls.begin(), cls.end());
  for (const auto& cls : classes)
    if (!routable_on_edges(tree, cls, closure.edges))
      throw std::logic_error("layered_coloring: a layer class failed the routability check");
  return classes;
}

SRoutablePartition s_routable_partition(const TreeInstance& tree,
                                        const std::vector<int>& edge_set) {
  SRoutablePartition part;
  part.S = sorted_unique_edges(tree, edge_set);
  std::vector<int> at = request_at_vertex(tree);

  if (part.S.empty()) {
    part.c = 0;
    std::vector<int> all(tree.num_requests());
    for (int r = 0; r < tree.num_requests(); ++r) all[r] = r;
    part.classes.push_back(std::move(all));
    return part;
  }

  const int h = tree_height(tree);
  int c = 1;
  while (true) {
    long long bound = width_bound(h, c);
    if (bound < 0 || static_cast<long long>(part.S.size()) <= bound) break;
    ++c;
  }
  part.c = c;

  ClosureSubtree closure = closure_subtree(tree, part.S);
  std::vector<std::vector<int>> classes = layered_coloring(tree, closure, c);

  // Below-closure requests route through the closure and stay within every
  // subtree bound; the remaining requests never touch S. Together they form
  // the final class.
  std::vector<char> marked(tree.vertices.size(), 0);
  for (const auto& layer : closure.layers)
    for (int x : layer) marked[x] = 1;
  std::vector<int> rest;
  std::vector<char> covered(tree.num_requests(), 0);
  for (const auto& cls : classes)
    for (int r : cls) covered[r] = 1;
  for (int r = 0; r < tree.num_requests(); ++r)
    if (!covered[r]) rest.push_back(r);
  if (!rest.empty()) classes.push_back(std::move(rest));

  classes.erase(std::remove_if(classes.begin(), classes.end(),
                               [](const std::vector<int>& cls) { return cls.empty(); }),
                classes.end());

  for (const auto& cls : classes)
    if (!routable_on_edges(tree, cls, part.S))
      throw std::logic_error("s_routable_partition: a class failed the S-routability check");
  part.classes = std::move(classes);
  return part;
}

ConvexCombination uniform_membership_certificate(const TreeInstance& tree,
                                                 const std::vector<int>& edge_set) {
  SRoutablePartition part = s_routable_partition(tree, edge_set);
  std::vector<int> support = edge_set_support(tree, part.S);

  ConvexCombination comb;
  Rat weight = Rat(1) / Rat(static_cast<long>(part.classes.size()));
  for (const auto& cls : part.classes) {
    Bits atom(support.size(), false);
    for (int r : cls) {
      auto it = std::lower_bound(support.begin(), support.end(), r);
      if (it != support.end() && *it == r) atom[it - support.begin()] = true;
    }
    comb.atoms.push_back({std::move(atom), weight});
  }
  // Empty support (S = ∅) still certifies via a single empty atom set.
  return comb;
}

std::vector<std::vector<int>> staircase_partition(int k, const std::vector<int>& edge_set) {
  TreeInstance tree = generate_staircase(k);
  std::vector<int> s = sorted_unique_edges(tree, edge_set);
  if (s.empty()) throw InputError("staircase_partition: edge set must be nonempty");

  std::vector<std::vector<int>> classes;
  std::vector<char> picked(tree.num_requests(), 0);
  for (int e : s) {
    // Edge i is saturated exactly by request i (same index in this layout).
    classes.push_back({e});
    picked[e] = 1;
  }
  std::vector<int> rest;
  for (int r = 0; r < tree.num_requests(); ++r)
    if (!picked[r]) rest.push_back(r);
  classes.push_back(std::move(rest));

  for (const auto& cls : classes)
    if (!routable_on_edges(tree, cls, s))
      throw std::logic_error("staircase_partition: a class failed the S-routability check");
  return classes;
}

LayerPartition layer_partition(const TreeInstance& tree, int ell) {
  const int h = tree_height(tree);
  if (ell < 1 || ell > h) throw InputError("layer_partition: block height out of range");
  std::vector<int> at = request_at_vertex(tree);

  LayerPartition part;
  part.ell = ell;
  int num_blocks = (h + ell - 1) / ell;
  part.blocks.resize(num_blocks);
  for (int i = 0; i < num_blocks; ++i) {
    int top_level = i * ell + 1;
    for (int v = 0; v < static_cast<int>(tree.vertices.size()); ++v) {
      if (tree.depth[v] != top_level) continue;
      // T_v^ℓ: v, the ℓ-1 levels below it, and (implicitly) its parent edge.
      std::vector<int> subtree;
      std::vector<int> stack{v};
      while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        subtree.push_back(at[x]);
        if (tree.depth[x] - top_level + 1 < ell)
          for (int ch : tree.children[x]) stack.push_back(ch);
      }
      std::sort(subtree.begin(), subtree.end());
      part.blocks[i].push_back(std::move(subtree));
    }
  }
  return part;
}

std::vector<Rat> layer_profit_check(const TreeInstance& tree, const LayerPartition& partition,
                                    const RatVec& x) {
  if (x.size() != static_cast<std::size_t>(tree.num_requests()))
    throw InputError("layer_profit_check: point length != request count");
  for (const Rat& v : x)
    if (v.sign() < 0 || v > Rat(1)) throw InputError("layer_profit_check: point leaves the box");

  std::vector<Rat> profits;
  Rat total;
  for (const auto& block : partition.blocks) {
    Rat p;
    for (const auto& subtree : block)
      for (int r : subtree) p += tree.requests[r].profit * x[r];
    total += p;
    profits.push_back(std::move(p));
  }
  Rat direct;
  for (int r = 0; r < tree.num_requests(); ++r) direct += tree.requests[r].profit * x[r];
  if (total != direct)
    throw std::logic_error("layer_profit_check: blocks do not cover the profit exactly");
  return profits;
}

namespace {

bool chromatic_backtrack(const TreeInstance& tree, const std::vector<int>& constrained,
                         const std::vector<int>& edge_set, std::size_t idx, int c,
                         std::vector<std::vector<Rat>>& loads, int used) {
  if (idx == constrained.size()) return true;
  int r = constrained[idx];
  int open_limit = std::min(c, used + 1);  // class symmetry: first unused class only
  for (int cls = 0; cls < open_limit; ++cls) {
    bool fits = true;
    for (std::size_t ei = 0; ei < edge_set.size() && fits; ++ei) {
      bool on_edge = false;
      for (int e : tree.request_edges[r])
        if (e == edge_set[ei]) {
          on_edge = true;
          break;
        }
      if (on_edge &&
          loads[cls][ei] + tree.requests[r].demand > tree.edges[edge_set[ei]].capacity)
        fits = false;
    }
    if (!fits) continue;
    for (std::size_t ei = 0; ei < edge_set.size(); ++ei)
      for (int e : tree.request_edges[r])
        if (e == edge_set[ei]) loads[cls][ei] += tree.requests[r].demand;
    if (chromatic_backtrack(tree, constrained, edge_set, idx + 1, c, loads,
                            std::max(used, cls + 1)))
      return true;
    for (std::size_t ei = 0; ei < edge_set.size(); ++ei)
      for (int e : tree.request_edges[r])
        if (e == edge_set[ei]) loads[cls][ei] -= tree.requests[r].demand;
  }
  return false;
}

}  // namespace

int exact_chromatic(const TreeInstance& tree, const std::vector<int>& edge_set,
                    int max_requests) {
  if (tree.num_requests() > max_requests)
    throw InputError("exact_chromatic: instance exceeds the search limit of " +
                     std::to_string(max_requests) + " requests");
  std::vector<int> s = sorted_unique_edges(tree, edge_set);
  std::vector<int> constrained;
  for (int r = 0; r < tree.num_requests(); ++r)
    for (int e : tree.request_edges[r])
      if (std::binary_search(s.begin(), s.end(), e)) {
        constrained.push_back(r);
        break;
      }
  if (constrained.empty()) return 1;
  for (int c = 1; c <= static_cast<int>(constrained.size()); ++c) {
    std::vector<std::vector<Rat>> loads(c, std::vector<Rat>(s.size()));
    if (chromatic_backtrack(tree, constrained, s, 0, c, loads, 0)) return c;
  }
  throw std::logic_error("exact_chromatic: no colouring found");  // unreachable: c = k works
}

}  // namespace kih
