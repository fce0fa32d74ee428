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

#include "kih/tree.hpp"

#include <algorithm>
#include <queue>
#include <random>
#include <string>

#include "kih/error.hpp"

namespace kih {

void TreeInstance::finalize() {
  const int V = static_cast<int>(vertices.size());
  if (V == 0) throw InputError("TreeInstance: no vertices");
  for (int i = 0; i < V; ++i)
    if (vertices[i] != i) throw InputError("TreeInstance: vertex ids must be 0..V-1 in order");
  if (root < 0 || root >= V) throw InputError("TreeInstance: root out of range");
  if (static_cast<int>(edges.size()) != V - 1)
    throw InputError("TreeInstance: edge count must be V-1");

  std::vector<std::vector<std::pair<int, int>>> adj(V);  // (neighbour, edge index)
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const TreeEdge& ed = edges[e];
    if (ed.u < 0 || ed.u >= V || ed.v < 0 || ed.v >= V || ed.u == ed.v)
      throw InputError("TreeInstance: bad edge endpoints");
    if (ed.capacity.sign() <= 0) throw InputError("TreeInstance: capacity must be positive");
    adj[ed.u].push_back({ed.v, static_cast<int>(e)});
    adj[ed.v].push_back({ed.u, static_cast<int>(e)});
  }

  parent.assign(V, -1);
  parent_edge.assign(V, -1);
  depth.assign(V, -1);
  children.assign(V, {});
  std::queue<int> bfs;
  bfs.push(root);
  depth[root] = 0;
  int seen = 0;
  while (!bfs.empty()) {
    int u = bfs.front();
    bfs.pop();
    ++seen;
    for (auto [v, e] : adj[u]) {
      if (depth[v] != -1) continue;
      depth[v] = depth[u] + 1;
      parent[v] = u;
      parent_edge[v] = e;
      children[u].push_back(v);
      bfs.push(v);
    }
  }
  if (seen != V) throw InputError("TreeInstance: edges do not form a connected tree");

  // Orient every edge parent -> child.
  for (std::size_t e = 0; e < edges.size(); ++e) {
    TreeEdge& ed = edges[e];
    if (parent[ed.v] != ed.u) std::swap(ed.u, ed.v);
    if (parent[ed.v] != ed.u) throw InputError("TreeInstance: inconsistent edge orientation");
  }

  request_edges.assign(requests.size(), {});
  edge_requests.assign(edges.size(), {});
  for (std::size_t r = 0; r < requests.size(); ++r) {
    const Request& req = requests[r];
    if (req.id != static_cast<int>(r))
      throw InputError("TreeInstance: request ids must be 0..k-1 in order");
    if (req.s == req.t) throw InputError("TreeInstance: request endpoints must differ");
    if (req.s < 0 || req.s >= V || req.t < 0 || req.t >= V)
      throw InputError("TreeInstance: request endpoint out of range");
    if (req.demand.sign() < 0) throw InputError("TreeInstance: negative demand");
    if (req.profit.sign() < 0) throw InputError("TreeInstance: negative profit");

    // Walk both endpoints up to their lowest common ancestor.
    std::vector<int> up_s, up_t;
    int a = req.s, b = req.t;
    while (a != b) {
      if (depth[a] >= depth[b]) {
        up_s.push_back(parent_edge[a]);
        a = parent[a];
      } else {
        up_t.push_back(parent_edge[b]);
        b = parent[b];
      }
    }
    std::vector<int> path = up_s;
    path.insert(path.end(), up_t.rbegin(), up_t.rend());
    for (int e : path) {
      if (requests[r].demand > edges[e].capacity)
        throw InputError("TreeInstance: request " + std::to_string(r) +
                         " is not routable on its own");
      edge_requests[e].push_back(static_cast<int>(r));
    }
    request_edges[r] = std::move(path);
  }
}

TreeInstance generate_staircase(int k) {
  if (k < 1) throw InputError("generate_staircase: k must be >= 1");
  TreeInstance t;
  t.root = 0;
  t.vertices.resize(k + 1);
  for (int i = 0; i <= k; ++i) t.vertices[i] = i;
  for (int i = 1; i <= k; ++i) {
    t.edges.push_back({i - 1, i, Rat::pow2(k - i)});
    t.requests.push_back({i - 1, i, 0, Rat::pow2(k - i), Rat(1)});
  }
  t.finalize();
  return t;
}

namespace {

long long pow2_ll(long long e) {
  if (e < 0 || e > 62) throw InputError("pow2_ll: exponent out of range");
  return 1LL << e;
}

}  // namespace

long long n_of_level(int h, int level) {
  if (h < 2) throw InputError("n_of_level: h must be >= 2");
  if (level < 0 || level > h) throw InputError("n_of_level: level out of range");
  long long total = 0;
  for (int i = 0; i <= level - 1; ++i) total += pow2_ll(static_cast<long long>(h - 1) * i);
  return total;
}

Rat FgMeta::capacity(int level) const {
  if (level < 1 || level > h) throw InputError("FgMeta: level out of range");
  return Rat::pow2(static_cast<long>(h) * (h - level + 1));
}

Rat FgMeta::demand(int level) const {
  return capacity(level) - Rat::pow2(static_cast<long>(h) * (h - level));
}

Rat FgMeta::profit(int level) const {
  if (level < 1 || level > h) throw InputError("FgMeta: level out of range");
  return Rat::pow2(-static_cast<long>(h - 1) * (level - 1));
}

long long FgMeta::level_size(int level) const {
  if (level < 0 || level > h) throw InputError("FgMeta: level out of range");
  if (level == 0) return 1;
  return pow2_ll(static_cast<long long>(h - 1) * (level - 1));
}

long long FgMeta::level_first_vertex(int level) const {
  long long first = 0;
  for (int l = 0; l < level; ++l) first += level_size(l);
  return first;
}

FgMeta fg_meta(int h) {
  if (h < 2) throw InputError("fg_meta: h must be >= 2");
  FgMeta m;
  m.h = h;
  return m;
}

TreeInstance generate_friggstad_gao(int h) {
  if (h < 2) throw InputError("generate_friggstad_gao: h must be >= 2");
  constexpr long long kMaxRequests = 1'000'000;
  if (h > 5 || n_of_level(h, h) > kMaxRequests)
    throw InputError("generate_friggstad_gao: h too large for the memory budget");
  FgMeta meta = fg_meta(h);

  TreeInstance t;
  t.root = 0;
  long long total_vertices = 1 + n_of_level(h, h);
  t.vertices.resize(total_vertices);
  for (long long i = 0; i < total_vertices; ++i) t.vertices[i] = static_cast<int>(i);

  // Vertices are laid out level by level; every internal non-root vertex
  // gets 2^(h-1) children.
  int next_id = 1;
  std::vector<int> current_level{0};
  for (int level = 1; level <= h; ++level) {
    std::vector<int> next_level;
    long long fanout = level == 1 ? 1 : pow2_ll(h - 1);
    for (int u : current_level) {
      for (long long c = 0; c < fanout; ++c) {
        int v = next_id++;
        t.edges.push_back({u, v, meta.capacity(level)});
        t.requests.push_back({v - 1, v, 0, meta.demand(level), meta.profit(level)});
        next_level.push_back(v);
      }
    }
    current_level = std::move(next_level);
  }
  t.finalize();
  return t;
}

std::vector<int> request_path(const TreeInstance& tree, int request_id) {
  if (request_id < 0 || request_id >= tree.num_requests())
    throw InputError("request_path: request id out of range");
  return tree.request_edges[request_id];
}

bool is_routable(const TreeInstance& tree, const std::vector<int>& request_ids) {
  std::vector<Rat> load(tree.edges.size());
  for (int r : request_ids) {
    if (r < 0 || r >= tree.num_requests())
      throw InputError("is_routable: request id out of range");
    for (int e : tree.request_edges[r]) {
      load[e] += tree.requests[r].demand;
      if (load[e] > tree.edges[e].capacity) return false;
    }
  }
  return true;
}

PipInstance to_pip(const TreeInstance& tree) {
  const int m = tree.num_edges();
  const int k = tree.num_requests();
  RatMat A(m, k);
  RatVec b(m);
  RatVec w(k);
  std::vector<std::string> row_labels(m), col_labels(k);
  for (int e = 0; e < m; ++e) {
    b[e] = tree.edges[e].capacity;
    row_labels[e] = "e" + std::to_string(e + 1);
  }
  for (int r = 0; r < k; ++r) {
    w[r] = tree.requests[r].profit;
    col_labels[r] = "r" + std::to_string(r + 1);
    for (int e : tree.request_edges[r]) A.at(e, r) = tree.requests[r].demand;
  }
  return PipInstance::create(std::move(A), std::move(b), std::move(w), std::move(row_labels),
                             std::move(col_labels));
}

TreeInstance generate_random_tree(const RandomTreeParams& params) {
  if (params.num_vertices < 2) throw InputError("generate_random_tree: need >= 2 vertices");
  if (params.num_requests < 1) throw InputError("generate_random_tree: need >= 1 request");
  if (params.max_capacity < 1) throw InputError("generate_random_tree: max_capacity >= 1");
  std::mt19937_64 rng(params.seed);

  TreeInstance t;
  t.root = 0;
  t.vertices.resize(params.num_vertices);
  for (int i = 0; i < params.num_vertices; ++i) t.vertices[i] = i;
  std::uniform_int_distribution<long> cap_dist(1, params.max_capacity);
  for (int v = 1; v < params.num_vertices; ++v) {
    std::uniform_int_distribution<int> parent_dist(0, v - 1);
    t.edges.push_back({parent_dist(rng), v, Rat(cap_dist(rng))});
  }

  // A provisional finalize gives paths for drawing routable demands.
  TreeInstance shape = t;
  shape.finalize();

  std::uniform_int_distribution<int> vert_dist(0, params.num_vertices - 1);
  std::uniform_int_distribution<long> profit_dist(0, 9);
  for (int r = 0; r < params.num_requests; ++r) {
    int s = vert_dist(rng);
    int u = vert_dist(rng);
    while (u == s) u = vert_dist(rng);
    // Minimum capacity along the path bounds the demand.
    Request probe{0, s, u, Rat(0), Rat(0)};
    TreeInstance probe_tree = shape;
    probe_tree.requests.assign({probe});
    probe_tree.finalize();
    Rat cap_min;
    bool first = true;
    for (int e : probe_tree.request_edges[0]) {
      const Rat& c = probe_tree.edges[e].capacity;
      if (first || c < cap_min) cap_min = c;
      first = false;
    }
    std::uniform_int_distribution<long> demand_dist(0, cap_min.num().get_si());
    t.requests.push_back({r, s, u, Rat(demand_dist(rng)), Rat(profit_dist(rng))});
  }
  t.finalize();
  return t;
}

}  // namespace kih
