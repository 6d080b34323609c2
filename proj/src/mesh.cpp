#include "tetroc/mesh.hpp"

#include "tetroc/errors.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

namespace tetroc {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

bool link_is_cycle(const std::vector<std::pair<int, int>>& link) {
  if (link.empty()) return false;
  std::map<int, std::vector<int>> adj;
  for (auto [a, b] : link) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  for (const auto& [v, nb] : adj)
    if (nb.size() != 2) return false;
  // Walk the cycle from any vertex; it must visit every link vertex.
  std::set<int> seen;
  int prev = -1, cur = adj.begin()->first;
  while (seen.insert(cur).second) {
    const auto& nb = adj[cur];
    int next = nb[0] != prev ? nb[0] : nb[1];
    prev = cur;
    cur = next;
  }
  return seen.size() == adj.size();
}

}  // namespace

SurfaceStats surface_stats(std::size_t num_vertices, const std::vector<std::array<int, 3>>& triangles) {
  SurfaceStats s;
  std::set<int> used;
  std::map<std::pair<int, int>, int> undirected;
  std::map<std::pair<int, int>, int> directed;
  UnionFind uf(num_vertices);
  for (const auto& t : triangles) {
    for (int k = 0; k < 3; ++k) {
      int a = t[k], b = t[(k + 1) % 3];
      used.insert(a);
      ++directed[{a, b}];
      ++undirected[{std::min(a, b), std::max(a, b)}];
      uf.unite(a, b);
    }
  }
  s.num_vertices = static_cast<std::int64_t>(used.size());
  s.num_edges = static_cast<std::int64_t>(undirected.size());
  s.num_faces = static_cast<std::int64_t>(triangles.size());
  s.euler_characteristic = s.num_vertices - s.num_edges + s.num_faces;
  std::set<int> roots;
  for (int v : used) roots.insert(uf.find(v));
  s.num_components = static_cast<std::int64_t>(roots.size());

  // Closed: no boundary edges (non-manifold edges with 4, 6, ... triangles still close up).
  s.is_closed = !triangles.empty() &&
                std::all_of(undirected.begin(), undirected.end(), [](const auto& e) { return e.second % 2 == 0; });
  s.is_orientable = s.is_closed && std::all_of(directed.begin(), directed.end(), [&](const auto& e) {
                      auto rev = directed.find({e.first.second, e.first.first});
                      return rev != directed.end() && rev->second == e.second;
                    });
  const bool two_per_edge =
      std::all_of(undirected.begin(), undirected.end(), [](const auto& e) { return e.second == 2; });
  if (s.is_closed && two_per_edge) {
    std::map<int, std::vector<std::pair<int, int>>> links;
    for (const auto& t : triangles) {
      for (int k = 0; k < 3; ++k) links[t[k]].emplace_back(t[(k + 1) % 3], t[(k + 2) % 3]);
    }
    s.is_manifold = std::all_of(links.begin(), links.end(), [](const auto& l) { return link_is_cycle(l.second); });
  }
  if (s.is_manifold && s.is_orientable) s.genus = (2 * s.num_components - s.euler_characteristic) / 2;
  return s;
}

AutomorphismGroup automorphism_group(std::size_t num_vertices, const std::vector<std::array<int, 3>>& triangles,
                                     std::size_t max_vertices) {
  std::vector<int> verts;
  {
    std::set<int> used;
    for (const auto& t : triangles) used.insert(t.begin(), t.end());
    verts.assign(used.begin(), used.end());
  }
  if (verts.size() > max_vertices) {
    throw MeshError("automorphism search limited to " + std::to_string(max_vertices) + " vertices, mesh has " +
                    std::to_string(verts.size()));
  }
  const std::size_t n = num_vertices;
  std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
  std::vector<int> degree(n, 0);
  std::set<std::array<int, 3>> faces;
  for (auto t : triangles) {
    for (int k = 0; k < 3; ++k) {
      int a = t[k], b = t[(k + 1) % 3];
      if (!adj[a][b]) {
        adj[a][b] = adj[b][a] = 1;
        ++degree[a];
        ++degree[b];
      }
    }
    std::sort(t.begin(), t.end());
    faces.insert(t);
  }

  // Visit vertices in BFS order so each new vertex is constrained by an assigned neighbour.
  std::vector<int> order;
  {
    std::vector<char> seen(n, 0);
    for (int root : verts) {
      if (seen[root]) continue;
      std::vector<int> queue{root};
      seen[root] = 1;
      for (std::size_t h = 0; h < queue.size(); ++h) {
        order.push_back(queue[h]);
        for (int w : verts)
          if (adj[queue[h]][w] && !seen[w]) {
            seen[w] = 1;
            queue.push_back(w);
          }
      }
    }
  }

  std::vector<std::vector<int>> all;
  std::vector<int> image(n, -1);
  std::vector<char> taken(n, 0);
  std::function<void(std::size_t)> extend = [&](std::size_t depth) {
    if (depth == order.size()) {
      for (const auto& f : faces) {
        std::array<int, 3> g{image[f[0]], image[f[1]], image[f[2]]};
        std::sort(g.begin(), g.end());
        if (!faces.count(g)) return;
      }
      all.push_back(image);
      return;
    }
    const int v = order[depth];
    for (int w : verts) {
      if (taken[w] || degree[w] != degree[v]) continue;
      bool ok = true;
      for (std::size_t d = 0; d < depth && ok; ++d) {
        int u = order[d];
        ok = adj[v][u] == adj[w][image[u]];
      }
      if (!ok) continue;
      image[v] = w;
      taken[w] = 1;
      extend(depth + 1);
      taken[w] = 0;
      image[v] = -1;
    }
  };
  extend(0);

  AutomorphismGroup group;
  group.order = all.size();
  // Greedy generating set: keep an element whenever it is not yet generated.
  std::set<std::vector<int>> closure;
  {
    std::vector<int> id(n, -1);
    for (int v : verts) id[v] = v;
    closure.insert(id);
  }
  auto compose = [&](const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> c(n, -1);
    for (int v : verts) c[v] = a[b[v]];
    return c;
  };
  for (const auto& g : all) {
    if (closure.count(g)) continue;
    group.generators.push_back(g);
    std::vector<std::vector<int>> frontier(closure.begin(), closure.end());
    while (!frontier.empty()) {
      std::vector<std::vector<int>> next;
      for (const auto& x : frontier) {
        for (const auto& gen : group.generators) {
          auto y = compose(gen, x);
          if (closure.insert(y).second) next.push_back(std::move(y));
        }
      }
      frontier = std::move(next);
    }
  }
  return group;
}

}  // namespace tetroc
