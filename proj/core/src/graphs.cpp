#include "fr/graphs.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <queue>
#include <string>

namespace fr {

int graph_girth(int vertices, const std::vector<std::vector<int>>& adj) {
  // BFS from every vertex; a non-tree edge closing at depths d1, d2 gives
  // a cycle of length d1 + d2 + 1
  int best = std::numeric_limits<int>::max();
  std::vector<int> dist(vertices), parent(vertices);
  for (int root = 0; root < vertices; ++root) {
    std::fill(dist.begin(), dist.end(), -1);
    std::fill(parent.begin(), parent.end(), -1);
    std::queue<int> q;
    q.push(root);
    dist[root] = 0;
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int v : adj[u]) {
        if (v == parent[u]) continue;  // simple graph: tree edge
        if (dist[v] == -1) {
          dist[v] = dist[u] + 1;
          parent[v] = u;
          q.push(v);
        } else {
          best = std::min(best, dist[u] + dist[v] + 1);
        }
      }
    }
  }
  return best == std::numeric_limits<int>::max() ? 0 : best;
}

GraphSpec make_graph(int vertices, std::vector<std::pair<int, int>> edges) {
  for (auto& e : edges)
    if (e.first > e.second) std::swap(e.first, e.second);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  std::vector<std::vector<int>> adj(vertices);
  for (const auto& [u, v] : edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  GraphSpec g;
  g.vertices = vertices;
  g.edges = std::move(edges);
  g.degree = vertices > 0 ? static_cast<int>(adj[0].size()) : 0;
  for (int v = 0; v < vertices; ++v)
    if (static_cast<int>(adj[v].size()) != g.degree)
      raise(errc::not_regular, "vertex " + std::to_string(v) + " has degree " +
                                   std::to_string(adj[v].size()) +
                                   ", expected " + std::to_string(g.degree));
  g.girth = graph_girth(vertices, adj);
  return g;
}

GraphSpec complete_graph(int vertices) {
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < vertices; ++u)
    for (int v = u + 1; v < vertices; ++v) edges.push_back({u, v});
  return make_graph(vertices, std::move(edges));
}

GraphSpec complete_bipartite(int s) {
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < s; ++u)
    for (int v = 0; v < s; ++v) edges.push_back({u, s + v});
  return make_graph(2 * s, std::move(edges));
}

GraphSpec petersen() {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < 5; ++i) {
    edges.push_back({i, (i + 1) % 5});          // outer cycle
    edges.push_back({i, i + 5});                // spokes
    edges.push_back({5 + i, 5 + (i + 2) % 5});  // inner pentagram
  }
  return make_graph(10, std::move(edges));
}

GraphSpec projective_incidence(const FiniteField& f) {
  // points and lines of PG(2,q); vertices 0..N-1 points, N..2N-1 lines
  const int q = f.order();
  std::vector<std::array<int, 3>> reps;
  for (int x = 0; x < q; ++x)
    for (int y = 0; y < q; ++y)
      for (int z = 0; z < q; ++z) {
        std::array<int, 3> v{x, y, z};
        int lead = v[0] != 0 ? 0 : v[1] != 0 ? 1 : v[2] != 0 ? 2 : -1;
        if (lead >= 0 && v[lead] == 1) {
          bool canonical = true;
          for (int i = 0; i < lead; ++i)
            if (v[i] != 0) canonical = false;
          if (canonical) reps.push_back(v);
        }
      }
  const int N = static_cast<int>(reps.size());
  std::vector<std::pair<int, int>> edges;
  for (int l = 0; l < N; ++l)
    for (int p = 0; p < N; ++p) {
      int dot = 0;
      for (int i = 0; i < 3; ++i)
        dot = f.add(dot, f.mul(reps[l][i], reps[p][i]));
      if (dot == 0) edges.push_back({p, N + l});
    }
  return make_graph(2 * N, std::move(edges));
}

}  // namespace fr
