#pragma once

#include <utility>
#include <vector>

#include "fr/gf.hpp"

namespace fr {

// An s-regular undirected graph with its girth. Edges are stored sorted
// (u < v, lexicographic); the edge index doubles as the symbol id in the
// FR code built from the graph.
struct GraphSpec {
  int vertices = 0;
  std::vector<std::pair<int, int>> edges;
  int degree = 0;
  int girth = 0;
};

// Computes degree (throws not_regular when non-uniform) and girth, and
// sorts the edge list.
GraphSpec make_graph(int vertices, std::vector<std::pair<int, int>> edges);

GraphSpec complete_graph(int vertices);            // (v-1, 3)-graph
GraphSpec complete_bipartite(int s);               // K_{s,s}, girth 4
GraphSpec petersen();                              // (3,5)-cage
GraphSpec projective_incidence(const FiniteField& f);  // (q+1,6)-cage

int graph_girth(int vertices, const std::vector<std::vector<int>>& adj);

}  // namespace fr
