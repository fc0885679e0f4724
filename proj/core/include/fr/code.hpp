#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fr/error.hpp"

namespace fr {

using Json = nlohmann::json;
using NodeSet = std::vector<int>;  // sorted ascending, unique

// A fractional repetition code: theta symbols (ids 0..theta-1) placed on
// n storage nodes. `resolution`, when present, partitions the node indices
// into parallel classes (each class a disjoint cover of the symbol set).
// `meta` is a free-form provenance record (family name, construction
// parameters, compose lineage).
struct FRCode {
  int theta = 0;
  std::vector<NodeSet> nodes;
  std::optional<std::vector<std::vector<int>>> resolution;
  Json meta = Json::object();

  int n() const { return static_cast<int>(nodes.size()); }

  // Sorts every node set ascending and drops duplicate symbols.
  void normalize();
};

// Derived parameter record. beta/d are 0 until a repair analysis fills
// them in; gamma() is the total repair bandwidth d*beta (= alpha at the
// MBR operating point).
struct CodeParams {
  int n = 0;
  int theta = 0;
  int alpha = 0;
  int rho = 0;
  int beta = 0;
  int d = 0;
  std::vector<std::string> warnings;

  int gamma() const { return beta * d; }
};

// Checks the uniformity requirements (all nodes of size alpha, every
// symbol repeated exactly rho times) and returns the derived parameters.
// Throws non_uniform_node_size / non_uniform_repetition / unused_symbol,
// naming the offending node or symbol. Duplicate node sets produce a
// warning, not an error.
CodeParams validate(const FRCode& code);

// Incidence-matrix transpose: nodes become symbols and vice versa.
// The result is only an FR code if it passes validate/repair again.
FRCode transpose(const FRCode& code);

// Node-symbol bipartite graph in DOT text, deterministic ordering.
// Parallel classes render as clusters when a resolution is present.
std::string bipartite_dot(const FRCode& code);

int intersection_size(const NodeSet& a, const NodeSet& b);
NodeSet intersection(const NodeSet& a, const NodeSet& b);
int max_pairwise_intersection(const FRCode& code);

// Canonical JSON: each node set ascending; node order sorted
// lexicographically unless a resolution or local-copy metadata pins it.
Json code_to_json(const FRCode& code);
FRCode code_from_json(const Json& j);
FRCode load_code_file(const std::string& path);
void save_code_file(const FRCode& code, const std::string& path);

// Verifies the resolution invariants (partition of node indices, classes
// disjointly covering the symbol set). Throws property_violation.
void check_resolution(const FRCode& code);

}  // namespace fr
