#include "fr/code.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

namespace fr {

void FRCode::normalize() {
  for (auto& node : nodes) {
    std::sort(node.begin(), node.end());
    node.erase(std::unique(node.begin(), node.end()), node.end());
  }
}

CodeParams validate(const FRCode& code) {
  if (code.nodes.empty() || code.theta <= 0)
    raise(errc::parse_error, "empty code");
  CodeParams p;
  p.n = code.n();
  p.theta = code.theta;
  p.alpha = static_cast<int>(code.nodes[0].size());
  for (int j = 0; j < p.n; ++j) {
    const auto& node = code.nodes[j];
    if (static_cast<int>(node.size()) != p.alpha)
      raise(errc::non_uniform_node_size,
            "node " + std::to_string(j) + " has size " +
                std::to_string(node.size()) + ", expected " +
                std::to_string(p.alpha));
    for (int s : node)
      if (s < 0 || s >= code.theta)
        raise(errc::parse_error, "node " + std::to_string(j) +
                                     " contains out-of-range symbol " +
                                     std::to_string(s));
  }
  std::vector<int> rep(code.theta, 0);
  for (const auto& node : code.nodes)
    for (int s : node) ++rep[s];
  for (int s = 0; s < code.theta; ++s)
    if (rep[s] == 0)
      raise(errc::unused_symbol,
            "symbol " + std::to_string(s) + " appears in no node");
  p.rho = rep[0];
  for (int s = 1; s < code.theta; ++s)
    if (rep[s] != p.rho)
      raise(errc::non_uniform_repetition,
            "symbol " + std::to_string(s) + " repeated " +
                std::to_string(rep[s]) + " times, expected " +
                std::to_string(p.rho));
  // duplicate node sets are legal but worth flagging
  std::map<NodeSet, int> seen;
  for (int j = 0; j < p.n; ++j) {
    auto [it, fresh] = seen.emplace(code.nodes[j], j);
    if (!fresh)
      p.warnings.push_back("nodes " + std::to_string(it->second) + " and " +
                           std::to_string(j) + " store identical symbol sets");
  }
  if (code.resolution) check_resolution(code);
  return p;
}

void check_resolution(const FRCode& code) {
  if (!code.resolution) return;
  std::vector<char> used(code.nodes.size(), 0);
  for (size_t c = 0; c < code.resolution->size(); ++c) {
    const auto& cls = (*code.resolution)[c];
    std::vector<char> covered(code.theta, 0);
    int total = 0;
    for (int j : cls) {
      if (j < 0 || j >= code.n())
        raise(errc::property_violation,
              "resolution class " + std::to_string(c) + " has bad index");
      if (used[j])
        raise(errc::property_violation,
              "node " + std::to_string(j) + " appears in two classes");
      used[j] = 1;
      for (int s : code.nodes[j]) {
        if (covered[s])
          raise(errc::property_violation,
                "class " + std::to_string(c) + " has overlapping nodes");
        covered[s] = 1;
        ++total;
      }
    }
    if (total != code.theta)
      raise(errc::property_violation, "class " + std::to_string(c) +
                                          " covers " + std::to_string(total) +
                                          " of " + std::to_string(code.theta) +
                                          " symbols");
  }
  for (size_t j = 0; j < used.size(); ++j)
    if (!used[j])
      raise(errc::property_violation,
            "node " + std::to_string(j) + " belongs to no class");
}

FRCode transpose(const FRCode& code) {
  FRCode t;
  t.theta = code.n();
  t.nodes.assign(code.theta, {});
  for (int j = 0; j < code.n(); ++j)
    for (int s : code.nodes[j]) t.nodes[s].push_back(j);
  t.normalize();
  Json meta;
  meta["compose"] = {{"op", "transpose"}};
  if (code.meta.contains("family")) meta["compose"]["of"] = code.meta["family"];
  t.meta = meta;
  return t;
}

int intersection_size(const NodeSet& a, const NodeSet& b) {
  int count = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j)
      ++i;
    else if (*j < *i)
      ++j;
    else
      ++count, ++i, ++j;
  }
  return count;
}

NodeSet intersection(const NodeSet& a, const NodeSet& b) {
  NodeSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(out));
  return out;
}

int max_pairwise_intersection(const FRCode& code) {
  int best = 0;
  for (int i = 0; i < code.n(); ++i)
    for (int j = i + 1; j < code.n(); ++j)
      best = std::max(best, intersection_size(code.nodes[i], code.nodes[j]));
  return best;
}

std::string bipartite_dot(const FRCode& code) {
  std::ostringstream out;
  out << "graph fr {\n";
  out << "  rankdir=LR;\n";
  if (code.resolution) {
    for (size_t c = 0; c < code.resolution->size(); ++c) {
      out << "  subgraph cluster_" << c << " {\n";
      out << "    label=\"class " << c << "\";\n";
      for (int j : (*code.resolution)[c])
        out << "    n" << j << " [shape=box];\n";
      out << "  }\n";
    }
  } else {
    for (int j = 0; j < code.n(); ++j)
      out << "  n" << j << " [shape=box];\n";
  }
  for (int s = 0; s < code.theta; ++s)
    out << "  s" << s << " [shape=circle];\n";
  for (int j = 0; j < code.n(); ++j)
    for (int s : code.nodes[j]) out << "  n" << j << " -- s" << s << ";\n";
  out << "}\n";
  return out.str();
}

Json code_to_json(const FRCode& code) {
  Json j;
  j["theta"] = code.theta;
  FRCode canon = code;
  canon.normalize();
  bool order_pinned =
      code.resolution.has_value() || code.meta.contains("local");
  if (!order_pinned) std::sort(canon.nodes.begin(), canon.nodes.end());
  j["nodes"] = canon.nodes;
  if (code.resolution)
    j["resolution"] = *code.resolution;
  else
    j["resolution"] = nullptr;
  j["meta"] = code.meta;
  return j;
}

FRCode code_from_json(const Json& j) {
  FRCode code;
  try {
    code.theta = j.at("theta").get<int>();
    code.nodes = j.at("nodes").get<std::vector<NodeSet>>();
    if (j.contains("resolution") && !j["resolution"].is_null())
      code.resolution = j["resolution"].get<std::vector<std::vector<int>>>();
    if (j.contains("meta")) code.meta = j["meta"];
  } catch (const Json::exception& e) {
    raise(errc::parse_error, std::string("bad code JSON: ") + e.what());
  }
  code.normalize();
  return code;
}

FRCode load_code_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) raise(errc::parse_error, "cannot open " + path);
  Json j;
  try {
    in >> j;
  } catch (const Json::exception& e) {
    raise(errc::parse_error, path + ": " + e.what());
  }
  return code_from_json(j);
}

void save_code_file(const FRCode& code, const std::string& path) {
  std::ofstream out(path);
  if (!out) raise(errc::parse_error, "cannot write " + path);
  out << code_to_json(code).dump(2) << "\n";
}

}  // namespace fr
