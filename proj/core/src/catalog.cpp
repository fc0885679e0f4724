#include <algorithm>
#include <map>
#include <sstream>

#include "fr/designs.hpp"

namespace fr {

namespace {

// Each entry keeps the source table in its comment header and one block
// per data line. The loader normalizes labels to dense 0-based ids.

const char* kD1 = R"(# Steiner system S(2,3,15), design D1.
# Source table:
#   {0, 1, 2}  {0, 3, 4}   {0, 5, 6}   {0, 8, 7}   {0, 9, 10}
#   {0, 11, 12} {0, 13, 14} {1, 3, 5}  {1, 4, 7}   {8, 1, 6}
#   {1, 11, 9} {1, 10, 13} {1, 12, 14} {9, 2, 3}   {2, 4, 6}
#   {2, 10, 5} {2, 14, 7}  {8, 2, 12}  {2, 11, 13} {3, 11, 6}
#   {3, 12, 7} {8, 3, 13}  {10, 3, 14} {4, 5, 13}  {8, 9, 4}
#   {4, 10, 12} {11, 4, 14} {11, 5, 7} {8, 5, 14}  {9, 12, 5}
#   {10, 6, 7} {9, 6, 14}  {12, 13, 6} {9, 13, 7}  {8, 10, 11}
0,1,2
0,3,4
0,5,6
0,8,7
0,9,10
0,11,12
0,13,14
1,3,5
1,4,7
8,1,6
1,11,9
1,10,13
1,12,14
9,2,3
2,4,6
2,10,5
2,14,7
8,2,12
2,11,13
3,11,6
3,12,7
8,3,13
10,3,14
4,5,13
8,9,4
4,10,12
11,4,14
11,5,7
8,5,14
9,12,5
10,6,7
9,6,14
12,13,6
9,13,7
8,10,11
)";

const char* kD2 = R"(# Steiner system S(2,3,15), design D2 (not isomorphic to D1).
# Source table:
#   {1, 11, 6}  {1, 2, 5}   {2, 3, 6}   {9, 5, 6}   {3, 11, 5}
#   {7, 13, 5}  {11, 4, 13} {2, 12, 7}  {3, 4, 7}   {8, 4, 5}
#   {8, 11, 7}  {4, 12, 6}  {8, 6, 14}  {12, 5, 14} {8, 3, 13}
#   {8, 9, 12}  {9, 10, 13} {1, 12, 13} {0, 9, 7}   {9, 2, 11}
#   {0, 8, 2}   {9, 4, 14}  {10, 11, 14} {0, 11, 12} {0, 3, 14}
#   {8, 1, 10}  {10, 3, 12} {1, 3, 9}   {0, 10, 5}  {0, 13, 6}
#   {1, 14, 7}  {2, 4, 10}  {2, 13, 14} {0, 1, 4}   {10, 6, 7}
1,11,6
1,2,5
2,3,6
9,5,6
3,11,5
7,13,5
11,4,13
2,12,7
3,4,7
8,4,5
8,11,7
4,12,6
8,6,14
12,5,14
8,3,13
8,9,12
9,10,13
1,12,13
0,9,7
9,2,11
0,8,2
9,4,14
10,11,14
0,11,12
0,3,14
8,1,10
10,3,12
1,3,9
0,10,5
0,13,6
1,14,7
2,4,10
2,13,14
0,1,4
10,6,7
)";

const char* kS2416 = R"(# Steiner system S(2,4,16).
# Source table:
#   {1, 4, 7, 8}   {0, 2, 8, 9}   {1, 3, 5, 9}   {2, 4, 5, 6}
#   {0, 3, 6, 7}   {6, 9, 12, 13} {5, 7, 13, 14} {6, 8, 10, 14}
#   {7, 9, 10, 11} {5, 8, 11, 12} {2, 3, 11, 14} {3, 4, 10, 12}
#   {0, 4, 11, 13} {0, 1, 12, 14} {1, 2, 10, 13} {0, 5, 10, 15}
#   {1, 6, 11, 15} {2, 7, 12, 15} {3, 8, 13, 15} {4, 9, 14, 15}
1,4,7,8
0,2,8,9
1,3,5,9
2,4,5,6
0,3,6,7
6,9,12,13
5,7,13,14
6,8,10,14
7,9,10,11
5,8,11,12
2,3,11,14
3,4,10,12
0,4,11,13
0,1,12,14
1,2,10,13
0,5,10,15
1,6,11,15
2,7,12,15
3,8,13,15
4,9,14,15
)";

const char* kMols16 = R"(# Net FR code (16,16,4,4) from two orthogonal Latin squares of order 4.
# Each table row is a parallel class.
# Source table:
#   {1,2,3,4}    {5,6,7,8}    {9,10,11,12}  {13,14,15,16}
#   {1,5,9,13}   {2,6,10,14}  {3,7,11,15}   {4,8,12,16}
#   {1,6,11,16}  {2,5,12,15}  {3,8,9,14}    {4,7,10,13}
#   {1,7,12,14}  {2,8,11,13}  {3,5,10,16}   {4,6,9,15}
1,2,3,4
5,6,7,8
9,10,11,12
13,14,15,16
1,5,9,13
2,6,10,14
3,7,11,15
4,8,12,16
1,6,11,16
2,5,12,15
3,8,9,14
4,7,10,13
1,7,12,14
2,8,11,13
3,5,10,16
4,6,9,15
)";

const char* kHadamard7 = R"(# Hadamard design code from the (7,3,1)-difference set in F_7.
# Each table row is a parallel class; 'inf' is the adjoined point.
# Source table:
#   {inf, 1, 2, 4}  {0, 3, 5, 6}
#   {inf, 2, 3, 5}  {1, 4, 6, 0}
#   {inf, 3, 4, 6}  {2, 5, 0, 1}
#   {inf, 4, 5, 0}  {3, 6, 1, 2}
#   {inf, 5, 6, 1}  {4, 0, 2, 3}
#   {inf, 6, 0, 2}  {5, 1, 3, 4}
#   {inf, 0, 1, 3}  {6, 2, 4, 5}
inf,1,2,4
0,3,5,6
inf,2,3,5
1,4,6,0
inf,3,4,6
2,5,0,1
inf,4,5,0
3,6,1,2
inf,5,6,1
4,0,2,3
inf,6,0,2
5,1,3,4
inf,0,1,3
6,2,4,5
)";

const char* kFano = R"(# Fano plane, the (7,3,3,1)-BIBD: development of the
# (7,3,1)-difference set {1,2,4} in F_7.
1,2,4
2,3,5
3,4,6
4,5,0
5,6,1
6,0,2
0,1,3
)";

struct Entry {
  const char* text;
  int classes;      // consecutive class size in blocks, 0 = no resolution
  int class_count;  // number of classes
};

const std::map<std::string, Entry>& registry() {
  static const std::map<std::string, Entry> reg = {
      {"D1", {kD1, 0, 0}},          {"D2", {kD2, 0, 0}},
      {"S2-4-16", {kS2416, 0, 0}},  {"MOLS-16", {kMols16, 4, 4}},
      {"HADAMARD-7", {kHadamard7, 2, 7}}, {"FANO", {kFano, 0, 0}},
  };
  return reg;
}

bool numeric(const std::string& s) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

}  // namespace

FRCode parse_catalog(const std::string& text) {
  std::vector<std::vector<std::string>> blocks;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::vector<std::string> labels;
    std::string token;
    std::istringstream ls(line);
    while (std::getline(ls, token, ',')) {
      token.erase(0, token.find_first_not_of(" \t"));
      token.erase(token.find_last_not_of(" \t") + 1);
      if (!token.empty()) labels.push_back(token);
    }
    if (!labels.empty()) blocks.push_back(labels);
  }
  if (blocks.empty()) raise(errc::parse_error, "catalog text has no blocks");

  // numeric labels in numeric order first, then the rest by appearance
  std::vector<std::string> numeric_labels, other_labels;
  std::map<std::string, char> seen;
  for (const auto& b : blocks)
    for (const auto& l : b)
      if (!seen[l]++) (numeric(l) ? numeric_labels : other_labels).push_back(l);
  std::sort(numeric_labels.begin(), numeric_labels.end(),
            [](const std::string& a, const std::string& b) {
              return std::stol(a) < std::stol(b);
            });
  std::map<std::string, int> label_map;
  int next = 0;
  for (const auto& l : numeric_labels) label_map[l] = next++;
  for (const auto& l : other_labels) label_map[l] = next++;

  FRCode code;
  code.theta = next;
  for (const auto& b : blocks) {
    NodeSet node;
    for (const auto& l : b) node.push_back(label_map.at(l));
    code.nodes.push_back(node);
  }
  code.normalize();
  Json jmap = Json::object();
  for (const auto& [label, id] : label_map) jmap[label] = id;
  code.meta = Json{{"family", "catalog"}, {"label_map", jmap}};
  return code;
}

std::vector<std::string> catalog_names() {
  std::vector<std::string> names;
  for (const auto& [name, entry] : registry()) names.push_back(name);
  return names;
}

std::string catalog_text(const std::string& name) {
  auto it = registry().find(name);
  if (it == registry().end())
    raise(errc::unknown_name, "no catalog entry named " + name);
  return it->second.text;
}

FRCode catalog_load(const std::string& name) {
  auto it = registry().find(name);
  if (it == registry().end())
    raise(errc::unknown_name, "no catalog entry named " + name);
  FRCode code = parse_catalog(it->second.text);
  code.meta["family"] = "catalog:" + name;
  const Entry& e = it->second;
  if (e.classes > 0) {
    std::vector<std::vector<int>> classes;
    for (int c = 0; c < e.class_count; ++c) {
      std::vector<int> cls;
      for (int i = 0; i < e.classes; ++i) cls.push_back(c * e.classes + i);
      classes.push_back(cls);
    }
    code.resolution = classes;
    check_resolution(code);
  }
  if (name == "MOLS-16")
    code.meta["net"] = Json{{"a", 4}, {"b", 1}, {"r", 4}};
  if (name == "HADAMARD-7")
    code.meta["net"] = Json{{"a", 2}, {"b", 2}, {"r", 7}};
  return code;
}

}  // namespace fr
