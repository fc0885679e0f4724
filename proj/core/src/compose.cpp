#include "fr/compose.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>

#include "fr/repair.hpp"

namespace fr {

std::pair<FRCode, KroneckerMeta> kronecker(const FRCode& c1,
                                           const FRCode& c2) {
  KroneckerMeta meta;
  meta.factor1 = validate(c1);
  meta.factor2 = validate(c2);
  const int n1 = meta.factor1.n;
  const int n2 = meta.factor2.n;
  const int theta2 = c2.theta;

  FRCode out;
  out.theta = c1.theta * theta2;
  out.nodes.assign(n1 * n2, {});
  for (int j = 0; j < n2; ++j)
    for (int i = 0; i < n1; ++i) {
      NodeSet& node = out.nodes[j * n1 + i];
      for (int x : c1.nodes[i])
        for (int y : c2.nodes[j]) node.push_back(x * theta2 + y);
    }
  out.normalize();

  if (c1.resolution && c2.resolution) {
    std::vector<std::vector<int>> classes;
    for (const auto& p : *c1.resolution)
      for (const auto& q : *c2.resolution) {
        std::vector<int> cls;
        for (int i : p)
          for (int j : q) cls.push_back(j * n1 + i);
        std::sort(cls.begin(), cls.end());
        classes.push_back(cls);
      }
    out.resolution = classes;
    check_resolution(out);
  }

  meta.expected = CodeParams{n1 * n2, c1.theta * theta2,
                             meta.factor1.alpha * meta.factor2.alpha,
                             meta.factor1.rho * meta.factor2.rho, 0, 0, {}};
  meta.steiner_like = meta.factor1.alpha == meta.factor2.alpha &&
                      max_pairwise_intersection(c1) <= 1 &&
                      max_pairwise_intersection(c2) <= 1;
  if (meta.steiner_like) {
    // predicted beta = alpha per the product repair argument; certify by
    // building the full table at that value
    int beta = meta.factor1.alpha;
    int d = meta.expected.alpha / beta;
    try {
      find_repair_table(out, d, beta);
      meta.certified_beta = beta;
    } catch (const Error&) {
      meta.certified_beta = std::nullopt;
    }
  }

  Json jmeta;
  jmeta["compose"] = {{"op", "kronecker"},
                      {"factors", {code_to_json(c1), code_to_json(c2)}}};
  jmeta["kronecker"] = {
      {"steiner_like", meta.steiner_like},
      {"expected",
       {{"n", meta.expected.n},
        {"theta", meta.expected.theta},
        {"alpha", meta.expected.alpha},
        {"rho", meta.expected.rho}}}};
  if (meta.certified_beta) jmeta["beta"] = *meta.certified_beta;
  out.meta = jmeta;
  return {out, meta};
}

FRCode beta_expand(const FRCode& code, int m) {
  if (m < 1) raise(errc::precondition_failed, "expansion factor must be >= 1");
  FRCode out;
  out.theta = code.theta * m;
  for (const auto& node : code.nodes) {
    NodeSet big;
    for (int s : node)
      for (int c = 0; c < m; ++c) big.push_back(s * m + c);
    out.nodes.push_back(big);
  }
  out.normalize();
  out.resolution = code.resolution;
  Json jmeta;
  jmeta["compose"] = {{"op", "beta-expand"}, {"m", m}};
  if (code.meta.contains("family")) jmeta["compose"]["of"] = code.meta["family"];
  if (code.meta.contains("beta") && code.meta["beta"].is_number())
    jmeta["beta"] = code.meta["beta"].get<int>() * m;
  out.meta = jmeta;
  return out;
}

ExpandabilityResult is_trivially_expandable(const FRCode& code, int beta) {
  CodeParams p = validate(code);
  ExpandabilityResult res;
  if (beta < 1 || p.alpha % beta != 0 || p.theta % beta != 0)
    raise(errc::non_divisible, "beta must divide alpha and theta");
  if (beta == 1) {
    res.expandable = true;
    res.base = code;
    return res;
  }
  // counting obstruction on distinct nodes
  std::vector<NodeSet> distinct = code.nodes;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()),
                 distinct.end());
  long long limit = 1;
  {
    long long top = p.theta / beta, pick = p.alpha / beta;
    // C(theta/beta, alpha/beta), saturating well above any node count
    long long num = 1;
    for (int i = 0; i < pick; ++i) {
      num = num * (top - i) / (i + 1);
      if (num > (1LL << 40)) break;
    }
    limit = num;
  }
  if (static_cast<long long>(distinct.size()) > limit) {
    res.expandable = false;
    res.obstruction = "n > C(theta/beta, alpha/beta) = C(" +
                      std::to_string(p.theta / beta) + "," +
                      std::to_string(p.alpha / beta) + ") = " +
                      std::to_string(limit);
    return res;
  }
  // group symbols by incidence pattern; a valid beta-grouping exists iff
  // every pattern class has size divisible by beta
  std::map<std::vector<int>, std::vector<int>> classes;
  {
    std::vector<std::vector<int>> pattern(code.theta);
    for (int j = 0; j < p.n; ++j)
      for (int s : code.nodes[j]) pattern[s].push_back(j);
    for (int s = 0; s < code.theta; ++s) classes[pattern[s]].push_back(s);
  }
  for (const auto& [pat, members] : classes) {
    if (static_cast<int>(members.size()) % beta != 0) {
      res.expandable = false;
      res.obstruction = "symbol group alignment violated";
      // a symbol in the deficient class together with a node-mate whose
      // incidence differs
      int s = members[0];
      int mate = s;
      if (!pat.empty()) {
        for (int t : code.nodes[pat[0]])
          if (t != s &&
              std::find(members.begin(), members.end(), t) == members.end()) {
            mate = t;
            break;
          }
      }
      res.violating = {std::min(s, mate), std::max(s, mate)};
      return res;
    }
  }
  // build the base code: groups are beta consecutive symbols within each
  // pattern class, in symbol order
  std::vector<int> group_of(code.theta, -1);
  int groups = 0;
  for (const auto& [pat, members] : classes)
    for (size_t i = 0; i < members.size(); i += beta) {
      for (int k = 0; k < beta; ++k) group_of[members[i + k]] = groups;
      ++groups;
    }
  FRCode base;
  base.theta = groups;
  for (const auto& node : code.nodes) {
    NodeSet bnode;
    for (int s : node) bnode.push_back(group_of[s]);
    std::sort(bnode.begin(), bnode.end());
    bnode.erase(std::unique(bnode.begin(), bnode.end()), bnode.end());
    base.nodes.push_back(bnode);
  }
  base.meta = Json{{"compose", {{"op", "beta-contract"}, {"m", beta}}}};
  res.expandable = true;
  res.base = base;
  return res;
}

FRCode disjoint_union(const FRCode& code, int l) {
  if (l < 1) raise(errc::precondition_failed, "need l >= 1 copies");
  CodeParams p = validate(code);
  FRCode out;
  out.theta = code.theta * l;
  std::vector<std::vector<int>> copies;
  for (int t = 0; t < l; ++t) {
    std::vector<int> members;
    for (const auto& node : code.nodes) {
      NodeSet shifted;
      for (int s : node) shifted.push_back(s + t * code.theta);
      members.push_back(out.n());
      out.nodes.push_back(shifted);
    }
    copies.push_back(members);
  }
  out.normalize();
  Json jmeta;
  jmeta["compose"] = {{"op", "union"}, {"l", l}};
  if (code.meta.contains("family")) jmeta["compose"]["of"] = code.meta["family"];
  jmeta["local"] = {{"l", l},
                    {"n_loc", p.n},
                    {"theta_loc", p.theta},
                    {"alpha", p.alpha},
                    {"rho_loc", p.rho},
                    {"copies", copies}};
  if (code.meta.contains("beta")) jmeta["beta"] = code.meta["beta"];
  out.meta = jmeta;
  return out;
}

FRCode select_classes(const FRCode& code, const std::vector<int>& indices) {
  if (!code.resolution)
    raise(errc::no_resolution, "code carries no resolution");
  const auto& classes = *code.resolution;
  std::vector<char> chosen(classes.size(), 0);
  for (int c : indices) {
    if (c < 0 || c >= static_cast<int>(classes.size()))
      raise(errc::bad_index, "class index " + std::to_string(c));
    if (chosen[c]) raise(errc::bad_index, "duplicate class index");
    chosen[c] = 1;
  }
  FRCode out;
  out.theta = code.theta;
  std::vector<std::vector<int>> new_classes;
  for (int c : indices) {
    std::vector<int> cls;
    for (int j : classes[c]) {
      cls.push_back(out.n());
      out.nodes.push_back(code.nodes[j]);
    }
    new_classes.push_back(cls);
  }
  out.resolution = new_classes;
  Json jmeta = code.meta;
  jmeta["compose"] = {{"op", "select-classes"}, {"classes", indices}};
  if (jmeta.contains("affine")) {
    // prefix certification survives only a prefix selection
    int certified = jmeta["affine"]["certified_prefix"].get<int>();
    int keep = 0;
    for (size_t i = 0; i < indices.size(); ++i)
      if (indices[i] == static_cast<int>(i) &&
          static_cast<int>(i) < certified)
        ++keep;
      else
        break;
    jmeta["affine"]["certified_prefix"] = keep;
    jmeta["affine"]["r"] = static_cast<int>(indices.size());
  }
  if (jmeta.contains("net"))
    jmeta["net"]["r"] = static_cast<int>(indices.size());
  out.meta = jmeta;
  return out;
}

namespace {

bool extend_resolution(const FRCode& code, std::vector<int>& class_of,
                       std::vector<std::vector<int>>& classes) {
  int first = -1;
  for (int j = 0; j < code.n(); ++j)
    if (class_of[j] < 0) {
      first = j;
      break;
    }
  if (first < 0) return true;
  // the lowest unassigned node opens a new class; complete it with
  // disjoint nodes until the class covers all symbols
  std::vector<int> cls = {first};
  std::vector<char> covered(code.theta, 0);
  for (int s : code.nodes[first]) covered[s] = 1;
  class_of[first] = static_cast<int>(classes.size());
  int covered_count = static_cast<int>(code.nodes[first].size());

  std::function<bool(int)> complete = [&](int from) -> bool {
    if (covered_count == code.theta) {
      classes.push_back(cls);
      if (extend_resolution(code, class_of, classes)) return true;
      classes.pop_back();
      return false;
    }
    for (int j = from; j < code.n(); ++j) {
      if (class_of[j] >= 0) continue;
      bool disjoint = true;
      for (int s : code.nodes[j])
        if (covered[s]) {
          disjoint = false;
          break;
        }
      if (!disjoint) continue;
      class_of[j] = class_of[first];
      for (int s : code.nodes[j]) covered[s] = 1;
      covered_count += static_cast<int>(code.nodes[j].size());
      cls.push_back(j);
      if (complete(j + 1)) return true;
      cls.pop_back();
      covered_count -= static_cast<int>(code.nodes[j].size());
      for (int s : code.nodes[j]) covered[s] = 0;
      class_of[j] = -1;
    }
    return false;
  };
  if (complete(first + 1)) return true;
  class_of[first] = -1;
  return false;
}

}  // namespace

std::optional<std::vector<std::vector<int>>> find_resolution(
    const FRCode& code, int threshold, bool* unknown) {
  if (unknown) *unknown = false;
  CodeParams p = validate(code);
  if (p.theta % p.alpha != 0) return std::nullopt;  // class size must divide
  if (code.n() > threshold) {
    if (unknown) *unknown = true;
    return std::nullopt;
  }
  std::vector<int> class_of(code.n(), -1);
  std::vector<std::vector<int>> classes;
  if (extend_resolution(code, class_of, classes)) return classes;
  return std::nullopt;
}

}  // namespace fr
