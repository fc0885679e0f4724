#include "fr/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <string>
#include <thread>

#include "fr/compose.hpp"

namespace fr {

namespace {

constexpr int kInf = std::numeric_limits<int>::max();

int ceil_div(long long a, long long b) {
  return static_cast<int>((a + b - 1) / b);
}

long long choose2(long long k) { return k * (k - 1) / 2; }

// --- symbol masks -----------------------------------------------------

using Mask = std::vector<uint64_t>;

Mask make_mask(int theta) { return Mask((theta + 63) / 64, 0); }

void mask_set(Mask& m, int s) { m[s >> 6] |= uint64_t{1} << (s & 63); }

int mask_or_count(const Mask& a, const Mask& b, Mask& out) {
  int count = 0;
  for (size_t w = 0; w < a.size(); ++w) {
    out[w] = a[w] | b[w];
    count += std::popcount(out[w]);
  }
  return count;
}

std::vector<Mask> node_masks(const FRCode& code) {
  std::vector<Mask> masks(code.n(), make_mask(code.theta));
  for (int j = 0; j < code.n(); ++j)
    for (int s : code.nodes[j]) mask_set(masks[j], s);
  return masks;
}

// --- greedy seed ------------------------------------------------------

std::pair<int, std::vector<int>> greedy_min_union(const FRCode& code, int k,
                                                  const std::vector<Mask>& nm) {
  const int n = code.n();
  int best = kInf;
  std::vector<int> best_pick;
  Mask cur = make_mask(code.theta);
  Mask tmp = make_mask(code.theta);
  for (int start = 0; start < n; ++start) {
    std::vector<char> used(n, 0);
    std::vector<int> pick = {start};
    used[start] = 1;
    cur = nm[start];
    int count = static_cast<int>(code.nodes[start].size());
    for (int step = 1; step < k; ++step) {
      int arg = -1, arg_count = kInf;
      for (int j = 0; j < n; ++j) {
        if (used[j]) continue;
        int c = mask_or_count(cur, nm[j], tmp);
        if (c < arg_count) {
          arg_count = c;
          arg = j;
        }
      }
      used[arg] = 1;
      pick.push_back(arg);
      count = mask_or_count(cur, nm[arg], cur);
    }
    if (count < best) {
      best = count;
      best_pick = pick;
    }
  }
  std::sort(best_pick.begin(), best_pick.end());
  return {best, best_pick};
}

// --- branch and bound -------------------------------------------------

// Minimizes |union of k nodes| by DFS in node-index order. Admissible
// floor: the i-th future pick adds at least alpha - i*beta_max symbols.
// With strict improvement updates the first minimum completed is the
// lexicographically smallest witness.
struct SearchResult {
  int value = kInf;
  std::vector<int> witness;
  bool completed = true;
  std::int64_t visited = 0;
};

class MinUnionSearch {
 public:
  MinUnionSearch(const FRCode& code, int k, const SearchOpts& opts)
      : code_(code),
        k_(k),
        opts_(opts),
        masks_(node_masks(code)),
        alpha_(static_cast<int>(code.nodes[0].size())),
        beta_max_(max_pairwise_intersection(code)) {
    floor_.assign(k + 1, 0);
    for (int t = k - 1; t >= 0; --t)
      floor_[t] = floor_[t + 1] + std::max(0, alpha_ - t * beta_max_);
  }

  // Explores subsets with union < incumbent; stop_below: terminate as
  // soon as any subset below the threshold completes.
  SearchResult run(int incumbent, std::optional<int> stop_below) {
    SearchResult res;
    res.value = incumbent;
    incumbent_.store(incumbent, std::memory_order_relaxed);
    visited_.store(0, std::memory_order_relaxed);
    aborted_.store(false, std::memory_order_relaxed);
    stop_below_ = stop_below;
    stopped_.store(false, std::memory_order_relaxed);
    if (opts_.threads <= 1 || code_.n() - k_ < 1) {
      Frame f;
      f.levels.assign(k_ + 1, make_mask(code_.theta));
      f.pick.assign(k_, 0);
      dfs(f, 0, 0, 0, res);
    } else {
      run_parallel(res);
    }
    res.completed = !aborted_.load();
    res.visited = visited_.load();
    if (res.value >= incumbent) {
      res.value = incumbent;
      res.witness.clear();
    }
    return res;
  }

 private:
  struct Frame {
    std::vector<Mask> levels;  // union after each depth
    std::vector<int> pick;
  };

  void dfs(Frame& f, int pos, int depth, int count, SearchResult& out) {
    if (stopped_.load(std::memory_order_relaxed)) return;
    if (visited_.fetch_add(1, std::memory_order_relaxed) >= opts_.budget) {
      aborted_.store(true, std::memory_order_relaxed);
      stopped_.store(true, std::memory_order_relaxed);
      return;
    }
    if (depth == k_) {
      int inc = incumbent_.load(std::memory_order_relaxed);
      while (count < inc &&
             !incumbent_.compare_exchange_weak(inc, count,
                                               std::memory_order_relaxed)) {
      }
      if (count < out.value) {
        out.value = count;
        out.witness.assign(f.pick.begin(), f.pick.end());
        if (stop_below_ && count < *stop_below_)
          stopped_.store(true, std::memory_order_relaxed);
      }
      return;
    }
    const int n = code_.n();
    for (int j = pos; j <= n - (k_ - depth); ++j) {
      int inc = incumbent_.load(std::memory_order_relaxed);
      int next =
          mask_or_count(f.levels[depth], masks_[j], f.levels[depth + 1]);
      if (next + floor_[depth + 1] >= inc) continue;
      f.pick[depth] = j;
      dfs(f, j + 1, depth + 1, next, out);
      if (stopped_.load(std::memory_order_relaxed)) return;
    }
  }

  void run_parallel(SearchResult& res) {
    const int n = code_.n();
    std::atomic<int> next_task{0};
    std::mutex merge_mutex;
    auto worker = [&]() {
      Frame f;
      f.levels.assign(k_ + 1, make_mask(code_.theta));
      f.pick.assign(k_, 0);
      SearchResult local;
      local.value = incumbent_.load();
      while (true) {
        int first = next_task.fetch_add(1);
        if (first > n - k_ || stopped_.load(std::memory_order_relaxed)) break;
        int count =
            mask_or_count(f.levels[0], masks_[first], f.levels[1]);
        if (count + floor_[1] >= incumbent_.load(std::memory_order_relaxed))
          continue;
        f.pick[0] = first;
        dfs(f, first + 1, 1, count, local);
      }
      std::lock_guard<std::mutex> lock(merge_mutex);
      if (local.value < res.value) {
        res.value = local.value;
        res.witness = local.witness;
      }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < opts_.threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    // deterministic lexicographic witness for exact parallel results
    if (!aborted_.load() && !stop_below_ && res.value < kInf &&
        !res.witness.empty()) {
      SearchOpts one = opts_;
      one.threads = 1;
      MinUnionSearch wsearch(code_, k_, one);
      SearchResult w = wsearch.run(res.value + 1, res.value + 1);
      if (w.value == res.value) res.witness = w.witness;
    }
  }

  const FRCode& code_;
  int k_;
  SearchOpts opts_;
  std::vector<Mask> masks_;
  int alpha_;
  int beta_max_;
  std::vector<int> floor_;
  std::atomic<int> incumbent_{kInf};
  std::atomic<std::int64_t> visited_{0};
  std::atomic<bool> aborted_{false};
  std::atomic<bool> stopped_{false};
  std::optional<int> stop_below_;
};

struct BelowResult {
  bool found = false;
  bool completed = true;
  std::vector<int> witness;
};

// Is there a k-subset covering fewer than `threshold` symbols?
BelowResult min_union_below(const FRCode& code, int k, int threshold,
                            const SearchOpts& opts) {
  BelowResult out;
  const int alpha = static_cast<int>(code.nodes[0].size());
  if (static_cast<long long>(k) * alpha < threshold) {
    out.found = true;  // k nodes cannot reach the threshold at all
    return out;
  }
  auto nm = node_masks(code);
  auto [greedy_val, greedy_pick] = greedy_min_union(code, k, nm);
  if (greedy_val < threshold) {
    out.found = true;
    out.witness = greedy_pick;
    return out;
  }
  MinUnionSearch search(code, k, opts);
  SearchResult res = search.run(threshold, threshold);
  out.completed = res.completed;
  out.found = res.value < threshold && !res.witness.empty();
  out.witness = res.witness;
  return out;
}

SearchResult exact_min_union(const FRCode& code, int k,
                             const SearchOpts& opts) {
  auto nm = node_masks(code);
  auto [greedy_val, greedy_pick] = greedy_min_union(code, k, nm);
  MinUnionSearch search(code, k, opts);
  SearchResult res = search.run(greedy_val + 1, std::nullopt);
  if (res.witness.empty()) {
    // greedy was already optimal (or the budget ran out before improving)
    res.value = greedy_val;
    res.witness = greedy_pick;
  }
  return res;
}

// --- closed forms -----------------------------------------------------

long long ipow(long long b, int e) {
  long long v = 1;
  while (e-- > 0) v *= b;
  return v;
}

std::optional<int> closed_form_value(const FRCode& code, int k,
                                     const CodeParams& p,
                                     const SearchOpts& opts);

bool pairwise_at_most_one(const FRCode& code) {
  return max_pairwise_intersection(code) <= 1;
}

std::optional<int> kronecker_closed_form(const FRCode& code, int k,
                                         const SearchOpts& opts) {
  const Json& meta = code.meta;
  if (!meta.contains("kronecker") ||
      !meta["kronecker"].value("steiner_like", false))
    return std::nullopt;
  if (!meta.contains("compose") || !meta["compose"].contains("factors"))
    return std::nullopt;
  FRCode c1 = code_from_json(meta["compose"]["factors"][0]);
  FRCode c2 = code_from_json(meta["compose"]["factors"][1]);
  CodeParams p1 = validate(c1);
  CodeParams p2 = validate(c2);
  if (p1.alpha != p2.alpha) return std::nullopt;
  if (k > std::min(p1.n, p2.n)) return std::nullopt;
  if (!pairwise_at_most_one(c1) || !pairwise_at_most_one(c2))
    return std::nullopt;
  const int alpha = p1.alpha;
  const long long floor1 = static_cast<long long>(k) * alpha - choose2(k);
  SearchOpts sub = opts;
  sub.threads = 1;
  SearchResult m1 = exact_min_union(c1, k, sub);
  SearchResult m2 = exact_min_union(c2, k, sub);
  if (!m1.completed || !m2.completed) return std::nullopt;
  if (m1.value != floor1 && m2.value != floor1) return std::nullopt;
  return static_cast<int>(static_cast<long long>(k) * alpha * alpha -
                          static_cast<long long>(alpha) * choose2(k));
}

std::optional<int> closed_form_value(const FRCode& code, int k,
                                     const CodeParams& p,
                                     const SearchOpts& opts) {
  const Json& meta = code.meta;
  const std::string family = meta.value("family", "");
  if (family == "grid") {
    int a = meta["params"]["a"].get<int>();
    if (k <= a)
      return k % 2 == 0 ? k * a - (k * k) / 4 : k * a - (k * k - 1) / 4;
  }
  if (family == "hadamard") {
    int a = meta["params"]["a"].get<int>();
    if (k == 1) return 2 * a;
    if (k == 2) return 3 * a;
  }
  if (meta.contains("affine")) {
    const auto& aff = meta["affine"];
    int q = aff["q"].get<int>();
    int m = aff["m"].get<int>();
    int r = aff["r"].get<int>();
    int certified = aff["certified_prefix"].get<int>();
    if (r <= certified && k <= m)
      return static_cast<int>(ipow(q, m) - ipow(q - 1, k) * ipow(q, m - k));
  }
  if (family == "mols-net") {
    int a = meta["net"]["a"].get<int>();
    int r = meta["net"]["r"].get<int>();
    bool lemma4 = k <= r && choose2(k - 1) < a;
    bool squares_witness = k <= r - 2;  // canonical conic-style nodes
    if (lemma4 || squares_witness)
      return static_cast<int>(static_cast<long long>(k) * a - choose2(k));
  }
  if (meta.contains("net") && meta["net"].value("b", 0) == 1) {
    int a = meta["net"]["a"].get<int>();
    int r = meta["net"]["r"].get<int>();
    if (k <= r && choose2(k - 1) < a)
      return static_cast<int>(static_cast<long long>(k) * p.alpha -
                              choose2(k));
  }
  if (meta.contains("steiner_transpose") &&
      !meta["steiner_transpose"]["arc"].is_null()) {
    int alpha_t = meta["steiner_transpose"]["alpha_t"].get<int>();
    if (k <= alpha_t + 1)
      return static_cast<int>(static_cast<long long>(k) * alpha_t -
                              choose2(k));
  }
  return kronecker_closed_form(code, k, opts);
}

// the appendix structural lemma: a bound-meeting witness in a code with
// pairwise intersections <= 1 must have all pairwise intersections equal
// to one and empty triples
void assert_structural_lemma(const FRCode& code, const std::vector<int>& w) {
  for (size_t i = 0; i < w.size(); ++i)
    for (size_t j = i + 1; j < w.size(); ++j) {
      NodeSet ij = intersection(code.nodes[w[i]], code.nodes[w[j]]);
      if (ij.size() != 1)
        raise(errc::property_violation,
              "bound-meeting witness with pairwise intersection != 1");
      for (size_t l = j + 1; l < w.size(); ++l)
        if (std::binary_search(code.nodes[w[l]].begin(),
                               code.nodes[w[l]].end(), ij[0]))
          raise(errc::property_violation,
                "bound-meeting witness with a non-empty triple intersection");
    }
}

FileSizeEntry file_size_impl(const FRCode& code, int k, const SearchOpts& opts,
                             bool allow_fast_path) {
  CodeParams p = validate(code);
  if (k < 1 || k > p.n)
    raise(errc::bad_k, "k must be in [1, " + std::to_string(p.n) + "]");
  FileSizeEntry entry;
  entry.k = k;
  int beta_max = max_pairwise_intersection(code);
  entry.ie_floor = static_cast<int>(
      std::max<long long>(0, static_cast<long long>(k) * p.alpha -
                                 static_cast<long long>(beta_max) *
                                     choose2(k)));
  if (allow_fast_path) {
    if (auto v = closed_form_value(code, k, p, opts)) {
      entry.value = *v;
      entry.exact = true;
      entry.fast_path = true;
      return entry;
    }
  }
  SearchResult res = exact_min_union(code, k, opts);
  entry.value = res.value;
  entry.exact = res.completed;
  entry.witness = res.witness;
  if (entry.exact && beta_max <= 1 &&
      entry.value == static_cast<long long>(k) * p.alpha - choose2(k) &&
      k >= 2)
    assert_structural_lemma(code, entry.witness);
  if (entry.value < entry.ie_floor)
    raise(errc::property_violation,
          "union fell below the inclusion-exclusion floor");
  return entry;
}

}  // namespace

FileSizeEntry file_size(const FRCode& code, int k, const SearchOpts& opts) {
  return file_size_impl(code, k, opts, true);
}

FileSizeEntry file_size_enumerated(const FRCode& code, int k,
                                   const SearchOpts& opts) {
  return file_size_impl(code, k, opts, false);
}

int dmin_exact(const FRCode& code, int M, const SearchOpts& opts) {
  CodeParams p = validate(code);
  if (M > p.theta) return p.n + 1;  // nothing can store such a file
  if (M < 1) raise(errc::precondition_failed, "file size must be positive");
  for (int j = std::max(1, ceil_div(M, p.alpha)); j <= p.n; ++j) {
    BelowResult r = min_union_below(code, j, M, opts);
    if (r.found) continue;  // file_size(j) < M, keep growing j
    if (!r.completed)
      raise(errc::budget_exceeded,
            "could not certify file_size(" + std::to_string(j) + ") >= " +
                std::to_string(M));
    return p.n - j + 1;
  }
  return p.n + 1;
}

int delta_value(const FRCode& code, const SearchOpts& opts) {
  CodeParams p = validate(code);
  int delta = 0;
  for (int j = 1; j < p.n; ++j) {
    if (static_cast<long long>(j) * p.alpha < p.theta) {
      delta = j;
      continue;
    }
    BelowResult r = min_union_below(code, j, p.theta, opts);
    if (r.found) {
      delta = j;
      continue;
    }
    if (!r.completed)
      raise(errc::budget_exceeded,
            "could not certify coverage at j = " + std::to_string(j));
    break;
  }
  return delta;
}

std::optional<LocalStructure> local_structure(const FRCode& code,
                                              const SearchOpts& opts) {
  if (!code.meta.contains("local")) return std::nullopt;
  const Json& loc = code.meta["local"];
  LocalStructure ls;
  ls.n_loc = loc["n_loc"].get<int>();
  ls.theta_loc = loc["theta_loc"].get<int>();
  ls.alpha = loc["alpha"].get<int>();
  ls.rho_loc = loc["rho_loc"].get<int>();
  ls.copies = loc["copies"].get<std::vector<std::vector<int>>>();
  // rebuild the local code from copy 0, with its symbols renumbered densely
  std::map<int, int> remap;
  for (int j : ls.copies[0])
    for (int s : code.nodes[j]) remap.emplace(s, 0);
  int next = 0;
  for (auto& [sym, id] : remap) id = next++;
  if (next != ls.theta_loc)
    raise(errc::property_violation, "local copy covers " +
                                        std::to_string(next) +
                                        " symbols, metadata says " +
                                        std::to_string(ls.theta_loc));
  FRCode local;
  local.theta = ls.theta_loc;
  for (int j : ls.copies[0]) {
    NodeSet node;
    for (int s : code.nodes[j]) node.push_back(remap.at(s));
    local.nodes.push_back(node);
  }
  local.normalize();
  ls.delta = delta_value(local, opts);
  ls.beta_loc = max_pairwise_intersection(local);
  return ls;
}

BoundsReport bounds(const CodeParams& p, int M, std::optional<int> k,
                    const std::optional<LocalStructure>& local) {
  BoundsReport rep;
  rep.singleton = p.n - ceil_div(M, p.alpha) + 1;
  if (p.d > 0)
    rep.local = p.n - ceil_div(M, p.alpha) -
                ceil_div(M, static_cast<long long>(p.d) * p.alpha) + 2;
  if (k) {
    rep.meets_singleton_at_k = (*k == ceil_div(M, p.alpha));
    if (p.d > 0)
      rep.meets_local_at_k =
          (*k == ceil_div(M, p.alpha) +
                     ceil_div(M, static_cast<long long>(p.d) * p.alpha) - 1);
  }
  if (local && M > local->theta_loc) {
    int rho = local->rho_loc;
    int b1 = p.n - ceil_div(static_cast<long long>(M) * rho, local->alpha) +
             rho;
    int b2 = p.n + local->n_loc + 1 -
             ceil_div(static_cast<long long>(M) * rho + local->theta_loc,
                      local->alpha);
    rep.local_fr_branch_accumulate = b1;
    rep.local_fr_branch_partial = b2;
    rep.local_fr = std::max(b1, b2);
    int l = static_cast<int>(local->copies.size());
    for (int t = 1; t < l; ++t) {
      int rem = M - t * local->theta_loc;
      if (rem >= 1 && rem <= local->alpha) {
        rep.mincor = b1;
        break;
      }
    }
  }
  return rep;
}

Construction2Check check_construction2_condition(const LocalStructure& local) {
  long long lhs =
      static_cast<long long>(local.rho_loc - 1) * local.alpha *
          local.theta_loc -
      static_cast<long long>(local.theta_loc + local.alpha) *
          (local.delta - 1) * local.beta_loc;
  return Construction2Check{lhs >= 0, lhs};
}

namespace {

// max-cap backtracking over symbols in ascending order; block_count[v]
// tracks how many chosen symbols node v already holds
void cap_dfs(const FRCode& code, int from, std::vector<int>& chosen,
             std::vector<int>& block_count,
             const std::vector<std::vector<int>>& through,
             std::vector<int>& best) {
  if (chosen.size() > best.size()) best = chosen;
  for (int s = from; s < code.theta; ++s) {
    if (static_cast<int>(chosen.size()) + code.theta - s <=
        static_cast<int>(best.size()))
      return;  // not enough symbols left to improve
    bool ok = true;
    for (int v : through[s])
      if (block_count[v] >= 2) {
        ok = false;
        break;
      }
    if (!ok) continue;
    chosen.push_back(s);
    for (int v : through[s]) ++block_count[v];
    cap_dfs(code, s + 1, chosen, block_count, through, best);
    for (int v : through[s]) --block_count[v];
    chosen.pop_back();
  }
}

}  // namespace

bool is_cap(const FRCode& code, const std::vector<int>& symbols) {
  std::set<int> s(symbols.begin(), symbols.end());
  for (const auto& node : code.nodes) {
    int hit = 0;
    for (int x : node) hit += s.count(x);
    if (hit >= 3) return false;
  }
  return true;
}

bool is_arc(const FRCode& code, const std::vector<int>& symbols) {
  std::set<int> s(symbols.begin(), symbols.end());
  for (const auto& node : code.nodes) {
    int hit = 0;
    for (int x : node) hit += s.count(x);
    if (hit != 0 && hit != 2) return false;
  }
  return true;
}

CapArcResult find_cap_and_arc(const FRCode& code) {
  SteinerParams sp = verify_steiner2(code);
  std::vector<std::vector<int>> through(code.theta);
  for (int j = 0; j < code.n(); ++j)
    for (int s : code.nodes[j]) through[s].push_back(j);
  std::vector<int> chosen, best, block_count(code.n(), 0);
  cap_dfs(code, 0, chosen, block_count, through, best);
  CapArcResult res;
  res.max_cap = best;
  if (static_cast<int>(best.size()) == sp.rho + 1) {
    if (!is_arc(code, best))
      raise(errc::property_violation,
            "a (rho+1)-cap of a Steiner system must be an arc");
    res.arc = best;
  }
  return res;
}

FRCode steiner_transpose(const FRCode& code) {
  SteinerParams sp = verify_steiner2(code);
  FRCode t = transpose(code);
  Json st;
  st["alpha_t"] = sp.rho;
  st["arc"] = nullptr;
  if (code.theta <= 64) {
    CapArcResult caps = find_cap_and_arc(code);
    if (caps.arc) st["arc"] = *caps.arc;
  }
  t.meta["steiner_transpose"] = st;
  return t;
}

std::vector<int> net_file_size_greedy(const FRCode& code, int k) {
  CodeParams p = validate(code);
  if (!code.resolution)
    raise(errc::precondition_failed, "net greedy needs a resolution");
  const auto& classes = *code.resolution;
  const int r = static_cast<int>(classes.size());
  const int a = p.theta / p.alpha;
  if (k > r || choose2(k - 1) >= a)
    raise(errc::precondition_failed,
          "need k <= rho and C(k-1,2) < a for the net greedy witness");
  // b = 1 net requirement
  std::vector<int> class_of(p.n, -1);
  for (int c = 0; c < r; ++c)
    for (int j : classes[c]) class_of[j] = c;
  for (int i = 0; i < p.n; ++i)
    for (int j = i + 1; j < p.n; ++j)
      if (class_of[i] != class_of[j] &&
          intersection_size(code.nodes[i], code.nodes[j]) != 1)
        raise(errc::precondition_failed,
              "not a b=1 net: nodes " + std::to_string(i) + "," +
                  std::to_string(j));
  std::vector<int> chosen;
  std::set<int> used_symbols;  // pairwise intersections consumed so far
  for (int c = 0; c < k; ++c) {
    int found = -1;
    for (int j : classes[c]) {
      bool ok = true;
      for (int l : chosen) {
        NodeSet inter = intersection(code.nodes[j], code.nodes[l]);
        if (inter.size() != 1 || used_symbols.count(inter[0])) {
          ok = false;
          break;
        }
      }
      if (ok) {
        found = j;
        break;
      }
    }
    if (found < 0)
      raise(errc::property_violation, "net greedy could not extend class " +
                                          std::to_string(c));
    for (int l : chosen)
      used_symbols.insert(intersection(code.nodes[found], code.nodes[l])[0]);
    chosen.push_back(found);
  }
  // the chosen nodes must cover exactly alpha*k - C(k,2) symbols
  std::set<int> cover;
  for (int j : chosen)
    cover.insert(code.nodes[j].begin(), code.nodes[j].end());
  long long expect = static_cast<long long>(p.alpha) * k - choose2(k);
  if (static_cast<long long>(cover.size()) != expect)
    raise(errc::property_violation, "net greedy witness coverage mismatch");
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

std::vector<int> greedy_distance_accumulate(const FRCode& code,
                                            const LocalStructure& local,
                                            int M) {
  std::vector<char> in_s(code.n(), 0);
  std::vector<char> covered(code.theta, 0);
  int covered_count = 0;
  auto coverage_after = [&](int j) {
    int add = 0;
    for (int s : code.nodes[j])
      if (!covered[s]) ++add;
    return covered_count + add;
  };
  auto absorb = [&](int j) {
    in_s[j] = 1;
    for (int s : code.nodes[j])
      if (!covered[s]) {
        covered[s] = 1;
        ++covered_count;
      }
  };
  // symbol sets per copy
  std::vector<std::vector<int>> copy_symbols(local.copies.size());
  for (size_t c = 0; c < local.copies.size(); ++c) {
    std::set<int> sym;
    for (int j : local.copies[c])
      sym.insert(code.nodes[j].begin(), code.nodes[j].end());
    copy_symbols[c].assign(sym.begin(), sym.end());
  }

  bool progress = true;
  while (progress && covered_count < M) {
    progress = false;
    // candidate local codes: those not fully inside S, ranked by covered
    // overlap b_j
    int best_copy = -1, best_b = -1;
    for (size_t c = 0; c < local.copies.size(); ++c) {
      bool full = true;
      for (int j : local.copies[c])
        if (!in_s[j]) {
          full = false;
          break;
        }
      if (full) continue;
      int b = 0;
      for (int s : copy_symbols[c])
        if (covered[s]) ++b;
      if (b > best_b) {
        best_b = b;
        best_copy = static_cast<int>(c);
      }
    }
    if (best_copy < 0) break;
    if (local.theta_loc - best_b + covered_count < M) {
      for (int j : local.copies[best_copy])
        if (!in_s[j]) absorb(j);
      progress = true;
      continue;
    }
    // maximal partial absorption: keep adding the node with the smallest
    // marginal coverage while staying below M
    while (true) {
      int arg = -1, arg_cov = kInf;
      for (int j : local.copies[best_copy]) {
        if (in_s[j]) continue;
        int c = coverage_after(j);
        if (c < arg_cov) {
          arg_cov = c;
          arg = j;
        }
      }
      if (arg < 0 || arg_cov >= M) break;
      absorb(arg);
      progress = true;
    }
    if (!progress) break;
  }
  std::vector<int> s;
  for (int j = 0; j < code.n(); ++j)
    if (in_s[j]) s.push_back(j);
  return s;
}

}  // namespace fr
