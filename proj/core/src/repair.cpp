#include "fr/repair.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>
#include <string>

namespace fr {

namespace {

// Bipartite assignment: every symbol of `target` to exactly one helper
// that stores it, no helper taking more than `beta`. Kuhn's augmenting
// paths; the instances are tiny (alpha symbols, d helpers).
bool assign_downloads(const NodeSet& target,
                      const std::vector<const NodeSet*>& helpers, int beta,
                      std::vector<int>& symbol_owner) {
  int ns = static_cast<int>(target.size());
  int nh = static_cast<int>(helpers.size());
  std::vector<std::vector<int>> adj(ns);
  for (int s = 0; s < ns; ++s)
    for (int h = 0; h < nh; ++h)
      if (std::binary_search(helpers[h]->begin(), helpers[h]->end(),
                             target[s]))
        adj[s].push_back(h);
  std::vector<int> load(nh, 0);
  std::vector<std::vector<int>> match(nh);  // symbols assigned per helper
  symbol_owner.assign(ns, -1);
  std::vector<char> visited;

  std::function<bool(int)> augment = [&](int s) -> bool {
    for (int h : adj[s]) {
      if (visited[h]) continue;
      visited[h] = 1;
      if (load[h] < beta) {
        ++load[h];
        match[h].push_back(s);
        symbol_owner[s] = h;
        return true;
      }
      for (size_t i = 0; i < match[h].size(); ++i) {
        if (augment(match[h][i])) {
          match[h][i] = s;
          symbol_owner[s] = h;
          return true;
        }
      }
    }
    return false;
  };

  for (int s = 0; s < ns; ++s) {
    visited.assign(nh, 0);
    if (!augment(s)) return false;
  }
  return true;
}

std::optional<RepairOption> try_helper_set(const FRCode& code, int failed,
                                           const std::vector<int>& helper_ids,
                                           int beta) {
  const NodeSet& target = code.nodes[failed];
  std::vector<const NodeSet*> helpers;
  helpers.reserve(helper_ids.size());
  for (int h : helper_ids) helpers.push_back(&code.nodes[h]);
  std::vector<int> owner;
  if (!assign_downloads(target, helpers, beta, owner)) return std::nullopt;
  RepairOption opt;
  opt.helpers = helper_ids;
  opt.downloads.assign(helper_ids.size(), {});
  for (size_t s = 0; s < owner.size(); ++s)
    opt.downloads[owner[s]].push_back(target[s]);
  for (auto& dl : opt.downloads)
    if (static_cast<int>(dl.size()) != beta) return std::nullopt;
  return opt;
}

// Feeds feasible repair options for `failed` to `sink` in a deterministic
// order: intact parallel classes first, then helper d-sets enumerated over
// candidates ranked by descending overlap with the failed node. Stops when
// sink returns false or the candidate cap is hit.
void enumerate_options(const FRCode& code, int failed,
                       const std::vector<char>& alive, int d, int beta,
                       const RepairSearchOpts& opts,
                       const std::function<bool(RepairOption&&)>& sink) {
  const int alpha = static_cast<int>(code.nodes[failed].size());
  if (d * beta != alpha)
    raise(errc::parameter_mismatch, "d*beta = " + std::to_string(d * beta) +
                                        " but alpha = " +
                                        std::to_string(alpha));
  std::vector<std::vector<int>> emitted;
  if (code.resolution) {
    for (const auto& cls : *code.resolution) {
      if (static_cast<int>(cls.size()) != d) continue;
      bool ok = true;
      for (int j : cls)
        if (j == failed || !alive[j]) {
          ok = false;
          break;
        }
      if (!ok) continue;
      std::vector<int> ids = cls;
      std::sort(ids.begin(), ids.end());
      if (auto opt = try_helper_set(code, failed, ids, beta)) {
        emitted.push_back(ids);
        if (!sink(std::move(*opt))) return;
      }
    }
  }

  std::vector<std::pair<int, int>> ranked;  // (-overlap, id)
  for (int j = 0; j < code.n(); ++j) {
    if (j == failed || !alive[j]) continue;
    int ov = intersection_size(code.nodes[failed], code.nodes[j]);
    if (ov > 0) ranked.push_back({-ov, j});
  }
  std::sort(ranked.begin(), ranked.end());
  int nc = static_cast<int>(ranked.size());
  if (nc < d) return;

  std::vector<int> idx(d);
  std::iota(idx.begin(), idx.end(), 0);
  std::int64_t tried = 0;
  while (true) {
    int cap = 0;
    for (int i : idx) cap += std::min(-ranked[i].first, beta);
    if (cap >= alpha) {
      std::vector<int> ids(d);
      for (int i = 0; i < d; ++i) ids[i] = ranked[idx[i]].second;
      std::sort(ids.begin(), ids.end());
      if (std::find(emitted.begin(), emitted.end(), ids) == emitted.end()) {
        if (auto opt = try_helper_set(code, failed, ids, beta)) {
          emitted.push_back(ids);
          if (!sink(std::move(*opt))) return;
        }
      }
    }
    if (++tried >= opts.candidate_cap) return;
    int i = d - 1;
    while (i >= 0 && idx[i] == nc - d + i) --i;
    if (i < 0) return;
    ++idx[i];
    for (int k = i + 1; k < d; ++k) idx[k] = idx[k - 1] + 1;
  }
}

}  // namespace

std::optional<RepairOption> check_beta_recoverable(
    const FRCode& code, int failed, const std::vector<int>& survivors, int d,
    int beta, const RepairSearchOpts& opts) {
  std::vector<char> alive(code.n(), 0);
  for (int s : survivors)
    if (s != failed) alive[s] = 1;
  std::optional<RepairOption> found;
  enumerate_options(code, failed, alive, d, beta, opts,
                    [&](RepairOption&& opt) {
                      found = std::move(opt);
                      return false;
                    });
  return found;
}

RepairTable find_repair_table(const FRCode& code, int d, int beta,
                              const RepairSearchOpts& opts) {
  RepairTable table;
  table.options.resize(code.n());
  std::vector<char> alive(code.n(), 1);
  for (int j = 0; j < code.n(); ++j) {
    auto& out = table.options[j];
    enumerate_options(code, j, alive, d, beta, opts,
                      [&](RepairOption&& opt) {
                        out.push_back(std::move(opt));
                        return static_cast<int>(out.size()) <
                               opts.max_options;
                      });
    if (out.empty())
      raise(errc::not_an_fr_code,
            "node " + std::to_string(j) +
                " has no repair option even with all others alive");
  }
  check_repair_table(code, table, d, beta);
  return table;
}

void check_repair_table(const FRCode& code, const RepairTable& table, int d,
                        int beta) {
  for (int j = 0; j < code.n(); ++j) {
    for (const auto& opt : table.options[j]) {
      if (static_cast<int>(opt.helpers.size()) != d)
        raise(errc::property_violation, "option with wrong helper count");
      NodeSet covered;
      for (size_t i = 0; i < opt.helpers.size(); ++i) {
        int h = opt.helpers[i];
        if (h == j) raise(errc::property_violation, "node helps itself");
        const auto& dl = opt.downloads[i];
        if (static_cast<int>(dl.size()) != beta)
          raise(errc::property_violation, "download set is not beta-sized");
        for (int s : dl) {
          if (!std::binary_search(code.nodes[h].begin(), code.nodes[h].end(),
                                  s))
            raise(errc::property_violation, "helper lacks downloaded symbol");
          if (!std::binary_search(code.nodes[j].begin(), code.nodes[j].end(),
                                  s))
            raise(errc::property_violation, "download outside failed node");
          covered.push_back(s);
        }
      }
      std::sort(covered.begin(), covered.end());
      if (std::adjacent_find(covered.begin(), covered.end()) != covered.end())
        raise(errc::property_violation, "download sets overlap");
      if (covered != code.nodes[j])
        raise(errc::property_violation, "downloads do not rebuild the node");
    }
  }
}

namespace {

bool survives_failure(const FRCode& code, const std::vector<int>& failed, int d,
                      int beta, RepairMode mode) {
  std::vector<char> down(code.n(), 0);
  for (int f : failed) down[f] = 1;
  std::vector<int> survivors;
  for (int j = 0; j < code.n(); ++j)
    if (!down[j]) survivors.push_back(j);
  if (mode == RepairMode::kStatic) {
    for (int f : failed)
      if (!check_beta_recoverable(code, f, survivors, d, beta)) return false;
    return true;
  }
  // sequential: fixed-point greedy, complete because a repair only ever
  // enlarges the survivor set
  std::vector<int> pending = failed;
  bool progress = true;
  while (!pending.empty() && progress) {
    progress = false;
    for (size_t i = 0; i < pending.size(); ++i) {
      int f = pending[i];
      if (check_beta_recoverable(code, f, survivors, d, beta)) {
        survivors.insert(
            std::upper_bound(survivors.begin(), survivors.end(), f), f);
        pending.erase(pending.begin() + i);
        progress = true;
        break;
      }
    }
  }
  return pending.empty();
}

bool all_subsets_survive(const FRCode& code, int tau, int d, int beta,
                         RepairMode mode) {
  int n = code.n();
  std::vector<int> idx(tau);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    if (!survives_failure(code, idx, d, beta, mode)) return false;
    int i = tau - 1;
    while (i >= 0 && idx[i] == n - tau + i) --i;
    if (i < 0) return true;
    ++idx[i];
    for (int k = i + 1; k < tau; ++k) idx[k] = idx[k - 1] + 1;
  }
}

double binomial_approx(int n, int k) {
  double v = 1;
  for (int i = 0; i < k; ++i) v *= static_cast<double>(n - i) / (i + 1);
  return v;
}

}  // namespace

ResilienceResult resilience(const FRCode& code, int d, int beta,
                            RepairMode mode, std::int64_t budget,
                            std::uint64_t seed) {
  CodeParams p = validate(code);
  ResilienceResult res;
  // failing all rho holders of one symbol is always fatal under pure
  // download repair, so tau never reaches rho
  int tau_cap = std::min(p.rho - 1, p.n - d);
  std::mt19937_64 rng(seed);
  for (int tau = 1; tau <= tau_cap; ++tau) {
    bool ok;
    if (binomial_approx(p.n, tau) <= static_cast<double>(budget)) {
      ok = all_subsets_survive(code, tau, d, beta, mode);
    } else {
      res.exhaustive = false;
      ok = true;
      std::vector<int> all(p.n);
      std::iota(all.begin(), all.end(), 0);
      for (std::int64_t t = 0; t < budget && ok; ++t) {
        std::vector<int> pick = all;
        for (int i = 0; i < tau; ++i) {
          std::uniform_int_distribution<int> dist(i, p.n - 1);
          std::swap(pick[i], pick[dist(rng)]);
        }
        pick.resize(tau);
        std::sort(pick.begin(), pick.end());
        ok = survives_failure(code, pick, d, beta, mode);
      }
    }
    if (!ok) {
      res.value = tau - 1;
      return res;
    }
    res.value = tau;
  }
  return res;
}

ResilienceReport resilience_report(const FRCode& code, int d, int beta,
                                   std::int64_t budget, std::uint64_t seed) {
  ResilienceReport rep;
  auto st = resilience(code, d, beta, RepairMode::kStatic, budget, seed);
  auto sq = resilience(code, d, beta, RepairMode::kSequential, budget, seed);
  rep.rho_res_static = st.value;
  rep.rho_res_sequential = sq.value;
  rep.exhaustive = st.exhaustive && sq.exhaustive;
  return rep;
}

}  // namespace fr
