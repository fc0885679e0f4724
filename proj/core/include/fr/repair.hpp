#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "fr/code.hpp"

namespace fr {

// One way to rebuild a failed node: d helper nodes, each shipping a
// download set of exactly beta symbols. The downloads are pairwise
// disjoint and partition the failed node's symbol set.
struct RepairOption {
  std::vector<int> helpers;
  std::vector<NodeSet> downloads;  // downloads[i] comes from helpers[i]
};

struct RepairTable {
  // options[j] lists the repair options for node j
  std::vector<std::vector<RepairOption>> options;
};

struct RepairSearchOpts {
  std::int64_t candidate_cap = 1'000'000;  // helper d-sets tried per node
  int max_options = 4;                     // options kept per node
};

// Decides whether `failed` can be rebuilt from `survivors` by downloading
// beta symbols each from some d of them. Feasibility for a fixed helper
// set is a bipartite flow (symbols demand 1, helpers supply beta); helper
// sets are tried resolution classes first, then by descending overlap
// with the failed node. Returns the first option found.
std::optional<RepairOption> check_beta_recoverable(
    const FRCode& code, int failed, const std::vector<int>& survivors, int d,
    int beta, const RepairSearchOpts& opts = {});

// Collects repair options for every node assuming all other n-1 nodes
// survive. Throws not_an_fr_code if some node has none.
RepairTable find_repair_table(const FRCode& code, int d, int beta,
                              const RepairSearchOpts& opts = {});

// Asserts the RepairTable invariants (disjoint beta-sized downloads
// partitioning each node). Throws property_violation.
void check_repair_table(const FRCode& code, const RepairTable& table, int d,
                        int beta);

enum class RepairMode { kStatic, kSequential };

struct ResilienceResult {
  int value = 0;
  bool exhaustive = true;  // false once any level was sampled
};

struct ResilienceReport {
  int rho_res_static = 0;
  int rho_res_sequential = 0;
  bool exhaustive = true;
};

// Largest tau such that every tau-subset of failures is survivable.
// Static mode repairs each failed node from the original survivors only;
// sequential mode lets already repaired nodes serve later repairs.
// Levels with C(n,tau) > budget are sampled (budget draws, seeded), and
// the result is then only a lower bound with exhaustive=false.
ResilienceResult resilience(const FRCode& code, int d, int beta,
                            RepairMode mode, std::int64_t budget = 1'000'000,
                            std::uint64_t seed = 0);

ResilienceReport resilience_report(const FRCode& code, int d, int beta,
                                   std::int64_t budget = 1'000'000,
                                   std::uint64_t seed = 0);

}  // namespace fr
