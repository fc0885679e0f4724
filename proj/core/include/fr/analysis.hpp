#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "fr/code.hpp"
#include "fr/designs.hpp"

namespace fr {

struct SearchOpts {
  std::int64_t budget = 1'000'000;  // branch-and-bound node visits
  int threads = 1;
};

// One row of the file-size profile. `value` is the exact minimum k-node
// union when exact=true, otherwise the best upper bound found before the
// budget ran out. ie_floor is the inclusion-exclusion lower bound
// k*alpha - beta_max*C(k,2).
struct FileSizeEntry {
  int k = 0;
  int value = 0;
  bool exact = false;
  std::vector<int> witness;
  int ie_floor = 0;
  bool fast_path = false;
};

// Exact min-union via branch-and-bound over k-subsets, with closed-form
// fast paths keyed by construction metadata (grid, affine prefix classes,
// MOLS nets, Hadamard, Kronecker of Steiner-like factors, transposes of
// Steiner systems with a maximal arc). Witnesses are the lexicographically
// smallest minimizing node-index subsets.
FileSizeEntry file_size(const FRCode& code, int k, const SearchOpts& = {});

// Enumeration only, no fast paths: the oracle the fast paths are checked
// against.
FileSizeEntry file_size_enumerated(const FRCode& code, int k,
                                   const SearchOpts& = {});

// Smallest failure count that can make a file of size M unrecoverable:
// n - j0 + 1 where j0 is the least j with file_size(j) >= M. Returns the
// sentinel n+1 when even all n nodes cover fewer than M symbols. Throws
// budget_exceeded when the needed levels cannot be certified.
int dmin_exact(const FRCode& code, int M, const SearchOpts& = {});

// Largest j such that some j nodes fail to cover all theta symbols.
int delta_value(const FRCode& code, const SearchOpts& = {});

// Local-code record for locality analyses (populated from the copy map
// that disjoint_union leaves in meta.local; delta and beta_loc are
// recomputed from the local code itself).
struct LocalStructure {
  int n_loc = 0;
  int theta_loc = 0;
  int alpha = 0;
  int rho_loc = 0;
  int delta = 0;
  int beta_loc = 0;
  std::vector<std::vector<int>> copies;
};

std::optional<LocalStructure> local_structure(const FRCode& code,
                                              const SearchOpts& = {});

struct BoundsReport {
  int singleton = 0;
  std::optional<int> local;  // needs d
  // max-of-two-branches bound for locally recoverable FR codes, with the
  // branch values reported alongside
  std::optional<int> local_fr;
  std::optional<int> local_fr_branch_accumulate;
  std::optional<int> local_fr_branch_partial;
  // disjoint-union specialization, when M = t*theta_loc + c with c <= alpha
  std::optional<int> mincor;
  // meeting tests for a given reconstruction degree k
  std::optional<bool> meets_singleton_at_k;
  std::optional<bool> meets_local_at_k;
};

BoundsReport bounds(const CodeParams& params, int M,
                    std::optional<int> k = std::nullopt,
                    const std::optional<LocalStructure>& local = std::nullopt);

struct Construction2Check {
  bool satisfied = false;
  long long slack = 0;
};

// (rho-1)*alpha*theta - (theta+alpha)*(delta-1)*beta over the local code.
Construction2Check check_construction2_condition(const LocalStructure& local);

struct CapArcResult {
  std::vector<int> max_cap;
  std::optional<std::vector<int>> arc;  // a cap of size rho+1, when one exists
};

// Maximum cap (no 3 symbols co-resident in a node) of a verified
// S(2,alpha,theta), by backtracking; the arc is returned when the cap
// reaches size rho+1.
CapArcResult find_cap_and_arc(const FRCode& steiner_code);
bool is_cap(const FRCode& code, const std::vector<int>& symbols);
bool is_arc(const FRCode& code, const std::vector<int>& symbols);

// Transpose plus analysis metadata: verifies the input is an S(2,a,t) and
// records alpha_t and the maximal arc (when found) under
// meta.steiner_transpose, enabling the closed-form file sizes of the
// transposed code.
FRCode steiner_transpose(const FRCode& steiner_code);

// Appendix greedy witness for b=1 nets: k nodes from distinct classes
// covering exactly alpha*k - C(k,2) symbols. Needs k <= rho and
// C(k-1,2) < a.
std::vector<int> net_file_size_greedy(const FRCode& code, int k);

// Distance-bound accumulation loop over local codes: grows a node set S
// with coverage < M (absorb a local code whenever it fits, else a maximal
// partial absorption). n - |S| upper-bounds the minimum distance.
std::vector<int> greedy_distance_accumulate(const FRCode& code,
                                            const LocalStructure& local,
                                            int M);

}  // namespace fr
