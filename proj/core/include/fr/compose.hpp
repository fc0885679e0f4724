#pragma once

#include <cstdint>
#include <optional>
#include <utility>

#include "fr/code.hpp"

namespace fr {

// Factor parameter records and the expected product parameters. beta is
// certified (via a full repair table at the predicted value) only when
// both factors have pairwise intersections <= 1 and equal alpha.
struct KroneckerMeta {
  CodeParams factor1;
  CodeParams factor2;
  CodeParams expected;  // componentwise products
  bool steiner_like = false;
  std::optional<int> certified_beta;
};

// Product code: symbol (x,y) -> x*theta2 + y, node (i,j) = V_i x W_j at
// index j*n1 + i (column-block layout). Resolutions multiply class-wise
// when both factors carry one.
std::pair<FRCode, KroneckerMeta> kronecker(const FRCode& c1, const FRCode& c2);

// Replaces each symbol s by the m clones {s*m, ..., s*m+m-1}; parameters
// become (n, theta*m, alpha*m, rho) and every repair scales beta by m.
FRCode beta_expand(const FRCode& code, int m);

struct ExpandabilityResult {
  bool expandable = false;
  std::optional<FRCode> base;                     // when expandable
  std::string obstruction;                        // when not
  std::optional<std::pair<int, int>> violating;   // offending symbol pair
};

// Decides whether the code is a trivial beta-expansion: true iff the
// symbols partition into beta-groups with identical incidence across all
// nodes. Reports the counting obstruction n > C(theta/beta, alpha/beta)
// when it applies.
ExpandabilityResult is_trivially_expandable(const FRCode& code, int beta);

// l symbol-disjoint copies; copy membership lands in meta.local for the
// locality analyses.
FRCode disjoint_union(const FRCode& code, int l);

// Keeps only the chosen parallel classes (rho becomes |indices|).
FRCode select_classes(const FRCode& code, const std::vector<int>& indices);

// Backtracking search for a resolution: exact for n <= threshold, else
// nullopt with *unknown set. Structural resolutions from constructors
// make this a fallback.
std::optional<std::vector<std::vector<int>>> find_resolution(
    const FRCode& code, int threshold = 40, bool* unknown = nullptr);

}  // namespace fr
