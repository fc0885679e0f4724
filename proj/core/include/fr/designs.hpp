#pragma once

#include <string>
#include <vector>

#include "fr/code.hpp"
#include "fr/gf.hpp"
#include "fr/graphs.hpp"

namespace fr {

// Parameters of a Steiner system S(t, alpha, theta); for t = 2 the
// repetition degree and block count follow by double counting.
struct SteinerParams {
  int t = 2;
  int alpha = 0;
  int theta = 0;
  int rho = 0;
  int n = 0;
};

// Verifies that every 2-subset of symbols lies in exactly one node and
// returns the derived parameters. Throws not_steiner.
SteinerParams verify_steiner2(const FRCode& code);

struct BibdParams {
  int theta = 0;
  int rho = 0;
  int alpha = 0;
  int lambda = 0;
};

// Verifies lambda-balance by exhaustive pair counting.
BibdParams verify_bibd(const FRCode& code);

// a x a grid: rows and columns of the array A(i,j) = a*i+j. Net code with
// parameters (2a, a^2, a, 2), b = 1.
FRCode grid(int a);

// Rows, columns and r-2 Latin squares L_{eta^i}(x,y) = eta^i*x + y over
// the field, each contributing a parallel class of value-level sets.
// Net code (ra, a^2, a, r) with b = 1. Requires 2 <= r <= a+1.
FRCode mols_net(const FiniteField& f, int r);

// The r Latin squares used by mols_net (multipliers eta^1..eta^r), as
// a x a value arrays; exposed for orthogonality checks.
std::vector<std::vector<std::vector<int>>> mols_squares(const FiniteField& f,
                                                        int r);

// Hyperplane classes of AG_m(q): class i is the level sets of one linear
// functional. If q > m the first min(r, q-1) functionals are the moment
// curve (1, a_i, ..., a_i^(m-1)) so that any m of them are independent;
// otherwise linearly independent functionals come first. Net code
// (q*r, q^m, q^(m-1), r) with b = q^(m-2). meta.affine.certified_prefix
// counts the leading classes for which the closed-form file size holds.
FRCode affine_resolvable(const FiniteField& f, int m, int r);

// Quadratic-residue Hadamard construction over GF(4a-1): blocks B = g+D
// paired with their complements, infinity mapped to symbol 4a-1. Net code
// (8a-2, 4a, 2a, 4a-1) with b = a, d = 2.
FRCode hadamard(int a);

// Points and lines of PG(2,q): (q^2+q+1, q^2+q+1, q+1, q+1), every two
// nodes sharing exactly one symbol.
FRCode projective_plane(const FiniteField& f);

// S(2,3,theta) via the Bose (theta = 3 mod 6) or Skolem (theta = 1 mod 6)
// construction; the output is certified by pair coverage.
FRCode steiner_triple(int theta);

// Construction from an s-regular graph: symbols are edges, node v stores
// its incident edges. Parameters (n, ns/2, s, 2), beta = 1, d = s.
FRCode girth_code(const GraphSpec& graph);

// Designs embedded verbatim from the catalog, normalized to 0-based ids.
// Names: D1, D2, S2-4-16, MOLS-16, HADAMARD-7, FANO.
FRCode catalog_load(const std::string& name);
std::vector<std::string> catalog_names();
// Raw catalog file text ('#' comments carry the source table).
std::string catalog_text(const std::string& name);
// Parses the catalog file format: one block per line, comma-separated
// labels, '#' comments. Labels (including the infinity mark) map to dense
// ids; the map is recorded in meta.label_map.
FRCode parse_catalog(const std::string& text);

}  // namespace fr
