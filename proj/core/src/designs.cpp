#include "fr/designs.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <set>
#include <string>

namespace fr {

SteinerParams verify_steiner2(const FRCode& code) {
  CodeParams p = validate(code);
  std::vector<std::vector<int>> pair_count(code.theta,
                                           std::vector<int>(code.theta, 0));
  for (const auto& node : code.nodes)
    for (size_t i = 0; i < node.size(); ++i)
      for (size_t j = i + 1; j < node.size(); ++j)
        ++pair_count[node[i]][node[j]];
  for (int x = 0; x < code.theta; ++x)
    for (int y = x + 1; y < code.theta; ++y)
      if (pair_count[x][y] != 1)
        raise(errc::not_steiner, "pair {" + std::to_string(x) + "," +
                                     std::to_string(y) + "} lies in " +
                                     std::to_string(pair_count[x][y]) +
                                     " nodes");
  return SteinerParams{2, p.alpha, p.theta, p.rho, p.n};
}

BibdParams verify_bibd(const FRCode& code) {
  CodeParams p = validate(code);
  int lambda = -1;
  std::vector<std::vector<int>> pair_count(code.theta,
                                           std::vector<int>(code.theta, 0));
  for (const auto& node : code.nodes)
    for (size_t i = 0; i < node.size(); ++i)
      for (size_t j = i + 1; j < node.size(); ++j)
        ++pair_count[node[i]][node[j]];
  for (int x = 0; x < code.theta; ++x)
    for (int y = x + 1; y < code.theta; ++y) {
      if (lambda < 0) lambda = pair_count[x][y];
      if (pair_count[x][y] != lambda)
        raise(errc::property_violation,
              "pair balance broken at {" + std::to_string(x) + "," +
                  std::to_string(y) + "}");
    }
  return BibdParams{p.theta, p.rho, p.alpha, lambda};
}

FRCode grid(int a) {
  if (a < 2) raise(errc::precondition_failed, "grid needs a >= 2");
  FRCode code;
  code.theta = a * a;
  std::vector<int> rows, cols;
  for (int i = 0; i < a; ++i) {
    NodeSet row;
    for (int j = 0; j < a; ++j) row.push_back(a * i + j);
    code.nodes.push_back(row);
    rows.push_back(i);
  }
  for (int i = 0; i < a; ++i) {
    NodeSet col;
    for (int j = 0; j < a; ++j) col.push_back(a * j + i);
    code.nodes.push_back(col);
    cols.push_back(a + i);
  }
  code.normalize();
  code.resolution = {{rows}, {cols}};
  code.meta = Json{{"family", "grid"},
                   {"params", {{"a", a}}},
                   {"net", {{"a", a}, {"b", 1}, {"r", 2}}},
                   {"beta", 1}};
  return code;
}

std::vector<std::vector<std::vector<int>>> mols_squares(const FiniteField& f,
                                                        int r) {
  const int a = f.order();
  std::vector<std::vector<std::vector<int>>> squares;
  for (int i = 1; i <= r; ++i) {
    int mult = f.pow(f.primitive(), i);
    std::vector<std::vector<int>> sq(a, std::vector<int>(a));
    for (int x = 0; x < a; ++x)
      for (int y = 0; y < a; ++y) sq[x][y] = f.add(f.mul(mult, x), y);
    squares.push_back(std::move(sq));
  }
  return squares;
}

FRCode mols_net(const FiniteField& f, int r) {
  const int a = f.order();
  if (r < 2 || r > a + 1)
    raise(errc::too_many_classes,
          "r must be in [2, " + std::to_string(a + 1) + "]");
  FRCode code;
  code.theta = a * a;
  std::vector<std::vector<int>> classes;
  // class 1: rows, class 2: columns
  std::vector<int> cls;
  for (int x = 0; x < a; ++x) {
    NodeSet row;
    for (int y = 0; y < a; ++y) row.push_back(a * x + y);
    cls.push_back(code.n());
    code.nodes.push_back(row);
  }
  classes.push_back(cls);
  cls.clear();
  if (r >= 2) {
    for (int y = 0; y < a; ++y) {
      NodeSet col;
      for (int x = 0; x < a; ++x) col.push_back(a * x + y);
      cls.push_back(code.n());
      code.nodes.push_back(col);
    }
    classes.push_back(cls);
  }
  auto squares = mols_squares(f, r - 2);
  for (const auto& sq : squares) {
    cls.clear();
    for (int z = 0; z < a; ++z) {
      NodeSet node;
      for (int x = 0; x < a; ++x)
        for (int y = 0; y < a; ++y)
          if (sq[x][y] == z) node.push_back(a * x + y);
      cls.push_back(code.n());
      code.nodes.push_back(node);
    }
    classes.push_back(cls);
  }
  code.normalize();
  code.resolution = classes;
  code.meta = Json{{"family", "mols-net"},
                   {"params", {{"p", f.p()}, {"m", f.m()}, {"r", r}}},
                   {"net", {{"a", a}, {"b", 1}, {"r", r}}},
                   {"beta", 1}};
  return code;
}

namespace {

// canonical projective representatives of nonzero functionals: first
// nonzero coefficient 1, ordered lexicographically by coefficient tuple
std::vector<std::vector<int>> projective_functionals(const FiniteField& f,
                                                     int m) {
  const int q = f.order();
  std::vector<std::vector<int>> out;
  std::vector<int> coeff(m, 0);
  while (true) {
    // next tuple in lex order (coeff[0] most significant)
    int i = m - 1;
    while (i >= 0 && coeff[i] == q - 1) coeff[i--] = 0;
    if (i < 0) break;
    ++coeff[i];
    int lead = 0;
    while (lead < m && coeff[lead] == 0) ++lead;
    if (lead < m && coeff[lead] == 1) out.push_back(coeff);
  }
  return out;
}

int vector_id(const FiniteField& f, const std::vector<int>& v) {
  int id = 0;
  for (int x : v) id = id * f.order() + x;
  return id;
}

bool independent_of(const FiniteField& f,
                    const std::vector<std::vector<int>>& basis,
                    std::vector<int> cand) {
  // Gaussian elimination of cand against the chosen rows
  auto rows = basis;
  rows.push_back(cand);
  int m = static_cast<int>(cand.size());
  int rank = 0;
  for (int c = 0; c < m && rank < static_cast<int>(rows.size()); ++c) {
    int pivot = -1;
    for (int r = rank; r < static_cast<int>(rows.size()); ++r)
      if (rows[r][c] != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    std::swap(rows[rank], rows[pivot]);
    int inv = f.inv(rows[rank][c]);
    for (int k = 0; k < m; ++k) rows[rank][k] = f.mul(rows[rank][k], inv);
    for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
      if (r == rank || rows[r][c] == 0) continue;
      int factor = rows[r][c];
      for (int k = 0; k < m; ++k)
        rows[r][k] = f.sub(rows[r][k], f.mul(factor, rows[rank][k]));
    }
    ++rank;
  }
  return rank == static_cast<int>(basis.size()) + 1;
}

}  // namespace

FRCode affine_resolvable(const FiniteField& f, int m, int r) {
  const int q = f.order();
  if (m < 2) raise(errc::precondition_failed, "affine geometry needs m >= 2");
  long long rho_max = gaussian_coefficient(m, m - 1, q);
  if (r < 1 || r > rho_max)
    raise(errc::too_many_classes,
          "r must be in [1, " + std::to_string(rho_max) + "]");

  auto all = projective_functionals(f, m);
  std::vector<std::vector<int>> order;
  int certified = 0;
  if (q > m) {
    // moment-curve functionals: any m of them are linearly independent
    std::set<std::vector<int>> used;
    for (int e = 1; e < q && static_cast<int>(order.size()) < r; ++e) {
      std::vector<int> c(m);
      for (int i = 0; i < m; ++i) c[i] = f.pow(e, i);
      order.push_back(c);
      used.insert(c);
    }
    certified = static_cast<int>(order.size());
    for (const auto& c : all) {
      if (static_cast<int>(order.size()) >= r) break;
      if (!used.count(c)) order.push_back(c);
    }
  } else {
    // independent functionals first, in canonical order
    std::vector<std::vector<int>> basis;
    std::vector<std::vector<int>> skipped;
    for (const auto& c : all) {
      if (static_cast<int>(basis.size()) < m && independent_of(f, basis, c))
        basis.push_back(c);
      else
        skipped.push_back(c);
    }
    order = basis;
    certified = std::min<int>(r, static_cast<int>(basis.size()));
    for (const auto& c : skipped) order.push_back(c);
  }
  if (static_cast<int>(order.size()) > r) order.resize(r);
  certified = std::min(certified, r);

  // enumerate all vectors once; id encodes coordinates base q, x1 most
  // significant
  int theta = 1;
  for (int i = 0; i < m; ++i) theta *= q;
  FRCode code;
  code.theta = theta;
  std::vector<std::vector<int>> classes;
  std::vector<int> coords(m);
  for (const auto& func : order) {
    std::vector<NodeSet> blocks(q);
    for (int id = 0; id < theta; ++id) {
      int t = id;
      for (int i = m - 1; i >= 0; --i) {
        coords[i] = t % q;
        t /= q;
      }
      int value = 0;
      for (int i = 0; i < m; ++i)
        value = f.add(value, f.mul(func[i], coords[i]));
      blocks[value].push_back(id);
    }
    std::vector<int> cls;
    for (int v = 0; v < q; ++v) {
      cls.push_back(code.n());
      code.nodes.push_back(blocks[v]);
    }
    classes.push_back(cls);
  }
  code.normalize();
  code.resolution = classes;
  int b = 1;
  for (int i = 0; i < m - 2; ++i) b *= q;
  code.meta = Json{{"family", "affine"},
                   {"params", {{"q", q}, {"m", m}, {"r", r}}},
                   {"affine",
                    {{"q", q},
                     {"m", m},
                     {"r", r},
                     {"certified_prefix", certified}}},
                   {"net", {{"a", q}, {"b", b}, {"r", r}}},
                   {"beta", b}};
  return code;
}

FRCode hadamard(int a) {
  if (a < 2) raise(errc::precondition_failed, "hadamard needs a >= 2");
  int qq = 4 * a - 1;
  int p = 0, m = 0;
  if (!prime_power(qq, p, m))
    raise(errc::not_prime_power,
          std::to_string(qq) + " is not a prime power");
  FiniteField f(p, m);
  const int q = f.order();
  // nonzero quadratic residues
  std::set<int> residues;
  for (int z = 1; z < q; ++z) residues.insert(f.mul(z, z));
  const int inf = q;  // symbol id for the adjoined point
  FRCode code;
  code.theta = q + 1;
  std::vector<std::vector<int>> classes;
  for (int g = 0; g < q; ++g) {
    NodeSet block, complement;
    std::set<int> translate;
    for (int d0 : residues) translate.insert(f.add(g, d0));
    for (int s = 0; s < q; ++s)
      (translate.count(s) ? block : complement).push_back(s);
    block.push_back(inf);
    std::vector<int> cls = {code.n(), code.n() + 1};
    code.nodes.push_back(block);
    code.nodes.push_back(complement);
    classes.push_back(cls);
  }
  code.normalize();
  code.resolution = classes;
  code.meta = Json{{"family", "hadamard"},
                   {"params", {{"a", a}, {"q", q}}},
                   {"net", {{"a", 2}, {"b", a}, {"r", q}}},
                   {"beta", a}};
  return code;
}

FRCode projective_plane(const FiniteField& f) {
  const int q = f.order();
  std::vector<std::array<int, 3>> reps;
  for (int x = 0; x < q; ++x)
    for (int y = 0; y < q; ++y)
      for (int z = 0; z < q; ++z) {
        std::array<int, 3> v{x, y, z};
        int lead = -1;
        for (int i = 0; i < 3; ++i)
          if (v[i] != 0) {
            lead = i;
            break;
          }
        if (lead >= 0 && v[lead] == 1) reps.push_back(v);
      }
  const int N = static_cast<int>(reps.size());
  FRCode code;
  code.theta = N;
  for (int l = 0; l < N; ++l) {
    NodeSet line;
    for (int p = 0; p < N; ++p) {
      int dot = 0;
      for (int i = 0; i < 3; ++i)
        dot = f.add(dot, f.mul(reps[l][i], reps[p][i]));
      if (dot == 0) line.push_back(p);
    }
    code.nodes.push_back(line);
  }
  code.normalize();
  code.meta = Json{{"family", "projective-plane"},
                   {"params", {{"q", q}}},
                   {"beta", 1}};
  return code;
}

namespace {

// half-idempotent commutative quasigroup on Z_2t: x*y = fold((x+y) mod 2t)
// with fold(2i) = i, fold(2i+1) = t+i
int skolem_fold(int z, int t) { return z % 2 == 0 ? z / 2 : t + z / 2; }

}  // namespace

FRCode steiner_triple(int theta) {
  if (theta < 7 || (theta % 6 != 1 && theta % 6 != 3))
    raise(errc::invalid_order,
          "S(2,3,theta) needs theta = 1 or 3 (mod 6), theta >= 7");
  FRCode code;
  code.theta = theta;
  if (theta % 6 == 3) {
    // Bose: symbols Z_{2t+1} x {0,1,2}, (x,i) -> 3x+i
    int n1 = theta / 3;           // 2t+1
    int half = (n1 + 1) / 2;      // inverse of 2 mod n1
    auto id = [&](int x, int i) { return 3 * x + i; };
    for (int x = 0; x < n1; ++x)
      code.nodes.push_back({id(x, 0), id(x, 1), id(x, 2)});
    for (int i = 0; i < 3; ++i)
      for (int x = 0; x < n1; ++x)
        for (int y = x + 1; y < n1; ++y) {
          int z = static_cast<int>((static_cast<long long>(x + y) * half) % n1);
          code.nodes.push_back({id(x, i), id(y, i), id(z, (i + 1) % 3)});
        }
  } else {
    // Skolem: symbols (Z_2t x {0,1,2}) + infinity, (x,i) -> 3x+i
    int t = (theta - 1) / 6;
    int n1 = 2 * t;
    int inf = theta - 1;
    auto id = [&](int x, int i) { return 3 * x + i; };
    for (int x = 0; x < t; ++x)
      code.nodes.push_back({id(x, 0), id(x, 1), id(x, 2)});
    for (int i = 0; i < 3; ++i)
      for (int x = 0; x < t; ++x)
        code.nodes.push_back({inf, id(t + x, i), id(x, (i + 1) % 3)});
    for (int i = 0; i < 3; ++i)
      for (int x = 0; x < n1; ++x)
        for (int y = x + 1; y < n1; ++y) {
          int z = skolem_fold((x + y) % n1, t);
          code.nodes.push_back({id(x, i), id(y, i), id(z, (i + 1) % 3)});
        }
  }
  code.normalize();
  code.meta = Json{{"family", "steiner-triple"},
                   {"params", {{"theta", theta}}},
                   {"beta", 1}};
  verify_steiner2(code);  // constructions are certified, not trusted
  return code;
}

FRCode girth_code(const GraphSpec& graph) {
  if (graph.degree < 2)
    raise(errc::precondition_failed, "graph degree must be >= 2");
  FRCode code;
  code.theta = static_cast<int>(graph.edges.size());
  code.nodes.assign(graph.vertices, {});
  for (int e = 0; e < code.theta; ++e) {
    code.nodes[graph.edges[e].first].push_back(e);
    code.nodes[graph.edges[e].second].push_back(e);
  }
  code.normalize();
  code.meta = Json{{"family", "girth"},
                   {"params", {{"s", graph.degree}, {"g", graph.girth}}},
                   {"girth", {{"s", graph.degree}, {"g", graph.girth}}},
                   {"beta", 1}};
  return code;
}

}  // namespace fr
