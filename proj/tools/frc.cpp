// frc: construct, compose, analyze and simulate fractional repetition
// codes. All inputs and outputs are the canonical JSON schemas of the
// core library; runs are deterministic given flags and --seed.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "fr/analysis.hpp"
#include "fr/compose.hpp"
#include "fr/designs.hpp"
#include "fr/sim.hpp"

namespace {

using fr::FRCode;
using fr::Json;

void print_params(const fr::CodeParams& p, std::optional<int> beta) {
  std::cout << "n      " << p.n << "\n";
  std::cout << "theta  " << p.theta << "\n";
  std::cout << "alpha  " << p.alpha << "\n";
  std::cout << "rho    " << p.rho << "\n";
  if (beta) {
    std::cout << "beta   " << *beta << "\n";
    std::cout << "d      " << p.alpha / *beta << "\n";
    std::cout << "gamma  " << p.alpha << "\n";
  }
  for (const auto& w : p.warnings) std::cout << "warning: " << w << "\n";
}

std::optional<int> meta_beta(const FRCode& code) {
  if (code.meta.contains("beta") && code.meta["beta"].is_number())
    return code.meta["beta"].get<int>();
  return std::nullopt;
}

void write_output(const Json& j, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream out(path);
  if (!out) fr::raise(fr::errc::parse_error, "cannot write " + path);
  out << j.dump(2) << "\n";
}

fr::GraphSpec graph_by_name(const std::string& name) {
  if (name == "petersen") return fr::petersen();
  if (name.rfind("complete-", 0) == 0)
    return fr::complete_graph(std::stoi(name.substr(9)));
  if (name.rfind("bipartite-", 0) == 0)
    return fr::complete_bipartite(std::stoi(name.substr(10)));
  if (name.rfind("pg-", 0) == 0) {
    int q = std::stoi(name.substr(3));
    int p = 0, m = 0;
    if (!fr::prime_power(q, p, m))
      fr::raise(fr::errc::not_prime_power, "pg order must be a prime power");
    return fr::projective_incidence(fr::FiniteField(p, m));
  }
  fr::raise(fr::errc::unknown_name,
            "graphs: petersen, complete-N, bipartite-S, pg-Q");
}

int run(int argc, char** argv) {
  CLI::App app{"fractional repetition code toolkit"};
  app.require_subcommand(1);

  // ---- construct ----
  auto* c_construct = app.add_subcommand("construct", "build a code family");
  std::string family, graph_name = "petersen", name = "FANO", out_path;
  int arg_a = 3, arg_q = 2, arg_m = 2, arg_r = 2, arg_theta = 7, arg_p = 2;
  bool certify = false;
  c_construct->add_option("--family", family,
                          "grid|mols|affine|hadamard|projective|steiner|"
                          "girth|catalog")
      ->required();
  c_construct->add_option("--a", arg_a, "grid/hadamard size parameter");
  c_construct->add_option("--q", arg_q, "field order (prime power)");
  c_construct->add_option("--m", arg_m, "affine geometry dimension");
  c_construct->add_option("--r", arg_r, "number of parallel classes");
  c_construct->add_option("--theta", arg_theta, "Steiner triple order");
  c_construct->add_option("--graph", graph_name,
                          "petersen|complete-N|bipartite-S|pg-Q");
  c_construct->add_option("--name", name, "catalog entry name");
  c_construct->add_flag("--certify-repair", certify,
                        "build the repair table at the family beta");
  c_construct->add_option("--out", out_path, "output code JSON path");

  // ---- compose ----
  auto* c_compose = app.add_subcommand("compose", "combine codes");
  std::string compose_op, in1, in2, classes_str;
  int arg_mm = 2, arg_l = 2;
  c_compose->add_option("op", compose_op,
                        "kronecker|expand|union|select-classes|transpose")
      ->required();
  c_compose->add_option("input", in1, "input code JSON")->required();
  c_compose->add_option("input2", in2, "second input (kronecker)");
  c_compose->add_option("--m", arg_mm, "expansion factor");
  c_compose->add_option("--l", arg_l, "number of copies");
  c_compose->add_option("--classes", classes_str,
                        "comma-separated class indices");
  c_compose->add_option("--out", out_path, "output code JSON path");

  // ---- analyze ----
  auto* c_analyze = app.add_subcommand("analyze", "file size and bounds");
  std::string code_path, k_range;
  int arg_M = 0;
  long long budget = 1'000'000;
  int threads = 1;
  bool oracle = false;
  c_analyze->add_option("code", code_path, "code JSON")->required();
  c_analyze->add_option("--k", k_range, "k or k1..k2 for the profile");
  c_analyze->add_option("--M", arg_M, "file size for the distance analysis");
  c_analyze->add_option("--budget", budget, "search budget");
  c_analyze->add_option("--threads", threads, "worker threads");
  c_analyze->add_flag("--oracle", oracle,
                      "run brute force next to fast paths and compare");
  c_analyze->add_option("--out", out_path, "report JSON path");

  // ---- simulate ----
  auto* c_sim = app.add_subcommand("simulate", "run a scenario file");
  std::string scenario_path;
  c_sim->add_option("scenario", scenario_path, "scenario JSON")->required();
  c_sim->add_option("--out", out_path, "metrics JSON path");

  // ---- catalog ----
  auto* c_catalog = app.add_subcommand("catalog", "list or show entries");
  std::string catalog_cmd = "list", catalog_name;
  c_catalog->add_option("action", catalog_cmd, "list|show");
  c_catalog->add_option("name", catalog_name, "entry name");

  // ---- export ----
  auto* c_export = app.add_subcommand("export", "emit the bipartite graph");
  std::string export_path;
  c_export->add_option("code", export_path, "code JSON")->required();
  c_export->add_option("--out", out_path, "DOT output path");

  CLI11_PARSE(app, argc, argv);

  if (c_construct->parsed()) {
    FRCode code;
    if (family == "grid") {
      code = fr::grid(arg_a);
    } else if (family == "mols") {
      int p = 0, m = 0;
      if (!fr::prime_power(arg_q, p, m))
        fr::raise(fr::errc::not_prime_power, "--q must be a prime power");
      code = fr::mols_net(fr::FiniteField(p, m), arg_r);
    } else if (family == "affine") {
      int p = 0, m = 0;
      if (!fr::prime_power(arg_q, p, m))
        fr::raise(fr::errc::not_prime_power, "--q must be a prime power");
      code = fr::affine_resolvable(fr::FiniteField(p, m), arg_m, arg_r);
    } else if (family == "hadamard") {
      code = fr::hadamard(arg_a);
    } else if (family == "projective") {
      int p = 0, m = 0;
      if (!fr::prime_power(arg_q, p, m))
        fr::raise(fr::errc::not_prime_power, "--q must be a prime power");
      code = fr::projective_plane(fr::FiniteField(p, m));
    } else if (family == "steiner") {
      code = fr::steiner_triple(arg_theta);
    } else if (family == "girth") {
      code = fr::girth_code(graph_by_name(graph_name));
    } else if (family == "catalog") {
      code = fr::catalog_load(name);
    } else {
      fr::raise(fr::errc::unknown_name, "unknown family " + family);
    }
    fr::CodeParams p = fr::validate(code);
    auto beta = meta_beta(code);
    if (certify && beta) fr::find_repair_table(code, p.alpha / *beta, *beta);
    print_params(p, beta);
    if (!out_path.empty()) fr::save_code_file(code, out_path);
    return 0;
  }

  if (c_compose->parsed()) {
    FRCode a = fr::load_code_file(in1);
    FRCode result;
    if (compose_op == "kronecker") {
      if (in2.empty())
        fr::raise(fr::errc::precondition_failed, "kronecker needs two inputs");
      FRCode b = fr::load_code_file(in2);
      result = fr::kronecker(a, b).first;
    } else if (compose_op == "expand") {
      result = fr::beta_expand(a, arg_mm);
    } else if (compose_op == "union") {
      result = fr::disjoint_union(a, arg_l);
    } else if (compose_op == "select-classes") {
      std::vector<int> idx;
      std::stringstream ss(classes_str);
      std::string tok;
      while (std::getline(ss, tok, ',')) idx.push_back(std::stoi(tok));
      result = fr::select_classes(a, idx);
    } else if (compose_op == "transpose") {
      try {
        result = fr::steiner_transpose(a);
      } catch (const fr::Error&) {
        result = fr::transpose(a);
      }
    } else {
      fr::raise(fr::errc::unknown_name, "unknown compose op " + compose_op);
    }
    fr::CodeParams p = fr::validate(result);
    print_params(p, meta_beta(result));
    if (!out_path.empty()) fr::save_code_file(result, out_path);
    return 0;
  }

  if (c_analyze->parsed()) {
    FRCode code = fr::load_code_file(code_path);
    fr::CodeParams p = fr::validate(code);
    fr::SearchOpts opts;
    opts.budget = budget;
    opts.threads = threads;
    auto beta = meta_beta(code);
    if (beta) {
      p.beta = *beta;
      p.d = p.alpha / *beta;
    }

    Json report;
    report["params"] = {{"n", p.n},     {"theta", p.theta},
                        {"alpha", p.alpha}, {"rho", p.rho},
                        {"beta", p.beta},   {"d", p.d}};
    int k_lo = 0, k_hi = -1;
    if (!k_range.empty()) {
      auto dots = k_range.find("..");
      if (dots == std::string::npos) {
        k_lo = k_hi = std::stoi(k_range);
      } else {
        k_lo = std::stoi(k_range.substr(0, dots));
        k_hi = std::stoi(k_range.substr(dots + 2));
      }
    }
    if (k_range.empty() && arg_M == 0)
      fr::raise(fr::errc::precondition_failed, "pass --k and/or --M");

    report["profile"] = Json::array();
    int last_M = 0;
    for (int k = k_lo; k <= k_hi && k_lo > 0; ++k) {
      fr::FileSizeEntry e = fr::file_size(code, k, opts);
      if (oracle && e.fast_path) {
        fr::FileSizeEntry brute = fr::file_size_enumerated(code, k, opts);
        if (!brute.exact)
          fr::raise(fr::errc::budget_exceeded, "oracle run not exhaustive");
        if (brute.value != e.value)
          fr::raise(fr::errc::property_violation,
                    "fast path disagrees with enumeration at k=" +
                        std::to_string(k));
      }
      Json je = {{"k", e.k},
                 {"M", e.value},
                 {"exact", e.exact},
                 {"fast_path", e.fast_path},
                 {"ie_floor", e.ie_floor}};
      if (!e.witness.empty()) je["witness"] = e.witness;
      report["profile"].push_back(je);
      last_M = e.value;
    }

    int M = arg_M > 0 ? arg_M : last_M;
    auto local = fr::local_structure(code, opts);
    if (M > 0) {
      std::optional<int> kk;
      if (k_lo > 0 && k_lo == k_hi) kk = k_lo;
      fr::BoundsReport b = fr::bounds(p, M, kk, local);
      Json jb = {{"singleton", b.singleton}};
      if (b.local) jb["local"] = *b.local;
      if (b.local_fr) {
        jb["local_fr"] = *b.local_fr;
        jb["local_fr_branches"] = {*b.local_fr_branch_accumulate,
                                   *b.local_fr_branch_partial};
      }
      if (b.mincor) jb["mincor"] = *b.mincor;
      int dmin = fr::dmin_exact(code, M, opts);
      jb["dmin_exact"] = dmin;
      report["bounds"] = jb;
      Json v;
      v["singleton_met_by_dmin"] = dmin == b.singleton;
      if (b.local) v["local_met_by_dmin"] = dmin == *b.local;
      if (b.meets_singleton_at_k)
        v["singleton_met_at_k"] = *b.meets_singleton_at_k;
      if (b.meets_local_at_k) v["local_met_at_k"] = *b.meets_local_at_k;
      report["verdicts"] = v;
    }

    // resilience in both modes when a beta is on record
    if (beta) {
      fr::ResilienceReport r =
          fr::resilience_report(code, p.d, p.beta, budget);
      report["resilience"] = {{"static", r.rho_res_static},
                              {"sequential", r.rho_res_sequential},
                              {"exhaustive", r.exhaustive}};
    }

    // arcs for Steiner inputs
    report["arcs"] = nullptr;
    try {
      fr::CapArcResult caps = fr::find_cap_and_arc(code);
      Json ja;
      ja["max_cap"] = caps.max_cap;
      ja["arc"] = caps.arc ? Json(*caps.arc) : Json(nullptr);
      report["arcs"] = ja;
    } catch (const fr::Error&) {
      // not a Steiner system; nothing to report
    }

    write_output(report, out_path);
    return 0;
  }

  if (c_sim->parsed()) {
    std::ifstream in(scenario_path);
    if (!in) fr::raise(fr::errc::parse_error, "cannot open " + scenario_path);
    Json scenario;
    in >> scenario;
    std::string dir = ".";
    auto slash = scenario_path.rfind('/');
    if (slash != std::string::npos) dir = scenario_path.substr(0, slash);
    Json metrics = fr::run_scenario(scenario, dir);
    write_output(metrics, out_path);
    return metrics["all_success"].get<bool>() ? 0 : 4;
  }

  if (c_catalog->parsed()) {
    if (catalog_cmd == "list") {
      for (const auto& n : fr::catalog_names()) std::cout << n << "\n";
    } else if (catalog_cmd == "show") {
      std::cout << fr::catalog_text(catalog_name);
    } else {
      fr::raise(fr::errc::unknown_name, "catalog action: list|show");
    }
    return 0;
  }

  if (c_export->parsed()) {
    FRCode code = fr::load_code_file(export_path);
    std::string dot = fr::bipartite_dot(code);
    if (out_path.empty() || out_path == "-") {
      std::cout << dot;
    } else {
      std::ofstream out(out_path);
      out << dot;
    }
    return 0;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const fr::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.exit_kind();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
