#include "fr/sim.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <random>
#include <set>

#include "fr/gf.hpp"

namespace fr {

namespace {

// Solve A x = b over GF(256) by Gaussian elimination. A is row-major
// n x n; both are consumed.
std::vector<uint8_t> solve(std::vector<std::vector<int>> A,
                           std::vector<int> b) {
  const FiniteField& f = gf256();
  const int n = static_cast<int>(b.size());
  for (int c = 0; c < n; ++c) {
    int pivot = -1;
    for (int r = c; r < n; ++r)
      if (A[r][c] != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) raise(errc::property_violation, "singular erasure system");
    std::swap(A[c], A[pivot]);
    std::swap(b[c], b[pivot]);
    int inv = f.inv(A[c][c]);
    for (int k = c; k < n; ++k) A[c][k] = f.mul(A[c][k], inv);
    b[c] = f.mul(b[c], inv);
    for (int r = 0; r < n; ++r) {
      if (r == c || A[r][c] == 0) continue;
      int factor = A[r][c];
      for (int k = c; k < n; ++k)
        A[r][k] = f.sub(A[r][k], f.mul(factor, A[c][k]));
      b[r] = f.sub(b[r], f.mul(factor, b[c]));
    }
  }
  std::vector<uint8_t> x(n);
  for (int i = 0; i < n; ++i) x[i] = static_cast<uint8_t>(b[i]);
  return x;
}

}  // namespace

OuterCode::OuterCode(int message_len, int theta)
    : m_(message_len), theta_(theta), r_(theta - message_len) {
  if (theta > 255) raise(errc::too_many_symbols, "theta must be <= 255");
  if (message_len < 1 || message_len > theta)
    raise(errc::precondition_failed, "need 1 <= message_len <= theta");
}

std::vector<uint8_t> OuterCode::encode(
    const std::vector<uint8_t>& message) const {
  if (static_cast<int>(message.size()) != m_)
    raise(errc::file_size_mismatch, "message length mismatch");
  const FiniteField& f = gf256();
  std::vector<int> known(theta_, -1);
  for (int i = 0; i < m_; ++i) known[i] = message[i];
  auto full = decode(known);
  return full;
}

std::vector<uint8_t> OuterCode::decode(const std::vector<int>& known) const {
  const FiniteField& f = gf256();
  std::vector<int> missing;
  for (int i = 0; i < theta_; ++i)
    if (known[i] < 0) missing.push_back(i);
  if (static_cast<int>(missing.size()) > r_)
    raise(errc::insufficient_symbols,
          "need at least " + std::to_string(m_) + " known coordinates");
  const int u = static_cast<int>(missing.size());
  std::vector<uint8_t> out(theta_);
  for (int i = 0; i < theta_; ++i)
    if (known[i] >= 0) out[i] = static_cast<uint8_t>(known[i]);
  if (u == 0) return out;
  // H c = 0 with H[j][i] = x_i^j restricted to the first u rows:
  // sum over missing columns of x_i^j * c_i = - sum over known
  std::vector<std::vector<int>> A(u, std::vector<int>(u));
  std::vector<int> b(u, 0);
  for (int j = 0; j < u; ++j) {
    for (int col = 0; col < u; ++col) A[j][col] = f.pow(missing[col], j);
    int acc = 0;
    for (int i = 0; i < theta_; ++i)
      if (known[i] >= 0) acc = f.add(acc, f.mul(f.pow(i, j), known[i]));
    b[j] = acc;  // char 2: -acc = acc
  }
  auto x = solve(std::move(A), std::move(b));
  for (int col = 0; col < u; ++col) out[missing[col]] = x[col];
  return out;
}

ClusterState encode_store(const std::vector<uint8_t>& file, const FRCode& code,
                          int message_len, int d, int beta) {
  CodeParams p = validate(code);
  if (code.theta > 255)
    raise(errc::too_many_symbols, "theta must be <= 255 for the byte field");
  if (file.empty() || file.size() % message_len != 0)
    raise(errc::file_size_mismatch,
          "file length must be a positive multiple of the message length");
  const int payload = static_cast<int>(file.size()) / message_len;
  OuterCode outer(message_len, code.theta);

  // stream i = bytes [i*payload, (i+1)*payload); encode per byte position
  std::vector<std::vector<uint8_t>> coded(code.theta,
                                          std::vector<uint8_t>(payload));
  std::vector<uint8_t> message(message_len);
  for (int pos = 0; pos < payload; ++pos) {
    for (int i = 0; i < message_len; ++i)
      message[i] = file[i * payload + pos];
    auto word = outer.encode(message);
    for (int s = 0; s < code.theta; ++s) coded[s][pos] = word[s];
  }

  ClusterState state;
  state.code = code;
  state.message_len = message_len;
  state.payload_size = payload;
  state.d = d;
  state.beta = beta;
  state.alive.assign(code.n(), 1);
  state.stored.resize(code.n());
  for (int j = 0; j < code.n(); ++j)
    for (int s : code.nodes[j]) state.stored[j].push_back({s, coded[s]});
  return state;
}

RepairOutcome fail_and_repair(ClusterState& state,
                              const std::vector<int>& failures,
                              const RepairTable& table, RepairMode mode) {
  for (int j : failures) {
    state.alive[j] = 0;
    state.stored[j].clear();
    state.log.push_back("fail node " + std::to_string(j));
  }
  std::vector<char> original_survivor = state.alive;
  std::vector<int> pending = failures;
  std::sort(pending.begin(), pending.end());
  pending.erase(std::unique(pending.begin(), pending.end()), pending.end());

  auto option_ready = [&](const RepairOption& opt) {
    for (int h : opt.helpers) {
      bool ok = mode == RepairMode::kSequential ? state.alive[h] != 0
                                                : original_survivor[h] != 0;
      if (!ok) return false;
    }
    return true;
  };

  bool progress = true;
  while (!pending.empty() && progress) {
    progress = false;
    for (size_t i = 0; i < pending.size(); ++i) {
      int j = pending[i];
      const RepairOption* chosen = nullptr;
      for (const auto& opt : table.options[j])
        if (option_ready(opt)) {
          chosen = &opt;
          break;
        }
      if (!chosen) continue;
      // pure copy: fetch each download set byte for byte from its helper
      std::vector<StoredSymbol> rebuilt;
      int downloaded = 0;
      for (size_t h = 0; h < chosen->helpers.size(); ++h) {
        int helper = chosen->helpers[h];
        for (int s : chosen->downloads[h]) {
          auto it = std::find_if(
              state.stored[helper].begin(), state.stored[helper].end(),
              [s](const StoredSymbol& ss) { return ss.symbol == s; });
          if (it == state.stored[helper].end())
            raise(errc::property_violation,
                  "helper lost a symbol it should hold");
          rebuilt.push_back(*it);
          ++downloaded;
        }
      }
      if (downloaded != state.d * state.beta)
        raise(errc::property_violation,
              "repair bandwidth differs from d*beta");
      std::sort(rebuilt.begin(), rebuilt.end(),
                [](const StoredSymbol& a, const StoredSymbol& b) {
                  return a.symbol < b.symbol;
                });
      state.stored[j] = std::move(rebuilt);
      state.alive[j] = 1;
      state.repairs += 1;
      state.symbols_downloaded += downloaded;
      state.bytes_downloaded +=
          static_cast<long long>(downloaded) * state.payload_size;
      state.log.push_back("repair node " + std::to_string(j));
      pending.erase(pending.begin() + i);
      progress = true;
      break;
    }
  }
  RepairOutcome out;
  out.complete = pending.empty();
  out.stuck = pending;
  return out;
}

std::vector<uint8_t> collect(const ClusterState& state,
                             const std::vector<int>& nodes) {
  std::vector<int> known(state.code.theta, -1);
  std::vector<std::vector<int>> per_position;
  // distinct intact symbols held by the chosen alive nodes
  std::vector<const StoredSymbol*> have(state.code.theta, nullptr);
  int distinct = 0;
  for (int j : nodes) {
    if (!state.alive[j]) continue;
    for (const auto& ss : state.stored[j])
      if (!have[ss.symbol]) {
        have[ss.symbol] = &ss;
        ++distinct;
      }
  }
  if (distinct < state.message_len)
    raise(errc::insufficient_symbols,
          "contacted nodes cover " + std::to_string(distinct) +
              " symbols, need " + std::to_string(state.message_len));
  OuterCode outer(state.message_len, state.code.theta);
  std::vector<uint8_t> file(
      static_cast<size_t>(state.message_len) * state.payload_size);
  for (int pos = 0; pos < state.payload_size; ++pos) {
    for (int s = 0; s < state.code.theta; ++s)
      known[s] = have[s] ? have[s]->payload[pos] : -1;
    auto word = outer.decode(known);
    for (int i = 0; i < state.message_len; ++i)
      file[static_cast<size_t>(i) * state.payload_size + pos] = word[i];
  }
  return file;
}

Json run_scenario(const Json& scenario, const std::string& base_dir) {
  FRCode code;
  if (scenario.at("code").is_string()) {
    std::string path = scenario["code"].get<std::string>();
    if (!path.empty() && path[0] != '/') path = base_dir + "/" + path;
    code = load_code_file(path);
  } else {
    code = code_from_json(scenario["code"]);
  }
  const int m_file = scenario.at("m_file").get<int>();
  const int payload = scenario.value("payload_size", 64);
  const std::uint64_t seed = scenario.value("seed", 0);
  CodeParams p = validate(code);
  int beta = scenario.contains("beta") ? scenario["beta"].get<int>()
             : code.meta.contains("beta") ? code.meta["beta"].get<int>()
                                          : 1;
  int d = p.alpha / beta;

  std::mt19937_64 rng(seed);
  std::vector<uint8_t> file(static_cast<size_t>(m_file) * payload);
  for (auto& b : file) b = static_cast<uint8_t>(rng());

  ClusterState state = encode_store(file, code, m_file, d, beta);
  RepairTable table = find_repair_table(code, d, beta);

  Json metrics;
  metrics["events"] = Json::array();
  bool all_ok = true;
  if (scenario.contains("failures")) {
    for (const auto& ev : scenario["failures"]) {
      auto failures = ev.get<std::vector<int>>();
      auto outcome = fail_and_repair(state, failures, table);
      Json je;
      je["failed"] = failures;
      je["repaired"] = outcome.complete;
      if (!outcome.complete) {
        je["stuck"] = outcome.stuck;
        all_ok = false;
      }
      metrics["events"].push_back(je);
    }
  }
  metrics["collects"] = Json::array();
  if (scenario.contains("collects")) {
    for (const auto& c : scenario["collects"]) {
      auto nodes = c.get<std::vector<int>>();
      Json jc;
      jc["nodes"] = nodes;
      try {
        auto got = collect(state, nodes);
        jc["success"] = got == file;
      } catch (const Error& e) {
        jc["success"] = false;
        jc["error"] = e.what();
      }
      if (!jc["success"].get<bool>()) all_ok = false;
      metrics["collects"].push_back(jc);
    }
  }
  metrics["repairs"] = state.repairs;
  metrics["symbols_downloaded"] = state.symbols_downloaded;
  metrics["bytes_downloaded"] = state.bytes_downloaded;
  metrics["gamma"] = d * beta;
  metrics["all_success"] = all_ok;
  return metrics;
}

}  // namespace fr
