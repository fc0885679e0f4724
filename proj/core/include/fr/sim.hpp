#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fr/code.hpp"
#include "fr/repair.hpp"

namespace fr {

// Systematic MDS map over GF(256) defined by a Vandermonde parity-check
// matrix H with rows x_i^j (x_i = i, j = 0..r-1): any square column
// submatrix of H is invertible, so any message_len of the theta coded
// symbols determine the rest. Row j = 0 is all-ones, so with one parity
// symbol the check reduces to plain sum parity.
class OuterCode {
 public:
  OuterCode(int message_len, int theta);

  int message_len() const { return m_; }
  int theta() const { return theta_; }

  // message_len bytes in, theta bytes out (message occupies the first
  // message_len coordinates).
  std::vector<uint8_t> encode(const std::vector<uint8_t>& message) const;

  // Reconstructs the full codeword from any >= message_len known
  // coordinates (value < 0 marks an erasure). Throws insufficient_symbols.
  std::vector<uint8_t> decode(const std::vector<int>& known) const;

 private:
  int m_ = 0;
  int theta_ = 0;
  int r_ = 0;
};

struct StoredSymbol {
  int symbol = 0;
  std::vector<uint8_t> payload;
};

struct ClusterState {
  FRCode code;
  int message_len = 0;
  int payload_size = 0;
  int d = 0;
  int beta = 0;
  std::vector<char> alive;
  std::vector<std::vector<StoredSymbol>> stored;  // per node, symbol order
  // bandwidth accounting
  long long repairs = 0;
  long long symbols_downloaded = 0;
  long long bytes_downloaded = 0;
  std::vector<std::string> log;
};

// Splits the file into message_len streams of payload_size bytes, encodes
// each byte position with the outer code and places coded symbol i on
// every node whose set contains i. File length must equal
// message_len * payload_size.
ClusterState encode_store(const std::vector<uint8_t>& file, const FRCode& code,
                          int message_len, int d, int beta);

struct RepairOutcome {
  bool complete = false;
  std::vector<int> stuck;  // failed nodes no table option could rebuild
};

// Marks the failure set dead and runs the greedy repair loop, copying the
// table's download sets byte for byte (no arithmetic). Sequential mode
// lets freshly repaired nodes help later repairs; static mode only uses
// the original survivors.
RepairOutcome fail_and_repair(ClusterState& state,
                              const std::vector<int>& failures,
                              const RepairTable& table,
                              RepairMode mode = RepairMode::kSequential);

// MDS-decodes every stream from the distinct symbols held by the chosen
// alive nodes and returns the file bytes. Throws insufficient_symbols.
std::vector<uint8_t> collect(const ClusterState& state,
                             const std::vector<int>& nodes);

// Scenario runner: {"code": path-or-inline, "m_file": int, "payload_size":
// int, "failures": [[ids...]...], "collects": [[ids...]...], "seed": int}.
// Returns a metrics object (repairs, bytes moved, per-collect success).
Json run_scenario(const Json& scenario, const std::string& base_dir = ".");

}  // namespace fr
