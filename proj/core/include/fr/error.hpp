#pragma once

#include <stdexcept>
#include <string>

namespace fr {

// Error codes group into the CLI exit-code contract:
//   precondition/parse -> 2, budget -> 3, property violation -> 4.
enum class errc {
  // validation
  non_uniform_node_size,
  non_uniform_repetition,
  unused_symbol,
  // repair
  parameter_mismatch,
  not_an_fr_code,
  // fields / designs
  not_prime,
  not_prime_power,
  too_many_classes,
  invalid_order,
  not_regular,
  unknown_name,
  not_steiner,
  // compose
  non_divisible,
  no_resolution,
  bad_index,
  // analysis
  bad_k,
  precondition_failed,
  budget_exceeded,
  // sim
  too_many_symbols,
  file_size_mismatch,
  insufficient_symbols,
  // generic
  property_violation,
  parse_error,
};

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  errc code() const { return code_; }

  // kind(): 2 = precondition/parse, 3 = budget, 4 = property violation
  int exit_kind() const {
    switch (code_) {
      case errc::budget_exceeded:
        return 3;
      case errc::not_an_fr_code:
      case errc::property_violation:
        return 4;
      default:
        return 2;
    }
  }

 private:
  errc code_;
};

[[noreturn]] inline void raise(errc code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace fr
