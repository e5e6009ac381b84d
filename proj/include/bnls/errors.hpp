#pragma once
// Error taxonomy shared by the library and the CLI exit-code contract:
//   ConfigError -> exit 2: malformed/invalid user input (files, keys, values)
//   RegimeError -> exit 3: valid input outside the mathematical regime of the
//                  requested operation (wrong criticality, mass past a
//                  threshold, unbounded region without a restriction radius).
// Everything else (std::invalid_argument, std::runtime_error, ...) signals a
// programming or numerical failure and is not part of the contract.

#include <stdexcept>
#include <string>

namespace bnls {

struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

struct RegimeError : std::domain_error {
  explicit RegimeError(const std::string& what) : std::domain_error(what) {}
};

}  // namespace bnls
