#pragma once

#include <stdexcept>
#include <string>

namespace gimag {

enum class Errc {
  invalid_argument,
  dimension_mismatch,
  asymmetric,
  uncertainty_violated,
  not_positive_definite,
  cp_violated,
  unsupported,
  insufficient_cutoff,
  non_convergence,
};

const char* to_string(Errc code);

/// Exception carrying a machine-readable code and, where one exists, the
/// offending number (an eigenvalue, an asymmetry, a trace deficit, ...).
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what, double value = 0.0)
      : std::runtime_error(what), code_(code), value_(value) {}

  Errc code() const noexcept { return code_; }
  double value() const noexcept { return value_; }

 private:
  Errc code_;
  double value_;
};

}  // namespace gimag
