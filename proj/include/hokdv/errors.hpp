#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace hokdv {

/// Integer overflow in dispersion arithmetic (k^{2j+1} beyond supported width).
class range_error : public std::range_error {
 public:
  using std::range_error::range_error;
};

class invalid_argument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A quadrature or resolution self-check failed; message suggests a remedy.
class accuracy_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Gram matrix condition estimate above threshold; enlarge T or shrink the mode set.
class ill_posed_horizon_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// beta_k fell below the positivity floor for some requested mode.
class degenerate_profile_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Least-squares reachability matrix cannot reach some target modes.
class partial_controllability_error : public std::runtime_error {
 public:
  partial_controllability_error(const std::string& what, std::vector<int> modes)
      : std::runtime_error(what), dead_modes(std::move(modes)) {}
  std::vector<int> dead_modes;
};

/// NaN/Inf appeared during time stepping; carries the last finite time.
class blow_up_error : public std::runtime_error {
 public:
  blow_up_error(const std::string& what, double t_last)
      : std::runtime_error(what), last_finite_time(t_last) {}
  double last_finite_time;
};

}  // namespace hokdv
