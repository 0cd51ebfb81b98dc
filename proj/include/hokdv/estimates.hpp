#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "hokdv/dispersion.hpp"

namespace hokdv {

struct GapCheckResult {
  bool holds = false;
  long long first_counterexample = 0;  // meaningful only when !holds
};

/// Exhaustive exact-integer check of |lambda_{k+1} - lambda_k| >= k^2 over
/// j+1 <= |k| <= k_max (both signs).
GapCheckResult check_gap(int j, long long k_max);

/// h_j(x) = x^{2j+1} + (c-x)^{2j+1}, c > 0.
double hj_eval(int j, double c, double x);

/// Random audit of the h_j toolbox: symmetry, positivity, critical point,
/// convexity, minimum location, the even-power expansion, its factored form
/// with a free alpha, and the telescoping power identity.
struct HjSuiteReport {
  int trials = 0;
  std::array<long long, 8> failures{};  // one slot per identity
  double worst_rel_error = 0.0;
  bool all_pass() const {
    for (long long f : failures)
      if (f) return false;
    return true;
  }
};

HjSuiteReport hj_identity_suite(int j, int trials, std::uint64_t seed, double rel_tol = 1e-9);

/// Exact rational b-threshold (j+1)/(2(2j+1)).
struct Rational {
  long long num = 0;
  long long den = 1;
};
Rational strichartz_b_threshold(int j);
/// b > threshold, compared by exact cross-multiplication.
bool strichartz_b_admissible(const Rational& b, int j);
/// Parse "2/5" or "0.4" into an exact rational.
Rational parse_rational(const std::string& text);

struct StrichartzSumResult {
  double value = 0.0;
  int set_a_count = 0;       // integers within 1 of k/2
  int omega_plus_count = 0;  // within 1 of k/2 - alpha (resonance roots)
  int omega_minus_count = 0;
};

/// sum over 1 < k1 < k-1 (|k1| <= k1_max) of <tau - k1^{2j+1} - (k-k1)^{2j+1}>^{1-4b},
/// with the exceptional-set cardinalities encountered on the scan.
StrichartzSumResult strichartz_sum(int j, double b, double tau, long long k, long long k1_max);

struct SupMScanResult {
  double sup = 0.0;
  double arg_tau = 0.0;
  long long arg_k = 0;
  int max_set_a = 0;
  int max_omega = 0;
};

/// Max of the counting sum over k <= k_max and a tau grid clustered at the
/// resonance values (where individual terms peak) plus a coarse far grid.
SupMScanResult sup_m_scan(int j, double b, double tau_range, long long k_max,
                          int coarse_tau_points = 65);

}  // namespace hokdv
