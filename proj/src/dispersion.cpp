#include "hokdv/dispersion.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#include "hokdv/errors.hpp"

namespace hokdv {

namespace {

constexpr unsigned __int128 kInt128Max =
    (static_cast<unsigned __int128>(1) << 127) - 1;

void check_order(int j) {
  if (j < 1) throw invalid_argument("dispersion order j must be >= 1");
}

}  // namespace

__int128 dispersion_power(int j, long long k) {
  check_order(j);
  const bool negative = k < 0;
  const unsigned __int128 mag =
      negative ? static_cast<unsigned __int128>(-(k + 1)) + 1
               : static_cast<unsigned __int128>(k);
  unsigned __int128 acc = 1;
  for (int e = 0; e < 2 * j + 1; ++e) {
    if (mag != 0 && acc > kInt128Max / mag)
      throw range_error("dispersion_power: |k|^{2j+1} exceeds 128-bit range");
    acc *= mag;
  }
  const auto val = static_cast<__int128>(acc);
  return negative ? -val : val;  // odd exponent keeps the sign of k
}

ImaginaryEigenvalue dispersion_eigenvalue(int j, long long k) {
  return {dispersion_power(j, k)};
}

WideInt dispersion_power_wide(int j, long long k) {
  check_order(j);
  // (2j+1)*log2(|k|+2) + slack must stay inside 256 bits.
  const double bits =
      (2.0 * j + 1.0) * std::log2(static_cast<double>(std::llabs(k)) + 2.0);
  if (bits > 250.0)
    throw range_error("eigenvalue_gap: k^{2j+1} exceeds 256-bit range");
  WideInt base = k;
  WideInt acc = 1;
  for (int e = 0; e < 2 * j + 1; ++e) acc *= base;
  return acc;
}

WideInt eigenvalue_gap(int j, long long k) {
  const WideInt a = dispersion_power_wide(j, k + 1);
  const WideInt b = dispersion_power_wide(j, k);
  const WideInt d = a - b;
  return d < 0 ? WideInt(-d) : d;
}

double dispersion_phase(int j, long long k) {
  check_order(j);
  double p = static_cast<double>(k);
  double acc = 1.0;
  for (int e = 0; e < 2 * j + 1; ++e) acc *= p;
  return acc;
}

}  // namespace hokdv
