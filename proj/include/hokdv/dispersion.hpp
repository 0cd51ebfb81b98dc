#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <complex>
#include <cstdint>

namespace hokdv {

/// 256-bit signed integer for gap arithmetic; k^{2j+1} at j=5, |k|=10^4 has
/// ~147 bits and does not fit the 128-bit dispersion contract.
using WideInt = boost::multiprecision::int256_t;

/// k^{2j+1} as an exact integer. Throws hokdv::range_error once the value
/// leaves the signed 128-bit range.
__int128 dispersion_power(int j, long long k);

/// Eigenvalue of the dispersion generator on mode k: a purely imaginary
/// number i*k^{2j+1}, kept in exact integer form.
struct ImaginaryEigenvalue {
  __int128 imag;  // lambda_k = i * imag
  std::complex<double> to_complex() const {
    return {0.0, static_cast<double>(imag)};
  }
};

ImaginaryEigenvalue dispersion_eigenvalue(int j, long long k);

/// |lambda_{k+1} - lambda_k| = |(k+1)^{2j+1} - k^{2j+1}|, exact.
/// Uses 256-bit arithmetic so the full j<=5, |k|<=10^4 sweep stays exact.
WideInt eigenvalue_gap(int j, long long k);

/// k^{2j+1} in 256-bit arithmetic (range-checked).
WideInt dispersion_power_wide(int j, long long k);

/// Phase k^{2j+1} as a double (for oscillatory factors e^{i t k^{2j+1}}).
double dispersion_phase(int j, long long k);

}  // namespace hokdv
