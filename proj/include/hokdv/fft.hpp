#pragma once

#include <complex>
#include <vector>

namespace hokdv {

using cplx = std::complex<double>;

/// In-place radix-2 FFT, data.size() must be a power of two.
/// sign = -1: forward (e^{-i...}), sign = +1: inverse without the 1/n factor.
void fft_pow2(std::vector<cplx>& data, int sign);

bool is_pow2(std::size_t n);

/// Smallest power of two >= n.
std::size_t next_pow2(std::size_t n);

}  // namespace hokdv
