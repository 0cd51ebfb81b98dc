#pragma once

#include "hokdv/fourier_field.hpp"
#include "hokdv/rng.hpp"

namespace hokdv {

/// Real mean-zero field with Gaussian coefficients on 1 <= |k| <= k_support,
/// rescaled to the requested L2 norm.
inline FourierField random_mean_zero_field(int j, int N, int k_support, double l2_norm,
                                           Rng& rng) {
  FourierField u(j, N);
  for (int k = 1; k <= std::min(N, k_support); ++k) {
    const cplx c{rng.normal(), rng.normal()};
    u.set_coeff(k, c);
    u.set_coeff(-k, std::conj(c));
  }
  const double n = sobolev_norm(u, 0.0);
  if (n > 0.0) u *= l2_norm / n;
  return u;
}

/// Random real field including a mean component (Gaussian everywhere).
inline FourierField random_field(int j, int N, Rng& rng) {
  FourierField u(j, N);
  u.set_coeff(0, cplx{rng.normal(), 0.0});
  for (int k = 1; k <= N; ++k) {
    const cplx c{rng.normal(), rng.normal()};
    u.set_coeff(k, c);
    u.set_coeff(-k, std::conj(c));
  }
  return u;
}

}  // namespace hokdv
