#include "hokdv/control_operator.hpp"

#include <cmath>

#include "hokdv/errors.hpp"

namespace hokdv {

namespace {

// Samples of the band-limited profile on the grid; cached per (profile, M)
// would be an option, but the transforms here are far from hot.
std::vector<double> profile_samples(const ControlProfile& p, const GridSpec& grid) {
  FourierField g(1, p.profile_modes());
  for (int n = -p.profile_modes(); n <= p.profile_modes(); ++n) g.set_coeff(n, p.coeff(n));
  return synthesize(g, grid);
}

}  // namespace

FourierField apply_G(const ControlProfile& profile, const FourierField& h, int out_N) {
  // grid large enough that modes |n| <= out_N of g*h are alias-free
  const std::size_t need = static_cast<std::size_t>(out_N + h.modes() + profile.profile_modes() + 1);
  const GridSpec grid = GridSpec::for_modes(std::max(out_N, h.modes()), need);

  const std::vector<double> gs = profile_samples(profile, grid);
  const std::vector<double> hs = synthesize(h, grid);

  // c = integral(g h) via Parseval on coefficients (exact for the truncation)
  cplx c{0.0, 0.0};
  for (int m = -h.modes(); m <= h.modes(); ++m) c += h.coeff(m) * std::conj(profile.coeff(m));

  std::vector<double> prod(grid.num_points);
  for (std::size_t i = 0; i < grid.num_points; ++i) prod[i] = gs[i] * (hs[i] - c.real());

  FourierField out = analyze(prod, h.order(), out_N);
  out.set_coeff(0, cplx{0.0, 0.0});  // mean-free by construction; pin it exactly
  return out;
}

FourierField apply_G(const ControlProfile& profile, const FourierField& h) {
  return apply_G(profile, h, h.modes());
}

FourierField apply_G_adjoint(const ControlProfile& profile, const FourierField& v) {
  return apply_G(profile, v);
}

cplx coupling_matrix(const ControlProfile& profile, int k, int n) {
  return profile.coeff(n - k) / kSqrt2Pi - profile.coeff(-k) * profile.coeff(n);
}

cplx coupling_matrix_squared(const ControlProfile& profile, int k, int n) {
  const int Ng = profile.profile_modes();
  cplx acc{0.0, 0.0};
  // (G phi_k, phi_m) vanishes outside this window, so it bounds the sum
  const int lo = std::min(k - Ng, -Ng);
  const int hi = std::max(k + Ng, Ng);
  for (int m = lo; m <= hi; ++m) {
    if (m == 0) continue;  // (G phi_k, phi_0) = 0
    acc += coupling_matrix(profile, k, m) * coupling_matrix(profile, m, n);
  }
  return acc;
}

double beta(const ControlProfile& profile, int k) {
  if (k == 0) throw invalid_argument("beta: the zero mode carries no control (h_0 = 0)");
  const int Ng = profile.profile_modes();
  double acc = 0.0;
  for (int n = k - Ng; n <= k + Ng; ++n) acc += std::norm(coupling_matrix(profile, k, n));
  if (std::abs(k) <= 2 * Ng) {
    for (int n = -Ng; n <= Ng; ++n) {
      if (n >= k - Ng && n <= k + Ng) continue;  // already counted
      acc += std::norm(coupling_matrix(profile, k, n));
    }
  }
  return acc;
}

Eigen::VectorXcd coupling_column(const ControlProfile& profile, int k, int out_N) {
  Eigen::VectorXcd col(2 * out_N + 1);
  for (int n = -out_N; n <= out_N; ++n) col(n + out_N) = coupling_matrix(profile, k, n);
  col(out_N) = cplx{0.0, 0.0};  // n = 0
  return col;
}

Eigen::VectorXcd coupling_squared_column(const ControlProfile& profile, int k, int out_N) {
  Eigen::VectorXcd col(2 * out_N + 1);
  for (int n = -out_N; n <= out_N; ++n) col(n + out_N) = coupling_matrix_squared(profile, k, n);
  col(out_N) = cplx{0.0, 0.0};
  return col;
}

Eigen::MatrixXcd compressed_G(const ControlProfile& profile, int N) {
  Eigen::MatrixXcd B(2 * N + 1, 2 * N + 1);
  for (int k = -N; k <= N; ++k) B.col(k + N) = coupling_column(profile, k, N);
  B.row(N).setZero();
  return B;
}

}  // namespace hokdv
