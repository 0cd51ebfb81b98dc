#pragma once

#include <Eigen/Dense>
#include <vector>

#include "hokdv/control_profile.hpp"
#include "hokdv/fourier_field.hpp"

namespace hokdv {

/// G h = g * (h - integral(g h)), computed by a de-aliased collocation
/// product against the band-limited profile. The zero mode of the result is
/// identically zero (mass is never touched by the control).
FourierField apply_G(const ControlProfile& profile, const FourierField& h);

/// Same, with the output truncated at out_N instead of h's truncation.
FourierField apply_G(const ControlProfile& profile, const FourierField& h, int out_N);

/// G is self-adjoint; the adjoint is the same formula. Named alias so call
/// sites mirror G* where the distinction matters conceptually.
FourierField apply_G_adjoint(const ControlProfile& profile, const FourierField& v);

/// Coupling coefficient  (G phi_k, phi_n) = g_{n-k}/sqrt(2pi) - g_{-k} g_n.
cplx coupling_matrix(const ControlProfile& profile, int k, int n);

/// (G^2 phi_k, phi_n) = sum_m (G phi_k, phi_m)(G phi_m, phi_n); the sum runs
/// over every mode where the profile couples, not just a truncation.
cplx coupling_matrix_squared(const ControlProfile& profile, int k, int n);

/// beta_k = ||G phi_k||^2 > 0 for k != 0; computed from the coupling row so
/// it is exactly consistent with the synthesis formulas.
double beta(const ControlProfile& profile, int k);

/// Column vector of (G phi_k, phi_n) for n = -out_N..out_N.
Eigen::VectorXcd coupling_column(const ControlProfile& profile, int k, int out_N);
Eigen::VectorXcd coupling_squared_column(const ControlProfile& profile, int k, int out_N);

/// Compression of G to the truncated space: B(n,k) = (G phi_k, phi_n),
/// indices n,k = -N..N stored at n+N, k+N. Hermitian; annihilates constants.
Eigen::MatrixXcd compressed_G(const ControlProfile& profile, int N);

}  // namespace hokdv
