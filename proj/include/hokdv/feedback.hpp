#pragma once

#include <Eigen/Dense>
#include <vector>

#include "hokdv/control_profile.hpp"
#include "hokdv/fourier_field.hpp"
#include "hokdv/trajectory.hpp"

namespace hokdv {

/// Feedback gain K_lambda = GG* L_lambda^{-1} on the mean-zero truncated
/// space (modes k = -N..-1, 1..N). L_lambda is the exponentially weighted
/// flow average of GG* over one time unit; L_0 is the identity by convention.
/// Matrices are stored with the index map k -> k+N (k<0), k -> k+N-1 (k>0).
class FeedbackGain {
 public:
  FeedbackGain(const ControlProfile& profile, int j, int N, double lambda);

  double lambda() const { return lambda_; }
  int order() const { return j_; }
  int modes() const { return N_; }

  const Eigen::MatrixXcd& L_matrix() const { return L_; }
  const Eigen::MatrixXcd& K_matrix() const { return K_; }
  const Eigen::MatrixXcd& damping_matrix() const { return B2_; }  // GG* compressed
  double min_L_eigenvalue() const { return lmin_; }

  /// A - K_lambda on the mean-zero space (A = diag(i k^{2j+1})).
  Eigen::MatrixXcd closed_loop_generator() const;

  Eigen::VectorXcd to_mean_zero(const FourierField& u) const;
  FourierField from_mean_zero(const Eigen::VectorXcd& v, double mean = 0.0) const;

 private:
  int j_;
  int N_;
  double lambda_;
  Eigen::MatrixXcd B2_, L_, K_;
  double lmin_ = 0.0;
};

/// GG* L_lambda^{-1} (u - [u]); the mean never enters the feedback path.
FourierField apply_K_lambda(const FeedbackGain& gain, const FourierField& u);

/// L_lambda assembled by Gauss-Legendre quadrature in tau with node doubling
/// until entries settle below 1e-10; cross-check for the closed-form path.
/// Feasible only while nodes resolve oscillations ~ 2 N^{2j+1}.
Eigen::MatrixXcd feedback_L_quadrature(const ControlProfile& profile, int j, int N,
                                       double lambda, int start_nodes = 64,
                                       int max_nodes = 1 << 20);

/// Closed loop du/dt = (A - K_lambda) u integrated by a per-step matrix
/// exponential; exact for the truncated system up to exp evaluation error.
Trajectory closed_loop_linear_simulate(const FourierField& u0, const FeedbackGain& gain,
                                       double T, double dt, int snapshot_stride = 1);

struct DecayFit {
  double gamma = 0.0;      // fitted rate of ||u(t)-[u0]||_{L2} ~ e^{-gamma t}
  double r_squared = 0.0;
  bool window_truncated = false;  // samples below the underflow floor dropped
};

/// Log-linear least squares on the trailing half of the trajectory.
DecayFit decay_rate_estimate(const Trajectory& traj);

/// | ||u(T)||^2 - ||u0||^2 + int ||G u||^2 dt | with composite Simpson over
/// the stored samples; meaningful for simple-damping runs (lambda = 0).
double energy_balance_defect(const Trajectory& traj, const ControlProfile& profile);

/// int ||G u||^2 dt alone (diagnostic for runs without feedback).
double damping_integral(const Trajectory& traj, const ControlProfile& profile);

/// Max real part of the spectrum.
double spectral_abscissa(const Eigen::MatrixXcd& generator);

}  // namespace hokdv
