#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "hokdv/fourier_field.hpp"
#include "hokdv/rng.hpp"

namespace hokdv {

/// Discrete space-time Fourier data f~(tau, k) for a signal that is periodic
/// in t with period t_span (tau lattice spacing 2*pi/t_span) and band-limited
/// in x (|k| <= N). Each mode stores a band of M_t consecutive tau samples
/// centered by an integer offset, so data hugging the characteristic
/// tau = k^{2j+1} stays affordable at large N. The represented signal is
///   f(t,x) = (1/t_span) sum_{k,i} f~(tau_i,k) e^{i(tau_i t + k x)}.
class SpaceTimeSample {
 public:
  SpaceTimeSample(int j, int N, std::size_t M_t, double t_span);

  int order() const { return j_; }
  int modes() const { return N_; }
  std::size_t time_samples() const { return Mt_; }
  double span() const { return t_span_; }
  double dtau() const { return kTwoPi / t_span_; }

  /// tau of row i in mode k's band.
  double tau_at(int k, std::size_t i) const;
  long long offset(int k) const { return offset_[static_cast<std::size_t>(k + N_)]; }
  void set_offset(int k, long long o) { offset_[static_cast<std::size_t>(k + N_)] = o; }

  cplx value(std::size_t i, int k) const { return v_(static_cast<Eigen::Index>(i), k + N_); }
  void set_value(std::size_t i, int k, cplx x) { v_(static_cast<Eigen::Index>(i), k + N_) = x; }
  const Eigen::MatrixXcd& values() const { return v_; }

  /// Exact samples f(t_m, x_l) on a t_eval x x_eval grid spanning one period
  /// (integer-lattice FFT evaluation; no interpolation).
  Eigen::MatrixXcd physical_samples(std::size_t t_eval, std::size_t x_eval) const;

  /// Relative gap between the lattice Parseval sum and the physical-grid
  /// quadrature of |f|^2 (should sit at round-off).
  double parseval_defect() const;

 private:
  int j_;
  int N_;
  std::size_t Mt_;
  double t_span_;
  std::vector<long long> offset_;
  Eigen::MatrixXcd v_;  // (M_t) x (2N+1)
};

/// X^{s,b} norm: (sum_k int <k>^{2s} <tau - k^{2j+1}>^{2b} |f~|^2 dtau)^{1/2}
/// with trapezoid weights along the tau band. Raises accuracy_error when the
/// lattice is too coarse (dtau > 1) or a band clips its content.
double discrete_xsb_norm(const SpaceTimeSample& sample, double s, double b);

/// L^4 over one period, by quadrature on the physical grid; the evaluation
/// grid is doubled once as a self-check.
double l4_norm(const SpaceTimeSample& sample, double self_check_tol = 0.02);

/// Hann window of length 2 centered at 0 and its transform.
double hann_window(double t);
double hann_window_transform(double sigma);

/// eta(t) e^{i(k0 x + tau0 t)} with the Hann window: a single tone carried
/// off (or on) the characteristic.
SpaceTimeSample windowed_tone(int j, int N, int k0, double tau0, std::size_t M_t,
                              double t_span);

/// eta(t) W(t) u0 for a coefficient vector u0: mass concentrated on the
/// characteristic with the window's modulation profile.
SpaceTimeSample windowed_free_solution(int j, const FourierField& u0, std::size_t M_t,
                                       double t_span);

/// norm of the window profile against the modulation weight:
/// W_b = int <sigma>^{2b} |eta^(sigma)|^2 dsigma (fine trapezoid).
double window_weight_integral(double b, double sigma_max = 2048.0, double dsigma = 1.0 / 64.0);

}  // namespace hokdv
