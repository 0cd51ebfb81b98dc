#pragma once

#include <Eigen/Dense>
#include <optional>
#include <utility>
#include <vector>

#include "hokdv/control_operator.hpp"
#include "hokdv/control_profile.hpp"
#include "hokdv/fourier_field.hpp"

namespace hokdv {

/// Modes {k : 1 <= |k| <= n_c}, ordered -n_c..-1, 1..n_c.
std::vector<int> symmetric_mode_set(int n_c);

/// Gram matrix of the exponential family p_k(t) = e^{i k^{2j+1} t} on
/// L^2(0,T): entry (m,k) = int_0^T e^{i(k^{2j+1}-m^{2j+1})t} dt, in closed
/// form (T on the diagonal, (e^{i D T}-1)/(i D) off it).
Eigen::MatrixXcd gram_matrix(int j, double T, const std::vector<int>& mode_set);

/// Dual-basis coefficients C with q_r = sum_m C(r,m) p_m and
/// int_0^T q_r conj(p_k) = delta_{rk}. Throws ill_posed_horizon_error when
/// the Gram condition estimate exceeds the threshold.
Eigen::MatrixXcd dual_basis(const Eigen::MatrixXcd& gram, double cond_threshold = 1e12,
                            double* cond_out = nullptr);

/// The biorthogonal machinery for one (j, T, mode set) choice.
class MomentSystem {
 public:
  MomentSystem(int j, double T, std::vector<int> mode_set, double cond_threshold = 1e12);

  int order() const { return j_; }
  double horizon() const { return T_; }
  const std::vector<int>& mode_set() const { return modes_; }
  int mode_count() const { return static_cast<int>(modes_.size()); }
  int index_of(int k) const;  // -1 if absent

  const Eigen::MatrixXcd& gram() const { return gram_; }
  const Eigen::MatrixXcd& dual_coeffs() const { return dual_; }
  double cond_estimate() const { return cond_; }
  /// max |int q_r conj(p_k) - delta| evaluated against the closed-form Gram.
  double biorthogonality_residual() const { return biortho_residual_; }

  /// q_k(t) for k = mode_set()[idx].
  cplx dual_value(int idx, double t) const;
  /// exp(i k^{2j+1} t) phases for every mode in the set.
  Eigen::VectorXcd mode_phases(double t) const;
  double dispersion_frequency(int idx) const { return freq_[static_cast<std::size_t>(idx)]; }
  double max_frequency() const;

 private:
  int j_;
  double T_;
  std::vector<int> modes_;
  std::vector<double> freq_;  // k^{2j+1}
  Eigen::MatrixXcd gram_;
  Eigen::MatrixXcd dual_;
  double cond_ = 0.0;
  double biortho_residual_ = 0.0;
};

/// Open-loop control in the separated form h(t,x) = sum_k h_k q_k(t) (G phi_k)(x).
struct ControlSignal {
  std::vector<int> mode_set;
  Eigen::VectorXcd coeffs;          // h_k over mode_set, Hermitian-paired
  double l2hs_norm = 0.0;           // ||h||_{L^2(0,T;H^s)}
  double sobolev_s = 0.0;
  double target_tail_fraction = 0.0;  // energy of (u0,u1) outside the mode set
};

/// h_k = (e^{-lambda_k T} u1_k - u0_k)/beta_k, h_0 = 0. Requires matching
/// means; beta_k below 1e-15 raises degenerate_profile_error. s >= 0 only.
ControlSignal synthesize_control(const FourierField& u0, const FourierField& u1,
                                 const ControlProfile& profile, const MomentSystem& system,
                                 double sobolev_s = 0.0);

/// h(t, .) as a field on modes |n| <= out_N. t must lie in [0, T].
FourierField evaluate_control(const ControlSignal& signal, const MomentSystem& system,
                              const ControlProfile& profile, double t, int out_N);

struct ReachOptions {
  int nodes_per_panel = 8;
  /// Panels per oscillation period of the fastest dual exponential.
  double oversample = 4.0;
  std::size_t max_panels = 6'000'000;
  /// If > 0, record ||u(t) - u1|| at roughly this many times along the way.
  int path_points = 0;
};

struct ReachReport {
  FourierField terminal;
  double residual_l2 = 0.0;
  double residual_hs = 0.0;
  double sobolev_s = 0.0;
  double mean_drift = 0.0;  // max |[u(t)] - [u0]| over recorded times
  std::vector<std::pair<double, double>> path;  // (t, ||u(t)-u1||_{L2})
};

/// Forward integrator for du/dt = Au + G h(t,.) used to audit a synthesized
/// control. The linear flow is exact; the forcing enters through panel
/// quadratures J_{k,n} = int_0^T q_k(t) e^{-lambda_n t} dt where q_k is
/// *sampled* at Gauss-Legendre nodes and only the Duhamel kernel times the
/// nodal interpolant is integrated exactly (oscillatory weights from moment
/// recurrences). Nothing here assumes biorthogonality, so the reach check is
/// independent of the synthesis algebra.
class ReachVerifier {
 public:
  ReachVerifier(const MomentSystem& system, const ControlProfile& profile, int out_N,
                ReachOptions opts = {});

  ReachReport verify(const FourierField& u0, const ControlSignal& signal,
                     const FourierField& u1, double sobolev_s = 0.0) const;

  /// One least-squares pass over the discrete input-to-state map assembled
  /// from this verifier's quadrature columns. The refined residual never
  /// exceeds the incoming one. Throws partial_controllability_error when the
  /// target has mass on modes the map cannot reach.
  ControlSignal refine(const FourierField& u0, const FourierField& u1,
                       const ControlSignal& base) const;

  int out_modes() const { return out_N_; }
  std::size_t panels() const { return panels_; }
  /// J_{k,n} for n in -out_N..out_N (k by mode-set index).
  cplx quadrature(int k_idx, int n) const;

 private:
  Eigen::MatrixXcd reach_matrix() const;  // (2N+1) x K, target d = u1 - W(T)u0
  const MomentSystem& system_;
  const ControlProfile& profile_;
  int out_N_;
  ReachOptions opts_;
  std::size_t panels_ = 0;
  double panel_len_ = 0.0;
  Eigen::MatrixXcd J_;               // K x (out_N+1), columns n = 0..out_N
  Eigen::MatrixXcd g2_;              // (2N+1) x K, columns (G^2 phi_k)_n
  std::vector<double> out_freq_;     // n^{2j+1}, n = 0..out_N
  std::vector<std::size_t> path_panels_;
  std::vector<Eigen::MatrixXcd> J_partial_;  // snapshots at path panels
};

/// Convenience wrappers matching the operation names.
ReachReport verify_reach(const FourierField& u0, const ControlSignal& signal,
                         const FourierField& u1, const MomentSystem& system,
                         const ControlProfile& profile, int out_N, ReachOptions opts = {});

ControlSignal refine_control(const FourierField& u0, const FourierField& u1,
                             const ControlSignal& signal, const MomentSystem& system,
                             const ControlProfile& profile, int out_N, ReachOptions opts = {});

}  // namespace hokdv
