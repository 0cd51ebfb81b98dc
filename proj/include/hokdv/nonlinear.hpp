#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hokdv/control_profile.hpp"
#include "hokdv/feedback.hpp"
#include "hokdv/fourier_field.hpp"
#include "hokdv/moment_control.hpp"
#include "hokdv/trajectory.hpp"

namespace hokdv {

/// Applied forcing, possibly state-dependent (feedback laws close the loop
/// through this hook). Must return a field at the state's truncation.
using ForcingFn = std::function<FourierField(double t, const FourierField& u)>;

struct SimulateOptions {
  int snapshot_stride = 1;
  bool nonlinear = true;     // false: drop u u_x (linear audit runs)
  bool log_forcing = false;
};

/// One fourth-order integrating-factor Runge-Kutta step of
///   du/dt = A u - (1/2) d_x(u^2) + f(t,u),
/// linear phases exact, quadratic term de-aliased by collocation.
FourierField nonlinear_step(const FourierField& u, double t, double dt,
                            const ForcingFn& forcing, bool nonlinear = true);

/// Repeated stepping with snapshots every `snapshot_stride` steps; the final
/// partial step lands exactly on T. Throws blow_up_error on NaN/Inf.
Trajectory simulate(const FourierField& u0, double T, double dt, const ForcingFn& forcing,
                    SimulateOptions opts = {});

enum class FeedbackMode { kSimpleDamping, kGain };

/// f = -GG* u (simple damping) or f = -GG* L_lambda^{-1}(u - [u]) (gain).
Trajectory closed_loop_nonlinear(const FourierField& u0, const ControlProfile& profile,
                                 FeedbackMode mode, double lambda, double T, double dt,
                                 SimulateOptions opts = {});

/// Forcing G h(t,.) for a synthesized open-loop control.
ForcingFn control_forcing(const ControlSignal& signal, const MomentSystem& system,
                          const ControlProfile& profile, int out_N);

/// w(T,u) = int_0^T W(T-tau) (u u_x)(tau) dtau from stored snapshots;
/// composite 5-point panels with a node-thinning self-check.
FourierField duhamel_nonlinear_tail(const Trajectory& traj, double T,
                                    double self_check_tol = 1e-6);

struct PicardOptions {
  double tol = 1e-8;
  int max_iter = 10;
  double dt = 0.0;              // 0: choose from the top control frequency
  double smallness_delta = 0.05;  // recorded gate, not a refusal
  bool refine = true;
  int snapshot_stride = 4;
};

struct PicardReport {
  int iterations = 0;
  std::vector<double> residual_history;
  ControlSignal final_control;
  bool converged = false;
  bool smallness_ok = true;
  double final_residual = 0.0;
};

/// Fixed-point loop for the small-data exact control: each pass synthesizes
/// h = Phi(u0, u1 + w(T,u)) against the linear moment machinery and re-runs
/// the nonlinear solver under G h. Non-convergence is reported, not thrown.
PicardReport picard_local_control(const FourierField& u0, const FourierField& u1,
                                  const ControlProfile& profile, const MomentSystem& system,
                                  PicardOptions opts = {});

struct GlobalControlOptions {
  double stabilize_tol = 0.02;
  double T_local = 1.0;
  double dt_damping = 1e-3;
  double chunk_T = 5.0;
  double max_phase_T = 400.0;
  int mode_cut = 12;           // controllable band for the local phase
  PicardOptions picard{};
  int path_stride = 50;
};

struct GlobalControlReport {
  bool ok = false;
  std::string failed_phase;
  double T1 = 0.0, T2 = 0.0, T_total = 0.0;
  double damped_gap0 = 0.0;     // ||u(T1) - mu|| after the forward damping leg
  double damped_gap1 = 0.0;     // ||w(T2) - mu|| after the mirrored damping leg
  double return_gap = 0.0;      // ||v(T2) - u1|| of the replayed return leg
  double reversal_defect = 0.0; // free-flow reflect round trip
  double final_residual_l2 = 0.0;
  double final_residual_hs = 0.0;
  PicardReport picard;
  Trajectory verification;      // the single un-cut verification run
};

/// Damp to the mean, mirror-damp the target backwards through the x -> -x
/// symmetry, bridge the small states with the local control, then verify the
/// concatenated control in one forward run.
GlobalControlReport global_control_experiment(const FourierField& u0, const FourierField& u1,
                                              const ControlProfile& profile,
                                              GlobalControlOptions opts = {});

}  // namespace hokdv
