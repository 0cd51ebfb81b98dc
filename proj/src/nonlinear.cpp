#include "hokdv/nonlinear.hpp"

#include <algorithm>
#include <cmath>

#include "hokdv/dispersion.hpp"
#include "hokdv/errors.hpp"

namespace hokdv {

namespace {

class LawsonStepper {
 public:
  LawsonStepper(int j, int N, bool nonlinear)
      : j_(j), N_(N), nonlinear_(nonlinear), grid_(GridSpec::for_modes(N)) {}

  void set_dt(double dt) {
    if (dt == dt_) return;
    dt_ = dt;
    const std::size_t dim = static_cast<std::size_t>(2 * N_ + 1);
    half_.resize(dim);
    full_.resize(dim);
    for (int k = -N_; k <= N_; ++k) {
      const double w = dispersion_phase(j_, k);
      half_[static_cast<std::size_t>(k + N_)] = std::polar(1.0, 0.5 * dt * w);
      full_[static_cast<std::size_t>(k + N_)] = std::polar(1.0, dt * w);
    }
  }

  // -(1/2) d_x(u^2) + f(t,u)
  FourierField rhs(double t, const FourierField& u, const ForcingFn& forcing) const {
    FourierField out(j_, N_);
    if (nonlinear_) {
      const std::vector<double> s = synthesize(u, grid_);
      std::vector<double> sq(s.size());
      for (std::size_t i = 0; i < s.size(); ++i) sq[i] = s[i] * s[i];
      const FourierField u2 = analyze(sq, j_, N_);
      for (int k = -N_; k <= N_; ++k)
        out.set_coeff(k, cplx{0.0, -0.5 * static_cast<double>(k)} * u2.coeff(k));
    }
    if (forcing) out += forcing(t, u);
    return out;
  }

  FourierField step(const FourierField& u, double t, double dt, const ForcingFn& forcing) {
    set_dt(dt);
    const FourierField k1 = rhs(t, u, forcing);
    FourierField ua = u;
    axpy(ua, 0.5 * dt, k1);
    mul(ua, half_);
    const FourierField k2 = rhs(t + 0.5 * dt, ua, forcing);

    FourierField ub = u;
    mul(ub, half_);
    axpy(ub, 0.5 * dt, k2);
    const FourierField k3 = rhs(t + 0.5 * dt, ub, forcing);

    FourierField uc = u;
    mul(uc, full_);
    FourierField k3r = k3;
    mul(k3r, half_);
    axpy(uc, dt, k3r);
    const FourierField k4 = rhs(t + dt, uc, forcing);

    FourierField out = u;
    mul(out, full_);
    FourierField acc = k1;
    mul(acc, full_);
    FourierField mid = k2;
    FourierField mid2 = k3;
    mid += mid2;
    mul(mid, half_);
    axpy(out, dt / 6.0, acc);
    axpy(out, dt / 3.0, mid);
    axpy(out, dt / 6.0, k4);
    return out;
  }

 private:
  static void axpy(FourierField& y, double a, const FourierField& x) {
    auto& yr = y.raw();
    const auto& xr = x.raw();
    for (std::size_t i = 0; i < yr.size(); ++i) yr[i] += a * xr[i];
  }
  static void mul(FourierField& y, const std::vector<cplx>& m) {
    auto& yr = y.raw();
    for (std::size_t i = 0; i < yr.size(); ++i) yr[i] *= m[i];
  }

  int j_;
  int N_;
  bool nonlinear_;
  GridSpec grid_;
  double dt_ = -1.0;
  std::vector<cplx> half_, full_;
};

}  // namespace

FourierField nonlinear_step(const FourierField& u, double t, double dt,
                            const ForcingFn& forcing, bool nonlinear) {
  LawsonStepper stepper(u.order(), u.modes(), nonlinear);
  FourierField out = stepper.step(u, t, dt, forcing);
  if (!out.all_finite()) throw blow_up_error("nonlinear_step: state left the finite range", t);
  return out;
}

Trajectory simulate(const FourierField& u0, double T, double dt, const ForcingFn& forcing,
                    SimulateOptions opts) {
  if (!(T > 0.0)) throw invalid_argument("simulate: horizon must be positive");
  if (!(dt > 0.0)) throw invalid_argument("simulate: dt must be positive");

  LawsonStepper stepper(u0.order(), u0.modes(), opts.nonlinear);
  Trajectory traj;
  traj.times.push_back(0.0);
  traj.states.push_back(u0);
  if (opts.log_forcing)
    traj.forcing_log.push_back(forcing ? forcing(0.0, u0) : FourierField(u0.order(), u0.modes()));

  long long full_steps = static_cast<long long>(std::floor(T / dt + 1e-9));
  double rem = T - dt * static_cast<double>(full_steps);
  if (rem < 1e-12 * std::max(1.0, T)) rem = 0.0;

  FourierField u = u0;
  double t = 0.0;
  auto record = [&](double tt, const FourierField& uu) {
    traj.times.push_back(tt);
    traj.states.push_back(uu);
    if (opts.log_forcing)
      traj.forcing_log.push_back(forcing ? forcing(tt, uu) : FourierField(u0.order(), u0.modes()));
  };

  for (long long s = 1; s <= full_steps; ++s) {
    u = stepper.step(u, t, dt, forcing);
    t = dt * static_cast<double>(s);
    if (!u.all_finite())
      throw blow_up_error("simulate: blow-up at t = " + std::to_string(t) +
                              " (dt too large or genuinely unstable forcing)",
                          traj.times.back());
    if (s % opts.snapshot_stride == 0 || (s == full_steps && rem == 0.0)) record(t, u);
  }
  if (rem > 0.0) {
    u = stepper.step(u, t, rem, forcing);
    t = T;
    if (!u.all_finite()) throw blow_up_error("simulate: blow-up in the final step", traj.times.back());
    record(t, u);
  }
  return traj;
}

Trajectory closed_loop_nonlinear(const FourierField& u0, const ControlProfile& profile,
                                 FeedbackMode mode, double lambda, double T, double dt,
                                 SimulateOptions opts) {
  const double lam = mode == FeedbackMode::kSimpleDamping ? 0.0 : lambda;
  FeedbackGain gain(profile, u0.order(), u0.modes(), lam);
  ForcingFn f = [gain](double, const FourierField& u) {
    FourierField out = apply_K_lambda(gain, u);
    out *= -1.0;
    return out;
  };
  return simulate(u0, T, dt, f, opts);
}

ForcingFn control_forcing(const ControlSignal& signal, const MomentSystem& system,
                          const ControlProfile& profile, int out_N) {
  // G h(t,.) = sum_k h_k q_k(t) G^2 phi_k; columns precomputed
  const int K = system.mode_count();
  Eigen::MatrixXcd cols(2 * out_N + 1, K);
  for (int i = 0; i < K; ++i)
    cols.col(i) = coupling_squared_column(profile, system.mode_set()[static_cast<std::size_t>(i)], out_N);
  const Eigen::VectorXcd h = signal.coeffs;
  const int j = system.order();
  return [cols, h, &system, j, out_N](double t, const FourierField&) {
    Eigen::VectorXcd s(h.size());
    for (int i = 0; i < h.size(); ++i) s(i) = h(i) * system.dual_value(i, t);
    const Eigen::VectorXcd v = cols * s;
    FourierField f(j, out_N);
    for (int n = -out_N; n <= out_N; ++n) f.set_coeff(n, v(n + out_N));
    return f;
  };
}

namespace {

// composite integration of uniformly sampled fields: 5-point panels (4
// intervals each), Simpson / 3/8 blocks absorb the remainder
void panel_weights(std::size_t intervals, std::vector<double>& w) {
  w.assign(intervals + 1, 0.0);
  std::size_t i = 0;
  std::size_t left = intervals;
  auto add = [&w](std::size_t at, double v) { w[at] += v; };
  if (left % 4 == 1 && left >= 5) {  // peel 5 = 2 + 3
    add(i, 1.0 / 3.0);
    add(i + 1, 4.0 / 3.0);
    add(i + 2, 1.0 / 3.0);
    add(i + 2, 3.0 / 8.0);
    add(i + 3, 9.0 / 8.0);
    add(i + 4, 9.0 / 8.0);
    add(i + 5, 3.0 / 8.0);
    i += 5;
    left -= 5;
  } else if (left % 4 == 2) {
    add(i, 1.0 / 3.0);
    add(i + 1, 4.0 / 3.0);
    add(i + 2, 1.0 / 3.0);
    i += 2;
    left -= 2;
  } else if (left % 4 == 3) {
    add(i, 3.0 / 8.0);
    add(i + 1, 9.0 / 8.0);
    add(i + 2, 9.0 / 8.0);
    add(i + 3, 3.0 / 8.0);
    i += 3;
    left -= 3;
  } else if (left % 4 == 1) {  // a single interval: trapezoid, flagged by the self-check
    add(i, 0.5);
    add(i + 1, 0.5);
    i += 1;
    left -= 1;
  }
  for (; left >= 4; left -= 4, i += 4) {  // Boole
    add(i, 14.0 / 45.0);
    add(i + 1, 64.0 / 45.0);
    add(i + 2, 24.0 / 45.0);
    add(i + 3, 64.0 / 45.0);
    add(i + 4, 14.0 / 45.0);
  }
}

FourierField duhamel_tail_on(const std::vector<double>& times,
                             const std::vector<FourierField>& states, double T) {
  const int j = states.front().order();
  const int N = states.front().modes();
  const GridSpec grid = GridSpec::for_modes(N);
  const double h = times[1] - times[0];

  std::vector<double> w;
  panel_weights(times.size() - 1, w);

  FourierField acc(j, N);
  for (std::size_t i = 0; i < times.size(); ++i) {
    const std::vector<double> s = synthesize(states[i], grid);
    std::vector<double> sq(s.size());
    for (std::size_t m = 0; m < s.size(); ++m) sq[m] = s[m] * s[m];
    const FourierField u2 = analyze(sq, j, N);
    const double lag = T - times[i];
    for (int k = -N; k <= N; ++k) {
      // u u_x = (1/2) d_x(u^2), rotated forward by W(T - tau)
      const cplx v = cplx{0.0, 0.5 * static_cast<double>(k)} * u2.coeff(k);
      const cplx rot = std::polar(1.0, dispersion_phase(j, k) * lag);
      acc.set_coeff(k, acc.coeff(k) + w[i] * h * rot * v);
    }
  }
  return acc;
}

}  // namespace

FourierField duhamel_nonlinear_tail(const Trajectory& traj, double T, double self_check_tol) {
  if (traj.size() < 5)
    throw invalid_argument("duhamel_nonlinear_tail: need at least 5 snapshots");
  // locate the window [0, T] in the stored samples
  std::size_t last = 0;
  for (std::size_t i = 0; i < traj.size(); ++i)
    if (traj.times[i] <= T + 1e-9) last = i;
  if (std::abs(traj.times[last] - T) > 1e-9 * std::max(1.0, T))
    throw invalid_argument("duhamel_nonlinear_tail: trajectory does not cover [0, T] on a uniform stride");
  const std::vector<double> times(traj.times.begin(), traj.times.begin() + static_cast<long>(last) + 1);
  for (std::size_t i = 2; i < times.size(); ++i)
    if (std::abs((times[i] - times[i - 1]) - (times[1] - times[0])) > 1e-9 * std::max(1.0, T))
      throw invalid_argument("duhamel_nonlinear_tail: stride must be uniform");
  const std::vector<FourierField> states(traj.states.begin(),
                                         traj.states.begin() + static_cast<long>(last) + 1);

  const FourierField full = duhamel_tail_on(times, states, T);

  if (times.size() >= 9) {
    std::vector<double> t2;
    std::vector<FourierField> s2;
    for (std::size_t i = 0; i < times.size(); i += 2) {
      t2.push_back(times[i]);
      s2.push_back(states[i]);
    }
    if (std::abs(t2.back() - T) < 1e-9 * std::max(1.0, T)) {
      const FourierField half = duhamel_tail_on(t2, s2, T);
      const double scale = std::max(sobolev_norm(full, 0.0), 1e-30);
      if (sobolev_norm(full - half, 0.0) / scale > self_check_tol)
        throw accuracy_error(
            "duhamel_nonlinear_tail: node-thinning self-check failed; store snapshots on a finer stride");
    }
  }
  return full;
}

namespace {

double auto_control_dt(const MomentSystem& system, double T) {
  const double wmax = std::max(system.max_frequency(), 1.0);
  double dt = kTwoPi / wmax / 64.0;
  dt = std::min(dt, T / 128.0);
  const double max_steps = 4.0e6;
  if (T / dt > max_steps) dt = T / max_steps;
  return dt;
}

}  // namespace

PicardReport picard_local_control(const FourierField& u0, const FourierField& u1,
                                  const ControlProfile& profile, const MomentSystem& system,
                                  PicardOptions opts) {
  if (u0.modes() != u1.modes())
    throw invalid_argument("picard_local_control: u0 and u1 must share a truncation");
  const double scale = std::max({1.0, sobolev_norm(u0, 0.0), sobolev_norm(u1, 0.0)});
  if (std::abs(mean_value(u0) - mean_value(u1)) > 1e-12 * scale)
    throw invalid_argument("picard_local_control: [u0] must equal [u1]");

  const int N = u0.modes();
  const double T = system.horizon();
  const double dt = opts.dt > 0.0 ? opts.dt : auto_control_dt(system, T);

  PicardReport rep;
  rep.smallness_ok = std::max(sobolev_norm(u0, 0.0), sobolev_norm(u1, 0.0)) <= opts.smallness_delta;

  ReachVerifier verifier(system, profile, N);

  auto make_signal = [&](const FourierField& target) {
    ControlSignal sig = synthesize_control(u0, target, profile, system);
    if (opts.refine) sig = verifier.refine(u0, target, sig);
    return sig;
  };

  ControlSignal sig = make_signal(u1);
  const FourierField u1N = u1.truncated(N);

  for (int it = 1; it <= opts.max_iter; ++it) {
    const ForcingFn f = control_forcing(sig, system, profile, N);
    SimulateOptions sopts;
    sopts.snapshot_stride = opts.snapshot_stride;
    const Trajectory traj = simulate(u0, T, dt, f, sopts);
    const double res = sobolev_norm(traj.back() - u1N, 0.0);
    rep.residual_history.push_back(res);
    rep.iterations = it;
    rep.final_control = sig;
    rep.final_residual = res;
    if (res <= opts.tol) {
      rep.converged = true;
      break;
    }
    if (it == opts.max_iter) break;
    const FourierField tail = duhamel_nonlinear_tail(traj, T);
    FourierField target = u1N;
    target += tail;
    sig = make_signal(target);
  }
  return rep;
}

namespace {

struct DampedLeg {
  FourierField end;
  double duration;
  double gap;
  bool reached;
};

DampedLeg damp_to_mean(const FourierField& start, const ControlProfile& profile, double tol,
                       double chunk_T, double max_T, double dt) {
  const double mu = mean_value(start);
  const FourierField offset = FourierField::constant(start.order(), start.modes(), mu);
  FourierField u = start;
  double t = 0.0;
  double gap = sobolev_norm(u - offset, 0.0);
  while (gap > tol && t < max_T) {
    SimulateOptions sopts;
    sopts.snapshot_stride = 1000000;  // endpoints only
    const Trajectory chunk =
        closed_loop_nonlinear(u, profile, FeedbackMode::kSimpleDamping, 0.0, chunk_T, dt, sopts);
    u = chunk.back();
    t += chunk_T;
    gap = sobolev_norm(u - offset, 0.0);
  }
  return {u, t, gap, gap <= tol};
}

// Verification leg where v follows the anti-damped loop autonomously and u
// is driven open-loop by f(t) = GG* v(t). One Lawson RK4 on the stacked pair
// keeps u's stage forcings consistent with v's stages (genuine 4th order).
class CoupledReturnStepper {
 public:
  CoupledReturnStepper(int j, int N, const Eigen::MatrixXcd& B2full)
      : j_(j), N_(N), B2_(B2full), grid_(GridSpec::for_modes(N)) {}

  void step(FourierField& u, FourierField& v, double dt) {
    prepare(dt);
    FourierField k1u(j_, N_), k1v(j_, N_);
    rhs(u, v, k1u, k1v);

    FourierField ua = shifted(u, 0.5 * dt, k1u, true);
    FourierField va = shifted(v, 0.5 * dt, k1v, true);
    FourierField k2u(j_, N_), k2v(j_, N_);
    rhs(ua, va, k2u, k2v);

    FourierField ub = half_then_add(u, 0.5 * dt, k2u);
    FourierField vb = half_then_add(v, 0.5 * dt, k2v);
    FourierField k3u(j_, N_), k3v(j_, N_);
    rhs(ub, vb, k3u, k3v);

    FourierField uc = full_then_add(u, dt, k3u);
    FourierField vc = full_then_add(v, dt, k3v);
    FourierField k4u(j_, N_), k4v(j_, N_);
    rhs(uc, vc, k4u, k4v);

    combine(u, dt, k1u, k2u, k3u, k4u);
    combine(v, dt, k1v, k2v, k3v, k4v);
  }

 private:
  void prepare(double dt) {
    if (dt == dt_) return;
    dt_ = dt;
    const std::size_t dim = static_cast<std::size_t>(2 * N_ + 1);
    half_.resize(dim);
    full_.resize(dim);
    for (int k = -N_; k <= N_; ++k) {
      const double w = dispersion_phase(j_, k);
      half_[static_cast<std::size_t>(k + N_)] = std::polar(1.0, 0.5 * dt * w);
      full_[static_cast<std::size_t>(k + N_)] = std::polar(1.0, dt * w);
    }
  }

  FourierField damping(const FourierField& w) const {
    Eigen::VectorXcd x(2 * N_ + 1);
    for (int k = -N_; k <= N_; ++k) x(k + N_) = w.coeff(k);
    const Eigen::VectorXcd y = B2_ * x;
    FourierField out(j_, N_);
    for (int k = -N_; k <= N_; ++k) out.set_coeff(k, y(k + N_));
    return out;
  }

  FourierField quadratic(const FourierField& w) const {
    const std::vector<double> s = synthesize(w, grid_);
    std::vector<double> sq(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) sq[i] = s[i] * s[i];
    const FourierField w2 = analyze(sq, j_, N_);
    FourierField out(j_, N_);
    for (int k = -N_; k <= N_; ++k)
      out.set_coeff(k, cplx{0.0, -0.5 * static_cast<double>(k)} * w2.coeff(k));
    return out;
  }

  void rhs(const FourierField& u, const FourierField& v, FourierField& du,
           FourierField& dv) const {
    const FourierField drive = damping(v);  // +GG* v on both equations
    du = quadratic(u);
    du += drive;
    dv = quadratic(v);
    dv += drive;
  }

  FourierField shifted(const FourierField& y, double a, const FourierField& k, bool) const {
    FourierField out = y;
    auto& r = out.raw();
    const auto& kr = k.raw();
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = half_[i] * (r[i] + a * kr[i]);
    return out;
  }
  FourierField half_then_add(const FourierField& y, double a, const FourierField& k) const {
    FourierField out = y;
    auto& r = out.raw();
    const auto& kr = k.raw();
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = half_[i] * r[i] + a * kr[i];
    return out;
  }
  FourierField full_then_add(const FourierField& y, double a, const FourierField& k) const {
    FourierField out = y;
    auto& r = out.raw();
    const auto& kr = k.raw();
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = full_[i] * r[i] + a * half_[i] * kr[i];
    return out;
  }
  void combine(FourierField& y, double dt, const FourierField& k1, const FourierField& k2,
               const FourierField& k3, const FourierField& k4) const {
    auto& r = y.raw();
    const auto& a = k1.raw();
    const auto& b = k2.raw();
    const auto& c = k3.raw();
    const auto& d = k4.raw();
    for (std::size_t i = 0; i < r.size(); ++i)
      r[i] = full_[i] * r[i] +
             dt / 6.0 * (full_[i] * a[i] + 2.0 * half_[i] * (b[i] + c[i]) + d[i]);
  }

  int j_;
  int N_;
  Eigen::MatrixXcd B2_;
  GridSpec grid_;
  double dt_ = -1.0;
  std::vector<cplx> half_, full_;
};

}  // namespace

GlobalControlReport global_control_experiment(const FourierField& u0, const FourierField& u1,
                                              const ControlProfile& profile,
                                              GlobalControlOptions opts) {
  GlobalControlReport rep;
  const double scale = std::max({1.0, sobolev_norm(u0, 0.0), sobolev_norm(u1, 0.0)});
  if (std::abs(mean_value(u0) - mean_value(u1)) > 1e-12 * scale)
    throw invalid_argument("global_control_experiment: [u0] must equal [u1]");
  if (u0.modes() != u1.modes() || u0.order() != u1.order())
    throw invalid_argument("global_control_experiment: state spaces differ");

  const int j = u0.order();
  const int N = u0.modes();
  const double mu = mean_value(u0);

  // phase 1: damp the start state towards its mean
  const DampedLeg leg0 = damp_to_mean(u0, profile, opts.stabilize_tol, opts.chunk_T,
                                      opts.max_phase_T, opts.dt_damping);
  rep.T1 = leg0.duration;
  rep.damped_gap0 = leg0.gap;
  if (!leg0.reached) {
    rep.failed_phase = "stabilize-start";
    return rep;
  }

  // phase 2: damp the reflected target with the reflected profile; the
  // mirror of that run is the anti-damped return path ending at u1
  const ControlProfile mirror = profile.reflected();
  const DampedLeg leg1 = damp_to_mean(reflect(u1), mirror, opts.stabilize_tol, opts.chunk_T,
                                      opts.max_phase_T, opts.dt_damping);
  rep.T2 = leg1.duration;
  rep.damped_gap1 = leg1.gap;
  if (!leg1.reached) {
    rep.failed_phase = "stabilize-target";
    return rep;
  }
  const FourierField tilde_u1 = reflect(leg1.end);

  // phase 3: local bridge between the two small states
  MomentSystem system(j, opts.T_local, symmetric_mode_set(opts.mode_cut));
  rep.picard = picard_local_control(leg0.end, tilde_u1, profile, system, opts.picard);
  if (!rep.picard.converged) {
    rep.failed_phase = "local-control";
    return rep;
  }

  // free-flow reversal round trip (symmetry self-test at this resolution)
  {
    const double Tr = 1.0;
    SimulateOptions sopts;
    sopts.snapshot_stride = 1000000;
    const Trajectory fwd = simulate(u1, Tr, opts.dt_damping, nullptr, sopts);
    const Trajectory back = simulate(reflect(fwd.back()), Tr, opts.dt_damping, nullptr, sopts);
    rep.reversal_defect = sobolev_norm(reflect(back.back()) - u1, 0.0);
  }

  // phase 4 + un-cut verification: replay damping, the bridge control, and
  // the mirrored return leg in one forward run
  SimulateOptions sopts;
  sopts.snapshot_stride = opts.path_stride;

  Trajectory verif = closed_loop_nonlinear(u0, profile, FeedbackMode::kSimpleDamping, 0.0,
                                           rep.T1, opts.dt_damping, sopts);
  FourierField u = verif.back();

  {  // bridge segment under the converged open-loop control
    const ForcingFn f = control_forcing(rep.picard.final_control, system, profile, N);
    const double dt = opts.picard.dt > 0.0 ? opts.picard.dt : auto_control_dt(system, opts.T_local);
    const Trajectory seg = simulate(u, opts.T_local, dt, f, sopts);
    for (std::size_t i = 1; i < seg.size(); ++i) {
      verif.times.push_back(rep.T1 + seg.times[i]);
      verif.states.push_back(seg.states[i]);
    }
    u = seg.back();
  }

  {  // return leg
    FourierField v = tilde_u1;
    const Eigen::MatrixXcd B = compressed_G(profile, N);
    CoupledReturnStepper stepper(j, N, B * B);
    const double Tleg = rep.T2;
    long long steps = static_cast<long long>(std::llround(Tleg / opts.dt_damping));
    if (steps < 1) steps = 1;
    const double hh = Tleg / static_cast<double>(steps);
    for (long long s = 0; s < steps; ++s) {
      stepper.step(u, v, hh);
      if (!u.all_finite() || !v.all_finite())
        throw blow_up_error("global control: return leg blew up", hh * static_cast<double>(s));
      if ((s + 1) % opts.path_stride == 0 || s + 1 == steps) {
        verif.times.push_back(rep.T1 + opts.T_local + hh * static_cast<double>(s + 1));
        verif.states.push_back(u);
      }
    }
    rep.return_gap = sobolev_norm(v - u1.truncated(N), 0.0);
  }

  rep.T_total = rep.T1 + opts.T_local + rep.T2;
  rep.final_residual_l2 = sobolev_norm(u - u1.truncated(N), 0.0);
  rep.final_residual_hs = sobolev_norm(u - u1.truncated(N), 1.0);
  rep.verification = std::move(verif);
  rep.ok = true;
  (void)mu;
  return rep;
}

}  // namespace hokdv
