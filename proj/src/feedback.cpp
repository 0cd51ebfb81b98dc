#include "hokdv/feedback.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <numbers>
#include <string>

#include "hokdv/control_operator.hpp"
#include "hokdv/dispersion.hpp"
#include "hokdv/errors.hpp"

namespace hokdv {

namespace {

// mean-zero index map: k in -N..-1 -> k+N, k in 1..N -> k+N-1
int mz_index(int k, int N) { return k < 0 ? k + N : k + N - 1; }

Eigen::MatrixXcd compressed_G_squared_mean_zero(const ControlProfile& profile, int j, int N) {
  Eigen::MatrixXcd B = compressed_G(profile, N);
  Eigen::MatrixXcd B2full = B * B;
  Eigen::MatrixXcd out(2 * N, 2 * N);
  for (int k = -N; k <= N; ++k) {
    if (k == 0) continue;
    for (int m = -N; m <= N; ++m) {
      if (m == 0) continue;
      out(mz_index(m, N), mz_index(k, N)) = B2full(m + N, k + N);
    }
  }
  (void)j;
  return out;
}

}  // namespace

FeedbackGain::FeedbackGain(const ControlProfile& profile, int j, int N, double lambda)
    : j_(j), N_(N), lambda_(lambda) {
  if (lambda < 0.0) throw invalid_argument("FeedbackGain: lambda must be >= 0");
  B2_ = compressed_G_squared_mean_zero(profile, j, N);

  const int dim = 2 * N;
  if (lambda == 0.0) {
    L_ = Eigen::MatrixXcd::Identity(dim, dim);
    lmin_ = 1.0;
    K_ = B2_;
  } else {
    // L(m,k) = (GG*)(m,k) * int_0^1 e^{-2 lambda tau} e^{i(w_k - w_m) tau} dtau,
    // the tau integral in closed form
    L_.resize(dim, dim);
    for (int k = -N; k <= N; ++k) {
      if (k == 0) continue;
      const double wk = dispersion_phase(j, k);
      for (int m = -N; m <= N; ++m) {
        if (m == 0) continue;
        const double d = wk - dispersion_phase(j, m);
        const cplx a{-2.0 * lambda, d};
        const cplx I = (std::exp(a) - cplx{1.0, 0.0}) / a;
        L_(mz_index(m, N), mz_index(k, N)) = B2_(mz_index(m, N), mz_index(k, N)) * I;
      }
    }
    L_ = 0.5 * (L_ + L_.adjoint().eval());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(L_);
    lmin_ = es.eigenvalues().minCoeff();
    if (!(lmin_ > 0.0))
      throw accuracy_error("FeedbackGain: L_lambda lost positive definiteness (min eig " +
                           std::to_string(lmin_) + ")");
    K_ = B2_ * L_.ldlt().solve(Eigen::MatrixXcd::Identity(dim, dim));
  }
}

Eigen::MatrixXcd FeedbackGain::closed_loop_generator() const {
  Eigen::MatrixXcd M = -K_;
  for (int k = -N_; k <= N_; ++k) {
    if (k == 0) continue;
    M(mz_index(k, N_), mz_index(k, N_)) += cplx{0.0, dispersion_phase(j_, k)};
  }
  return M;
}

Eigen::VectorXcd FeedbackGain::to_mean_zero(const FourierField& u) const {
  Eigen::VectorXcd v(2 * N_);
  for (int k = -N_; k <= N_; ++k) {
    if (k == 0) continue;
    v(mz_index(k, N_)) = u.coeff(k);
  }
  return v;
}

FourierField FeedbackGain::from_mean_zero(const Eigen::VectorXcd& v, double mean) const {
  FourierField u(j_, N_);
  for (int k = -N_; k <= N_; ++k) {
    if (k == 0) continue;
    u.set_coeff(k, v(mz_index(k, N_)));
  }
  u.set_coeff(0, cplx{mean * kSqrt2Pi, 0.0});
  return u;
}

FourierField apply_K_lambda(const FeedbackGain& gain, const FourierField& u) {
  if (u.modes() != gain.modes())
    throw invalid_argument("apply_K_lambda: field truncation does not match the gain");
  const Eigen::VectorXcd v = gain.to_mean_zero(u);
  const Eigen::VectorXcd w = gain.K_matrix() * v;
  return gain.from_mean_zero(w, 0.0);
}

Eigen::MatrixXcd feedback_L_quadrature(const ControlProfile& profile, int j, int N,
                                       double lambda, int start_nodes, int max_nodes) {
  const Eigen::MatrixXcd B2 = compressed_G_squared_mean_zero(profile, j, N);
  const int dim = 2 * N;

  std::vector<double> w(static_cast<std::size_t>(dim));
  for (int k = -N; k <= N; ++k) {
    if (k == 0) continue;
    w[static_cast<std::size_t>(mz_index(k, N))] = dispersion_phase(j, k);
  }

  auto assemble = [&](int nodes) {
    // Gauss-Legendre on [0,1]
    Eigen::MatrixXcd L = Eigen::MatrixXcd::Zero(dim, dim);
    std::vector<double> x(static_cast<std::size_t>(nodes)), wt(static_cast<std::size_t>(nodes));
    for (int i = 0; i < nodes; ++i) {
      double t = std::cos(std::numbers::pi * (i + 0.75) / (nodes + 0.5));
      double p0 = 1.0, p1 = t, dp = 0.0;
      for (int it = 0; it < 100; ++it) {
        p0 = 1.0;
        p1 = t;
        for (int kk = 2; kk <= nodes; ++kk) {
          const double p2 = ((2.0 * kk - 1.0) * t * p1 - (kk - 1.0) * p0) / kk;
          p0 = p1;
          p1 = p2;
        }
        dp = nodes * (t * p1 - p0) / (t * t - 1.0);
        const double dt = p1 / dp;
        t -= dt;
        if (std::abs(dt) < 1e-15) break;
      }
      x[static_cast<std::size_t>(i)] = 0.5 * (t + 1.0);
      wt[static_cast<std::size_t>(i)] = 1.0 / ((1.0 - t * t) * dp * dp);
    }
    for (int i = 0; i < nodes; ++i) {
      const double tau = x[static_cast<std::size_t>(i)];
      const double weight = wt[static_cast<std::size_t>(i)] * std::exp(-2.0 * lambda * tau);
      for (int c = 0; c < dim; ++c)
        for (int r = 0; r < dim; ++r)
          L(r, c) += weight * B2(r, c) *
                     std::polar(1.0, (w[static_cast<std::size_t>(c)] - w[static_cast<std::size_t>(r)]) * tau);
    }
    return L;
  };

  Eigen::MatrixXcd prev = assemble(start_nodes);
  for (int nodes = 2 * start_nodes; nodes <= max_nodes; nodes *= 2) {
    Eigen::MatrixXcd cur = assemble(nodes);
    if ((cur - prev).cwiseAbs().maxCoeff() <= 1e-10) return cur;
    prev = cur;
  }
  throw accuracy_error(
      "feedback_L_quadrature: node doubling did not converge; the integrand oscillates at ~2 N^{2j+1} "
      "- use more nodes or a smaller N");
}

Trajectory closed_loop_linear_simulate(const FourierField& u0, const FeedbackGain& gain,
                                       double T, double dt, int snapshot_stride) {
  if (!(dt > 0.0)) throw invalid_argument("closed_loop_linear_simulate: dt must be positive");
  if (u0.modes() != gain.modes())
    throw invalid_argument("closed_loop_linear_simulate: u0 truncation does not match the gain");

  const Eigen::MatrixXcd Estep = (gain.closed_loop_generator() * dt).exp();
  const double mean = mean_value(u0);

  Trajectory traj;
  Eigen::VectorXcd v = gain.to_mean_zero(u0);
  long long steps = static_cast<long long>(std::llround(T / dt));
  if (steps < 1) steps = 1;

  traj.times.push_back(0.0);
  traj.states.push_back(u0);
  for (long long s = 1; s <= steps; ++s) {
    v = Estep * v;
    if (s % snapshot_stride == 0 || s == steps) {
      traj.times.push_back(dt * static_cast<double>(s));
      traj.states.push_back(gain.from_mean_zero(v, mean));
    }
  }
  return traj;
}

DecayFit decay_rate_estimate(const Trajectory& traj) {
  if (traj.size() < 10)
    throw invalid_argument("decay_rate_estimate: need at least 10 samples");
  const double mean0 = mean_value(traj.front());
  const FourierField offset =
      FourierField::constant(traj.front().order(), traj.front().modes(), mean0);

  DecayFit fit;
  std::vector<double> ts, ys;
  for (std::size_t i = traj.size() / 2; i < traj.size(); ++i) {
    const double n = sobolev_norm(traj.states[i] - offset, 0.0);
    if (n <= 1e-300) {
      fit.window_truncated = true;
      break;
    }
    ts.push_back(traj.times[i]);
    ys.push_back(std::log(n));
  }
  if (ts.size() < 2) throw invalid_argument("decay_rate_estimate: window collapsed");

  const double n = static_cast<double>(ts.size());
  double st = 0.0, sy = 0.0, stt = 0.0, sty = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    st += ts[i];
    sy += ys[i];
    stt += ts[i] * ts[i];
    sty += ts[i] * ys[i];
    syy += ys[i] * ys[i];
  }
  const double denom = n * stt - st * st;
  const double slope = (n * sty - st * sy) / denom;
  fit.gamma = -slope;
  const double ss_tot = syy - sy * sy / n;
  const double intercept = (sy - slope * st) / n;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const double r = ys[i] - (intercept + slope * ts[i]);
    ss_res += r * r;
  }
  fit.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
  return fit;
}

namespace {

// composite Simpson on uniform samples; 3/8 block absorbs an odd interval count
double integrate_samples(const std::vector<double>& t, const std::vector<double>& f) {
  const std::size_t n = t.size();
  if (n < 2) return 0.0;
  const double h = (t.back() - t.front()) / static_cast<double>(n - 1);
  std::size_t intervals = n - 1;
  double acc = 0.0;
  std::size_t i = 0;
  if (intervals % 2 == 1) {
    if (intervals >= 3) {
      acc += 3.0 * h / 8.0 * (f[0] + 3.0 * f[1] + 3.0 * f[2] + f[3]);
      i = 3;
      intervals -= 3;
    } else {
      return 0.5 * h * (f[0] + f[1]);
    }
  }
  for (; i + 2 < n; i += 2) acc += h / 3.0 * (f[i] + 4.0 * f[i + 1] + f[i + 2]);
  return acc;
}

std::vector<double> damping_samples(const Trajectory& traj, const ControlProfile& profile) {
  const int N = traj.front().modes();
  const Eigen::MatrixXcd B = compressed_G(profile, N);
  std::vector<double> g;
  g.reserve(traj.size());
  for (const FourierField& u : traj.states) {
    Eigen::VectorXcd v(2 * N + 1);
    for (int k = -N; k <= N; ++k) v(k + N) = u.coeff(k);
    g.push_back((B * v).squaredNorm());
  }
  return g;
}

}  // namespace

double damping_integral(const Trajectory& traj, const ControlProfile& profile) {
  return integrate_samples(traj.times, damping_samples(traj, profile));
}

double energy_balance_defect(const Trajectory& traj, const ControlProfile& profile) {
  const double e0 = sobolev_norm(traj.front(), 0.0);
  const double eT = sobolev_norm(traj.back(), 0.0);
  return std::abs(eT * eT - e0 * e0 + damping_integral(traj, profile));
}

double spectral_abscissa(const Eigen::MatrixXcd& generator) {
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(generator, false);
  return es.eigenvalues().real().maxCoeff();
}

}  // namespace hokdv
