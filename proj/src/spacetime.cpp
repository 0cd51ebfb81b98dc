#include "hokdv/spacetime.hpp"

#include <cmath>

#include "hokdv/dispersion.hpp"
#include "hokdv/errors.hpp"
#include "hokdv/fft.hpp"

namespace hokdv {

SpaceTimeSample::SpaceTimeSample(int j, int N, std::size_t M_t, double t_span)
    : j_(j), N_(N), Mt_(M_t), t_span_(t_span) {
  if (j < 1 || N < 1) throw invalid_argument("SpaceTimeSample: bad dimensions");
  if (M_t < 8) throw invalid_argument("SpaceTimeSample: need at least 8 tau samples");
  if (!(t_span > 0.0)) throw invalid_argument("SpaceTimeSample: span must be positive");
  offset_.assign(static_cast<std::size_t>(2 * N + 1), 0);
  // default: bands centered on the characteristic
  for (int k = -N; k <= N; ++k)
    offset_[static_cast<std::size_t>(k + N)] =
        static_cast<long long>(std::llround(dispersion_phase(j, k) / dtau()));
  v_ = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(M_t), 2 * N + 1);
}

double SpaceTimeSample::tau_at(int k, std::size_t i) const {
  const long long rel = static_cast<long long>(i) - static_cast<long long>(Mt_ / 2);
  return dtau() * static_cast<double>(offset_[static_cast<std::size_t>(k + N_)] + rel);
}

Eigen::MatrixXcd SpaceTimeSample::physical_samples(std::size_t t_eval, std::size_t x_eval) const {
  if (!is_pow2(t_eval) || !is_pow2(x_eval))
    throw invalid_argument("physical_samples: grids must be powers of two");
  if (t_eval < Mt_) throw invalid_argument("physical_samples: t grid smaller than the band");
  if (x_eval < static_cast<std::size_t>(2 * N_ + 1))
    throw invalid_argument("physical_samples: x grid too small");

  const double t0 = -0.5 * t_span_;
  Eigen::MatrixXcd mode_t(static_cast<Eigen::Index>(t_eval), 2 * N_ + 1);
  std::vector<cplx> buf(t_eval);

  for (int k = -N_; k <= N_; ++k) {
    std::fill(buf.begin(), buf.end(), cplx{0.0, 0.0});
    const long long base = offset_[static_cast<std::size_t>(k + N_)] -
                           static_cast<long long>(Mt_ / 2);
    for (std::size_t i = 0; i < Mt_; ++i) {
      const long long q = base + static_cast<long long>(i);
      const long long slot =
          ((q % static_cast<long long>(t_eval)) + static_cast<long long>(t_eval)) %
          static_cast<long long>(t_eval);
      // phase referencing the window start, so row m is time t0 + m dt
      buf[static_cast<std::size_t>(slot)] +=
          value(i, k) * std::polar(1.0, dtau() * static_cast<double>(q) * t0);
    }
    fft_pow2(buf, +1);
    for (std::size_t m = 0; m < t_eval; ++m)
      mode_t(static_cast<Eigen::Index>(m), k + N_) = buf[m] / t_span_;
  }

  Eigen::MatrixXcd out(static_cast<Eigen::Index>(t_eval), static_cast<Eigen::Index>(x_eval));
  std::vector<cplx> xbuf(x_eval);
  for (std::size_t m = 0; m < t_eval; ++m) {
    std::fill(xbuf.begin(), xbuf.end(), cplx{0.0, 0.0});
    for (int k = -N_; k <= N_; ++k) {
      const long long slot = ((k % static_cast<long long>(x_eval)) +
                              static_cast<long long>(x_eval)) %
                             static_cast<long long>(x_eval);
      xbuf[static_cast<std::size_t>(slot)] += mode_t(static_cast<Eigen::Index>(m), k + N_);
    }
    fft_pow2(xbuf, +1);
    for (std::size_t l = 0; l < x_eval; ++l)
      out(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(l)) = xbuf[l];
  }
  return out;
}

double SpaceTimeSample::parseval_defect() const {
  const std::size_t xg = next_pow2(static_cast<std::size_t>(2 * N_ + 1));
  const Eigen::MatrixXcd f = physical_samples(next_pow2(Mt_), xg);
  const double dt = t_span_ / static_cast<double>(f.rows());
  const double dx = kTwoPi / static_cast<double>(f.cols());
  const double phys = f.cwiseAbs2().sum() * dt * dx;
  const double spec = v_.cwiseAbs2().sum() * dtau();
  return std::abs(phys - spec) / std::max(spec, 1e-300);
}

double discrete_xsb_norm(const SpaceTimeSample& sample, double s, double b) {
  if (sample.dtau() > 1.0 + 1e-12)
    throw accuracy_error(
        "discrete_xsb_norm: tau lattice coarser than the modulation weight scale; enlarge t_span");
  const std::size_t Mt = sample.time_samples();
  const std::size_t edge = std::max<std::size_t>(1, Mt / 20);

  double acc = 0.0;
  for (int k = -sample.modes(); k <= sample.modes(); ++k) {
    double mode_total = 0.0, edge_total = 0.0;
    double mode_acc = 0.0;
    const double wk = dispersion_phase(sample.order(), k);
    const double ks = std::pow(1.0 + static_cast<double>(k) * static_cast<double>(k), s);
    for (std::size_t i = 0; i < Mt; ++i) {
      const double a2 = std::norm(sample.value(i, k));
      mode_total += a2;
      if (i < edge || i >= Mt - edge) edge_total += a2;
      const double sig = sample.tau_at(k, i) - wk;
      const double w_trap = (i == 0 || i == Mt - 1) ? 0.5 : 1.0;
      mode_acc += w_trap * ks * std::pow(1.0 + sig * sig, b) * a2;
    }
    if (mode_total > 1e-30 && edge_total > 1e-6 * mode_total)
      throw accuracy_error("discrete_xsb_norm: band for mode " + std::to_string(k) +
                           " clips its content; widen the tau band");
    acc += mode_acc;
  }
  return std::sqrt(acc * sample.dtau());
}

double l4_norm(const SpaceTimeSample& sample, double self_check_tol) {
  const std::size_t xg =
      next_pow2(static_cast<std::size_t>(4 * sample.modes() + 2));
  auto quad = [&](std::size_t tg) {
    const Eigen::MatrixXcd f = sample.physical_samples(tg, xg);
    const double dt = sample.span() / static_cast<double>(f.rows());
    const double dx = kTwoPi / static_cast<double>(f.cols());
    double acc = 0.0;
    for (Eigen::Index m = 0; m < f.rows(); ++m)
      for (Eigen::Index l = 0; l < f.cols(); ++l) {
        const double a2 = std::norm(f(m, l));
        acc += a2 * a2;
      }
    return std::pow(acc * dt * dx, 0.25);
  };
  const std::size_t tg = next_pow2(std::max<std::size_t>(8 * sample.time_samples(), 1024));
  const double coarse = quad(tg);
  const double fine = quad(2 * tg);
  if (std::abs(fine - coarse) > self_check_tol * std::max(fine, 1e-300))
    throw accuracy_error("l4_norm: quadrature self-check failed; beat frequencies unresolved");
  return fine;
}

double hann_window(double t) {
  if (std::abs(t) >= 1.0) return 0.0;
  const double c = std::cos(0.5 * std::numbers::pi * t);
  return c * c;
}

double hann_window_transform(double sigma) {
  const double pi = std::numbers::pi;
  if (std::abs(sigma) < 1e-8) {
    // series around 0 of sin(s) pi^2 / (s (pi^2 - s^2))
    const double s2 = sigma * sigma;
    return 1.0 + s2 * (1.0 / (pi * pi) - 1.0 / 6.0);
  }
  if (std::abs(std::abs(sigma) - pi) < 1e-8) return 0.5;
  return std::sin(sigma) * pi * pi / (sigma * (pi * pi - sigma * sigma));
}

SpaceTimeSample windowed_tone(int j, int N, int k0, double tau0, std::size_t M_t,
                              double t_span) {
  SpaceTimeSample s(j, N, M_t, t_span);
  s.set_offset(k0, static_cast<long long>(std::llround(tau0 / s.dtau())));
  for (std::size_t i = 0; i < M_t; ++i)
    s.set_value(i, k0, cplx{hann_window_transform(s.tau_at(k0, i) - tau0), 0.0});
  return s;
}

SpaceTimeSample windowed_free_solution(int j, const FourierField& u0, std::size_t M_t,
                                       double t_span) {
  SpaceTimeSample s(j, u0.modes(), M_t, t_span);
  for (int k = -u0.modes(); k <= u0.modes(); ++k) {
    const cplx a = u0.coeff(k) / kSqrt2Pi;
    if (a == cplx{0.0, 0.0}) continue;
    const double wk = dispersion_phase(j, k);
    for (std::size_t i = 0; i < M_t; ++i)
      s.set_value(i, k, a * hann_window_transform(s.tau_at(k, i) - wk));
  }
  return s;
}

double window_weight_integral(double b, double sigma_max, double dsigma) {
  double acc = 0.0;
  const long long n = static_cast<long long>(sigma_max / dsigma);
  for (long long i = -n; i <= n; ++i) {
    const double sig = dsigma * static_cast<double>(i);
    const double h = hann_window_transform(sig);
    const double w = (i == -n || i == n) ? 0.5 : 1.0;
    acc += w * std::pow(1.0 + sig * sig, b) * h * h;
  }
  return acc * dsigma;
}

}  // namespace hokdv
