#include "hokdv/moment_control.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <string>

#include "hokdv/dispersion.hpp"
#include "hokdv/errors.hpp"

namespace hokdv {

namespace {

// Legendre nodes on [-1,1] by Newton iteration.
std::vector<double> gauss_legendre_nodes(int n) {
  std::vector<double> x(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    double t = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = t;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      const double dp = n * (t * p1 - p0) / (t * t - 1.0);
      const double dt = p1 / dp;
      t -= dt;
      if (std::abs(dt) < 1e-15) break;
    }
    x[static_cast<std::size_t>(n - 1 - i)] = t;
  }
  return x;
}

// I_p(z) = int_{-1}^{1} s^p e^{-z s} ds for p = 0..pmax.
void exp_monomial_integrals(cplx z, int pmax, std::vector<cplx>& out) {
  out.assign(static_cast<std::size_t>(pmax + 1), cplx{0.0, 0.0});
  if (std::abs(z) < 2.0) {
    // series: I_p = sum_m (-z)^m/m! * 2/(p+m+1), p+m even
    for (int p = 0; p <= pmax; ++p) {
      cplx term{1.0, 0.0};  // (-z)^m / m!
      cplx acc{0.0, 0.0};
      for (int m = 0; m <= 40; ++m) {
        if ((p + m) % 2 == 0) acc += term * (2.0 / (p + m + 1));
        term *= -z / static_cast<double>(m + 1);
      }
      out[static_cast<std::size_t>(p)] = acc;
    }
    return;
  }
  const cplx ep = std::exp(z);
  const cplx em = std::exp(-z);
  out[0] = (ep - em) / z;
  for (int p = 1; p <= pmax; ++p) {
    const double sgn = (p % 2 == 0) ? 1.0 : -1.0;
    out[static_cast<std::size_t>(p)] = (sgn * ep - em) / z + (static_cast<double>(p) / z) * out[static_cast<std::size_t>(p - 1)];
  }
}

double mode_frequency(int j, int k) { return dispersion_phase(j, k); }

}  // namespace

std::vector<int> symmetric_mode_set(int n_c) {
  if (n_c < 1) throw invalid_argument("mode set bound must be >= 1");
  std::vector<int> modes;
  modes.reserve(static_cast<std::size_t>(2 * n_c));
  for (int k = -n_c; k < 0; ++k) modes.push_back(k);
  for (int k = 1; k <= n_c; ++k) modes.push_back(k);
  return modes;
}

Eigen::MatrixXcd gram_matrix(int j, double T, const std::vector<int>& mode_set) {
  if (!(T > 0.0)) throw invalid_argument("gram_matrix: horizon must be positive");
  const int K = static_cast<int>(mode_set.size());
  std::vector<double> w(static_cast<std::size_t>(K));
  for (int i = 0; i < K; ++i) {
    if (mode_set[static_cast<std::size_t>(i)] == 0)
      throw invalid_argument("gram_matrix: mode set must exclude 0");
    w[static_cast<std::size_t>(i)] = mode_frequency(j, mode_set[static_cast<std::size_t>(i)]);
  }
  Eigen::MatrixXcd G(K, K);
  for (int m = 0; m < K; ++m) {
    for (int k = 0; k < K; ++k) {
      const double d = w[static_cast<std::size_t>(k)] - w[static_cast<std::size_t>(m)];
      if (d == 0.0) {
        G(m, k) = cplx{T, 0.0};
      } else {
        G(m, k) = (std::polar(1.0, d * T) - cplx{1.0, 0.0}) / cplx{0.0, d};
      }
    }
  }
  return G;
}

Eigen::MatrixXcd dual_basis(const Eigen::MatrixXcd& gram, double cond_threshold,
                            double* cond_out) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (gram + gram.adjoint()));
  const double lo = es.eigenvalues().minCoeff();
  const double hi = es.eigenvalues().maxCoeff();
  const double cond = (lo > 0.0) ? hi / lo : std::numeric_limits<double>::infinity();
  if (cond_out) *cond_out = cond;
  if (!(lo > 0.0) || cond > cond_threshold)
    throw ill_posed_horizon_error(
        "dual_basis: Gram condition estimate " + std::to_string(cond) +
        " above threshold; enlarge the horizon T or shrink the mode set");
  // rows C(r,.) with C * gram^T = I
  const Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(gram.rows(), gram.cols());
  Eigen::MatrixXcd Ct = gram.transpose().partialPivLu().solve(I);
  return Ct.transpose();
}

MomentSystem::MomentSystem(int j, double T, std::vector<int> mode_set, double cond_threshold)
    : j_(j), T_(T), modes_(std::move(mode_set)) {
  if (j < 1) throw invalid_argument("MomentSystem: order must be >= 1");
  for (int k : modes_)
    if (index_of(-k) < 0)
      throw invalid_argument("MomentSystem: mode set must be symmetric about 0");
  freq_.resize(modes_.size());
  for (std::size_t i = 0; i < modes_.size(); ++i) freq_[i] = mode_frequency(j_, modes_[i]);
  gram_ = gram_matrix(j_, T_, modes_);
  dual_ = dual_basis(gram_, cond_threshold, &cond_);

  // conjugation symmetry C(-k,-m) = conj(C(k,m)) holds analytically; pinning
  // it keeps synthesized controls exactly real-valued
  const int K = mode_count();
  for (int r = 0; r < K; ++r) {
    const int rn = index_of(-modes_[static_cast<std::size_t>(r)]);
    for (int m = 0; m < K; ++m) {
      const int mn = index_of(-modes_[static_cast<std::size_t>(m)]);
      const cplx avg = 0.5 * (dual_(r, m) + std::conj(dual_(rn, mn)));
      dual_(r, m) = avg;
      dual_(rn, mn) = std::conj(avg);
    }
  }
  biortho_residual_ = (dual_ * gram_.transpose() - Eigen::MatrixXcd::Identity(K, K))
                          .cwiseAbs()
                          .maxCoeff();
}

int MomentSystem::index_of(int k) const {
  const auto it = std::find(modes_.begin(), modes_.end(), k);
  return it == modes_.end() ? -1 : static_cast<int>(it - modes_.begin());
}

cplx MomentSystem::dual_value(int idx, double t) const {
  cplx acc{0.0, 0.0};
  for (int m = 0; m < mode_count(); ++m)
    acc += dual_(idx, m) * std::polar(1.0, freq_[static_cast<std::size_t>(m)] * t);
  return acc;
}

Eigen::VectorXcd MomentSystem::mode_phases(double t) const {
  Eigen::VectorXcd v(mode_count());
  for (int m = 0; m < mode_count(); ++m)
    v(m) = std::polar(1.0, freq_[static_cast<std::size_t>(m)] * t);
  return v;
}

double MomentSystem::max_frequency() const {
  double m = 0.0;
  for (double f : freq_) m = std::max(m, std::abs(f));
  return m;
}

namespace {

double signal_space_time_norm(const MomentSystem& system, const ControlProfile& profile,
                              const Eigen::VectorXcd& h, double s) {
  const int K = system.mode_count();
  const Eigen::MatrixXcd Q =
      system.dual_coeffs() * system.gram().transpose() * system.dual_coeffs().adjoint();
  int n_max = profile.profile_modes();
  for (int k : system.mode_set()) n_max = std::max(n_max, std::abs(k) + profile.profile_modes());
  double acc = 0.0;
  Eigen::VectorXcd v(K);
  for (int n = -n_max; n <= n_max; ++n) {
    for (int i = 0; i < K; ++i)
      v(i) = h(i) * coupling_matrix(profile, system.mode_set()[static_cast<std::size_t>(i)], n);
    const cplx q = v.transpose() * Q * v.conjugate();
    const double nn = 1.0 + static_cast<double>(n) * static_cast<double>(n);
    acc += std::pow(nn, s) * q.real();
  }
  return std::sqrt(std::max(0.0, acc));
}

}  // namespace

ControlSignal synthesize_control(const FourierField& u0, const FourierField& u1,
                                 const ControlProfile& profile, const MomentSystem& system,
                                 double sobolev_s) {
  if (sobolev_s < 0.0)
    throw invalid_argument("synthesize_control: only s >= 0 is supported");
  const double n0 = sobolev_norm(u0, 0.0), n1 = sobolev_norm(u1, 0.0);
  const double scale = std::max({1.0, n0, n1});
  if (std::abs(mean_value(u0) - mean_value(u1)) > 1e-12 * scale)
    throw invalid_argument("synthesize_control: [u0] must equal [u1] (mass is uncontrollable)");

  ControlSignal sig;
  sig.mode_set = system.mode_set();
  sig.sobolev_s = sobolev_s;
  sig.coeffs.resize(system.mode_count());

  const double T = system.horizon();
  for (int i = 0; i < system.mode_count(); ++i) {
    const int k = system.mode_set()[static_cast<std::size_t>(i)];
    const double bk = beta(profile, k);
    if (bk < 1e-15)
      throw degenerate_profile_error("synthesize_control: beta_" + std::to_string(k) +
                                     " below positivity floor");
    const cplx back = std::polar(1.0, -system.dispersion_frequency(i) * T);
    sig.coeffs(i) = (back * u1.coeff(k) - u0.coeff(k)) / bk;
  }

  // energy of the data outside the controllable set (mode 0 excluded: it is
  // matched by the mean precondition)
  double tail = 0.0, total = 0.0;
  for (const FourierField* f : {&u0, &u1}) {
    for (int k = -f->modes(); k <= f->modes(); ++k) {
      if (k == 0) continue;
      const double a = std::norm(f->coeff(k));
      total += a;
      if (system.index_of(k) < 0) tail += a;
    }
  }
  sig.target_tail_fraction = total > 0.0 ? std::sqrt(tail / total) : 0.0;
  sig.l2hs_norm = signal_space_time_norm(system, profile, sig.coeffs, sobolev_s);
  return sig;
}

FourierField evaluate_control(const ControlSignal& signal, const MomentSystem& system,
                              const ControlProfile& profile, double t, int out_N) {
  if (t < -1e-12 || t > system.horizon() + 1e-12)
    throw invalid_argument("evaluate_control: t outside [0, T]");
  FourierField h(system.order(), out_N);
  for (int i = 0; i < system.mode_count(); ++i) {
    const cplx w = signal.coeffs(i) * system.dual_value(i, t);
    if (w == cplx{0.0, 0.0}) continue;
    const int k = system.mode_set()[static_cast<std::size_t>(i)];
    for (int n = -out_N; n <= out_N; ++n)
      h.set_coeff(n, h.coeff(n) + w * coupling_matrix(profile, k, n));
  }
  return h;
}

ReachVerifier::ReachVerifier(const MomentSystem& system, const ControlProfile& profile,
                             int out_N, ReachOptions opts)
    : system_(system), profile_(profile), out_N_(out_N), opts_(opts) {
  const int K = system.mode_count();
  const int nodes = opts_.nodes_per_panel;
  if (nodes < 2 || nodes > 16)
    throw invalid_argument("ReachVerifier: nodes per panel must lie in [2,16]");

  const double T = system.horizon();
  const double lam_max = std::max(system.max_frequency(), 1.0);
  const double target_len = kTwoPi / (opts_.oversample * lam_max);
  std::size_t P = static_cast<std::size_t>(std::ceil(T / target_len));
  P = std::max<std::size_t>(P, 4);
  if (P > opts_.max_panels)
    throw accuracy_error(
        "ReachVerifier: panel count " + std::to_string(P) +
        " exceeds the budget; reduce the mode set, the horizon, or the oversampling");
  panels_ = P;
  panel_len_ = T / static_cast<double>(P);

  out_freq_.resize(static_cast<std::size_t>(out_N_ + 1));
  for (int n = 0; n <= out_N_; ++n)
    out_freq_[static_cast<std::size_t>(n)] = dispersion_phase(system.order(), n);

  g2_.resize(2 * out_N_ + 1, K);
  for (int i = 0; i < K; ++i)
    g2_.col(i) = coupling_squared_column(profile, system.mode_set()[static_cast<std::size_t>(i)], out_N_);

  // Filon weights: per output mode n, nodal weights w s.t.
  // sum_i w_i s_i^p = int_0^panel s(sigma)^p e^{-i w_n sigma} dsigma.
  const std::vector<double> s_nodes = gauss_legendre_nodes(nodes);
  Eigen::MatrixXcd V(nodes, nodes);
  for (int p = 0; p < nodes; ++p)
    for (int i = 0; i < nodes; ++i)
      V(p, i) = cplx{std::pow(s_nodes[static_cast<std::size_t>(i)], p), 0.0};
  const auto Vlu = V.partialPivLu();

  Eigen::MatrixXcd W(nodes, out_N_ + 1);  // Filon weights per output mode
  std::vector<cplx> mono;
  for (int n = 0; n <= out_N_; ++n) {
    const cplx z = cplx{0.0, out_freq_[static_cast<std::size_t>(n)] * panel_len_ / 2.0};
    exp_monomial_integrals(z, nodes - 1, mono);
    Eigen::VectorXcd mu(nodes);
    const cplx pref = 0.5 * panel_len_ * std::exp(-z);
    for (int p = 0; p < nodes; ++p) mu(p) = pref * mono[static_cast<std::size_t>(p)];
    W.col(n) = Vlu.solve(mu);
  }

  // requested path snapshots -> panel boundaries
  if (opts_.path_points > 0) {
    const std::size_t stride = std::max<std::size_t>(1, P / static_cast<std::size_t>(opts_.path_points));
    for (std::size_t p = stride; p < P; p += stride) path_panels_.push_back(p);
  }

  // node offsets within a panel and per-mode node phase table
  std::vector<double> sigma(static_cast<std::size_t>(nodes));
  for (int i = 0; i < nodes; ++i)
    sigma[static_cast<std::size_t>(i)] = panel_len_ * (s_nodes[static_cast<std::size_t>(i)] + 1.0) / 2.0;
  Eigen::MatrixXcd node_tab(K, nodes);
  for (int m = 0; m < K; ++m)
    for (int i = 0; i < nodes; ++i)
      node_tab(m, i) = std::polar(1.0, system.dispersion_frequency(m) * sigma[static_cast<std::size_t>(i)]);

  J_ = Eigen::MatrixXcd::Zero(K, out_N_ + 1);

  const std::size_t block = 256;
  Eigen::MatrixXcd E(K, block * static_cast<std::size_t>(nodes));
  Eigen::MatrixXcd Pmat(block * static_cast<std::size_t>(nodes), out_N_ + 1);

  std::size_t next_snapshot = 0;
  std::size_t p0 = 0;
  while (p0 < P) {
    std::size_t p1 = std::min(P, p0 + block);
    if (next_snapshot < path_panels_.size())
      p1 = std::min(p1, path_panels_[next_snapshot]);
    const std::size_t nb = p1 - p0;
    const Eigen::Index cols = static_cast<Eigen::Index>(nb) * nodes;

    for (int m = 0; m < K; ++m) {
      const double wm = system.dispersion_frequency(m);
      cplx ph = std::polar(1.0, wm * panel_len_ * static_cast<double>(p0));
      const cplx step = std::polar(1.0, wm * panel_len_);
      for (std::size_t p = 0; p < nb; ++p) {
        for (int i = 0; i < nodes; ++i)
          E(m, static_cast<Eigen::Index>(p) * nodes + i) = ph * node_tab(m, i);
        ph *= step;
      }
    }
    const Eigen::MatrixXcd Q = system_.dual_coeffs() * E.leftCols(cols);

    for (int n = 0; n <= out_N_; ++n) {
      const double wn = out_freq_[static_cast<std::size_t>(n)];
      cplx ph = std::polar(1.0, -wn * panel_len_ * static_cast<double>(p0));
      const cplx step = std::polar(1.0, -wn * panel_len_);
      for (std::size_t p = 0; p < nb; ++p) {
        for (int i = 0; i < nodes; ++i)
          Pmat(static_cast<Eigen::Index>(p) * nodes + i, n) = ph * W(i, n);
        ph *= step;
      }
    }
    J_ += Q * Pmat.topRows(cols);

    p0 = p1;
    if (next_snapshot < path_panels_.size() && p0 == path_panels_[next_snapshot]) {
      J_partial_.push_back(J_);
      ++next_snapshot;
    }
  }
}

cplx ReachVerifier::quadrature(int k_idx, int n) const {
  if (n >= 0) return J_(k_idx, n);
  const int k = system_.mode_set()[static_cast<std::size_t>(k_idx)];
  const int neg_idx = system_.index_of(-k);
  return std::conj(J_(neg_idx, -n));
}

namespace {

FourierField state_from_quadrature(const MomentSystem& system, const Eigen::MatrixXcd& g2,
                                   const std::function<cplx(int, int)>& J, int out_N,
                                   const FourierField& u0, const Eigen::VectorXcd& h,
                                   double t) {
  FourierField u(system.order(), out_N);
  for (int n = -out_N; n <= out_N; ++n) {
    cplx forced{0.0, 0.0};
    for (int i = 0; i < system.mode_count(); ++i)
      forced += h(i) * g2(n + out_N, i) * J(i, n);
    const cplx phase = std::polar(1.0, dispersion_phase(system.order(), n) * t);
    u.set_coeff(n, phase * (u0.coeff(n) + forced));
  }
  return u;
}

}  // namespace

ReachReport ReachVerifier::verify(const FourierField& u0, const ControlSignal& signal,
                                  const FourierField& u1, double sobolev_s) const {
  const auto Jfun = [this](int i, int n) { return quadrature(i, n); };
  ReachReport rep;
  rep.sobolev_s = sobolev_s;
  rep.terminal = state_from_quadrature(system_, g2_, Jfun, out_N_, u0, signal.coeffs,
                                       system_.horizon());
  FourierField diff = rep.terminal - u1.truncated(out_N_);
  rep.residual_l2 = sobolev_norm(diff, 0.0);
  rep.residual_hs = sobolev_norm(diff, sobolev_s);

  const double mean0 = mean_value(u0);
  double drift = std::abs(mean_value(rep.terminal) - mean0);
  for (std::size_t s = 0; s < J_partial_.size(); ++s) {
    const Eigen::MatrixXcd& Jp = J_partial_[s];
    const auto Jpart = [this, &Jp](int i, int n) -> cplx {
      if (n >= 0) return Jp(i, n);
      const int k = system_.mode_set()[static_cast<std::size_t>(i)];
      return std::conj(Jp(system_.index_of(-k), -n));
    };
    const double t = panel_len_ * static_cast<double>(path_panels_[s]);
    const FourierField ut =
        state_from_quadrature(system_, g2_, Jpart, out_N_, u0, signal.coeffs, t);
    rep.path.emplace_back(t, sobolev_norm(ut - u1.truncated(out_N_), 0.0));
    drift = std::max(drift, std::abs(mean_value(ut) - mean0));
  }
  rep.mean_drift = drift;
  return rep;
}

Eigen::MatrixXcd ReachVerifier::reach_matrix() const {
  const int K = system_.mode_count();
  Eigen::MatrixXcd R(2 * out_N_ + 1, K);
  const double T = system_.horizon();
  for (int n = -out_N_; n <= out_N_; ++n) {
    const cplx phase = std::polar(1.0, dispersion_phase(system_.order(), n) * T);
    for (int i = 0; i < K; ++i) R(n + out_N_, i) = phase * g2_(n + out_N_, i) * quadrature(i, n);
  }
  return R;
}

ControlSignal ReachVerifier::refine(const FourierField& u0, const FourierField& u1,
                                    const ControlSignal& base) const {
  const int K = system_.mode_count();
  const Eigen::MatrixXcd R = reach_matrix();
  Eigen::VectorXcd d(2 * out_N_ + 1);
  const double T = system_.horizon();
  for (int n = -out_N_; n <= out_N_; ++n) {
    const cplx phase = std::polar(1.0, dispersion_phase(system_.order(), n) * T);
    d(n + out_N_) = u1.coeff(n) - phase * u0.coeff(n);
  }

  // modes the input-to-state map cannot touch but the target needs
  const double dn = d.norm();
  const double row_ref = R.rowwise().norm().maxCoeff();
  std::vector<int> dead;
  for (int n = -out_N_; n <= out_N_; ++n) {
    if (n == 0) continue;
    if (R.row(n + out_N_).norm() < 1e-13 * row_ref && std::abs(d(n + out_N_)) > 1e-10 * dn)
      dead.push_back(n);
  }
  if (!dead.empty()) {
    std::string msg = "refine_control: target has mass on unreachable modes {";
    for (std::size_t i = 0; i < dead.size(); ++i)
      msg += (i ? "," : "") + std::to_string(dead[static_cast<std::size_t>(i)]);
    msg += "}";
    throw partial_controllability_error(msg, dead);
  }

  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(R, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  if (sv(sv.size() - 1) < 1e-12 * sv(0)) {
    std::vector<int> modes;
    throw partial_controllability_error(
        "refine_control: reachability matrix numerically rank-deficient", modes);
  }
  Eigen::VectorXcd h = svd.solve(d);

  // pin the Hermitian pairing so the refined control stays real-valued
  for (int i = 0; i < K; ++i) {
    const int ni = system_.index_of(-system_.mode_set()[static_cast<std::size_t>(i)]);
    const cplx avg = 0.5 * (h(i) + std::conj(h(ni)));
    h(i) = avg;
    h(ni) = std::conj(avg);
  }

  const double res_before = (R * base.coeffs - d).norm();
  const double res_after = (R * h - d).norm();
  if (res_after > res_before * (1.0 + 1e-12) + 1e-15)
    throw accuracy_error("refine_control: least-squares pass failed to reduce the residual");

  ControlSignal out = base;
  out.coeffs = h;
  out.l2hs_norm = signal_space_time_norm(system_, profile_, h, base.sobolev_s);
  return out;
}

ReachReport verify_reach(const FourierField& u0, const ControlSignal& signal,
                         const FourierField& u1, const MomentSystem& system,
                         const ControlProfile& profile, int out_N, ReachOptions opts) {
  return ReachVerifier(system, profile, out_N, opts).verify(u0, signal, u1);
}

ControlSignal refine_control(const FourierField& u0, const FourierField& u1,
                             const ControlSignal& signal, const MomentSystem& system,
                             const ControlProfile& profile, int out_N, ReachOptions opts) {
  return ReachVerifier(system, profile, out_N, opts).refine(u0, u1, signal);
}

}  // namespace hokdv
