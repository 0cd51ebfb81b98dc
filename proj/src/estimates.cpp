#include "hokdv/estimates.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "hokdv/errors.hpp"
#include "hokdv/rng.hpp"

namespace hokdv {

GapCheckResult check_gap(int j, long long k_max) {
  if (k_max < j + 1) throw invalid_argument("check_gap: k_max must be >= j+1");
  for (long long a = j + 1; a <= k_max; ++a) {
    for (long long k : {a, -a}) {
      const WideInt gap = eigenvalue_gap(j, k);
      if (gap < WideInt(k) * WideInt(k)) return {false, k};
    }
  }
  return {true, 0};
}

double hj_eval(int j, double c, double x) {
  if (!(c > 0.0)) throw invalid_argument("hj_eval: c must be positive");
  if (j < 0) throw invalid_argument("hj_eval: j must be >= 0");
  return std::pow(x, 2 * j + 1) + std::pow(c - x, 2 * j + 1);
}

namespace {

double binom(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// h_{j}(c/2) = 2 (c/2)^{2j+1}
double hj_at_center(int j, double c) { return 2.0 * std::pow(0.5 * c, 2 * j + 1); }

double rel_err(double got, double want, double scale) {
  return std::abs(got - want) / std::max({1e-300, std::abs(want), scale});
}

}  // namespace

HjSuiteReport hj_identity_suite(int j, int trials, std::uint64_t seed, double rel_tol) {
  if (j < 1) throw invalid_argument("hj_identity_suite: j must be >= 1");
  Rng rng(seed);
  HjSuiteReport rep;
  rep.trials = trials;

  for (int t = 0; t < trials; ++t) {
    const double c = rng.uniform(0.1, 4.0);
    const double x = rng.uniform(-1.5 * c, 2.5 * c);
    const double alpha = rng.uniform(-2.0, 2.0);
    const double hx = hj_eval(j, c, x);

    auto check = [&](int slot, double got, double want, double scale) {
      const double e = rel_err(got, want, scale);
      rep.worst_rel_error = std::max(rep.worst_rel_error, e);
      if (e > rel_tol) ++rep.failures[static_cast<std::size_t>(slot)];
    };

    // (1) symmetry about c/2
    check(0, hj_eval(j, c, 0.5 * c + (x - 0.5 * c)), hj_eval(j, c, 0.5 * c - (x - 0.5 * c)),
          std::abs(hx));
    // (2) positivity
    if (!(hx > 0.0)) ++rep.failures[1];
    // (3) stationary center: (2j+1)(x^{2j} - (c-x)^{2j}) at x = c/2
    {
      const double d = (2.0 * j + 1.0) *
                       (std::pow(0.5 * c, 2 * j) - std::pow(c - 0.5 * c, 2 * j));
      check(2, d, 0.0, std::pow(0.5 * c, 2 * j) * (2.0 * j + 1.0));
    }
    // (4) convexity
    {
      const double dd = (2.0 * j + 1.0) * (2.0 * j) *
                        (std::pow(x, 2 * j - 1) + std::pow(c - x, 2 * j - 1));
      if (!(dd > 0.0)) ++rep.failures[3];
    }
    // (5) global minimum at the center
    if (hx + rel_tol * std::abs(hx) < hj_at_center(j, c)) ++rep.failures[4];
    // (6) even-power expansion around c/2
    {
      double acc = 0.0, scale = 0.0;
      for (int n = 0; n <= j; ++n) {
        const double term = binom(2 * j + 1, 2 * n) * hj_at_center(j - n, c) *
                            std::pow(x - 0.5 * c, 2 * n);
        acc += term;
        scale += std::abs(term);
      }
      check(5, acc, hx, scale);
    }
    // (7) factored form with a free alpha
    {
      const double y = x - 0.5 * c;
      double poly = 0.0, tail = 0.0, scale = 0.0;
      for (int n = 1; n <= j; ++n) {
        double inner = 0.0;
        for (int l = 0; l <= n - 1; ++l)
          inner += std::pow(y, 2 * (n - 1 - l)) * std::pow(alpha, 2 * l);
        const double coef = binom(2 * j + 1, 2 * n) * hj_at_center(j - n, c);
        poly += coef * inner;
        scale += std::abs(coef * inner);
      }
      for (int n = 0; n <= j; ++n)
        tail += binom(2 * j + 1, 2 * n) * hj_at_center(j - n, c) * std::pow(alpha, 2 * n);
      const double got = (y + alpha) * (y - alpha) * poly + tail;
      check(6, got, hx, scale * std::abs((y + alpha) * (y - alpha)) + std::abs(tail));
    }
    // (8) telescoping power identity, n = 1..j
    {
      const double y = x - 0.5 * c;
      for (int n = 1; n <= j; ++n) {
        double inner = 0.0;
        for (int l = 0; l <= n - 1; ++l)
          inner += std::pow(y, 2 * (n - 1 - l)) * std::pow(alpha, 2 * l);
        const double got = (y + alpha) * (y - alpha) * inner + std::pow(alpha, 2 * n);
        check(7, got, std::pow(y, 2 * n), std::abs(inner) * (y * y + alpha * alpha));
      }
    }
  }
  return rep;
}

Rational strichartz_b_threshold(int j) { return {j + 1, 2 * (2 * j + 1)}; }

bool strichartz_b_admissible(const Rational& b, int j) {
  const Rational th = strichartz_b_threshold(j);
  return b.num * th.den > th.num * b.den;
}

Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  if (slash != std::string::npos) {
    const long long num = std::stoll(text.substr(0, slash));
    const long long den = std::stoll(text.substr(slash + 1));
    if (den == 0) throw invalid_argument("parse_rational: zero denominator");
    return {num, den};
  }
  const auto dot = text.find('.');
  if (dot == std::string::npos) return {std::stoll(text), 1};
  const std::string frac = text.substr(dot + 1);
  long long den = 1;
  for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
  const long long whole = dot == 0 ? 0 : std::stoll(text.substr(0, dot));
  const long long num = whole * den + (frac.empty() ? 0 : std::stoll(frac));
  return {num, den};
}

namespace {

// count integers within distance 1 of center, restricted to [lo, hi]
int window_count(double center, long long lo, long long hi) {
  const long long a = std::max(lo, static_cast<long long>(std::ceil(center - 1.0)));
  const long long b = std::min(hi, static_cast<long long>(std::floor(center + 1.0)));
  return static_cast<int>(std::max<long long>(0, b - a + 1));
}

// positive alpha with sum_n binom(2j+1,2n) h_{j-n}(k/2) alpha^{2n} = tau
// (exists iff tau exceeds the center value); monotone, so bisection is safe
bool resonance_root(int j, double k, double tau, double* alpha_out) {
  const double center = 2.0 * std::pow(0.5 * k, 2 * j + 1);
  if (!(tau > center)) return false;
  auto eval = [&](double b2) {  // b2 = alpha^2
    double acc = 0.0;
    for (int n = 0; n <= j; ++n)
      acc += binom(2 * j + 1, 2 * n) * 2.0 * std::pow(0.5 * k, 2 * (j - n) + 1) *
             std::pow(b2, n);
    return acc;
  };
  double lo = 0.0, hi = 1.0;
  while (eval(hi) < tau && hi < 1e300) hi *= 2.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (eval(mid) < tau ? lo : hi) = mid;
  }
  *alpha_out = std::sqrt(0.5 * (lo + hi));
  return true;
}

}  // namespace

StrichartzSumResult strichartz_sum(int j, double b, double tau, long long k, long long k1_max) {
  if (!(b > 0.25)) throw invalid_argument("strichartz_sum: need b > 1/4");
  if (k <= 1) throw invalid_argument("strichartz_sum: need k > 1");
  StrichartzSumResult res;
  const double expo = 1.0 - 4.0 * b;

  const long long lo = 2;
  const long long hi = std::min<long long>(k - 2, k1_max);

  for (long long k1 = lo; k1 <= hi; ++k1) {
    const double h = dispersion_phase(j, k1) + dispersion_phase(j, k - k1);
    const double a = tau - h;
    res.value += std::pow(1.0 + a * a, 0.5 * expo);
  }

  res.set_a_count = window_count(0.5 * static_cast<double>(k), lo, hi);
  double alpha = 0.0;
  if (resonance_root(j, static_cast<double>(k), tau, &alpha)) {
    res.omega_minus_count = window_count(0.5 * static_cast<double>(k) - alpha, lo, hi);
    res.omega_plus_count = window_count(0.5 * static_cast<double>(k) + alpha, lo, hi);
  }
  return res;
}

SupMScanResult sup_m_scan(int j, double b, double tau_range, long long k_max,
                          int coarse_tau_points) {
  if (k_max < 4) throw invalid_argument("sup_m_scan: k_max must be >= 4");
  SupMScanResult out;
  auto consider = [&](long long k, double tau) {
    if (std::abs(tau) > tau_range) return;
    const StrichartzSumResult r = strichartz_sum(j, b, tau, k, k_max);
    if (r.value > out.sup) {
      out.sup = r.value;
      out.arg_tau = tau;
      out.arg_k = k;
    }
    out.max_set_a = std::max(out.max_set_a, r.set_a_count);
    out.max_omega = std::max({out.max_omega, r.omega_plus_count, r.omega_minus_count});
  };

  for (long long k = 4; k <= k_max; ++k) {
    // terms peak where tau hits the lattice of h_j(k1) values
    std::set<double> taus;
    for (long long k1 = 2; k1 <= k - 2; ++k1) {
      const double h = dispersion_phase(j, k1) + dispersion_phase(j, k - k1);
      taus.insert(h);
      taus.insert(h + 0.5);
      taus.insert(h - 0.5);
    }
    for (double tau : taus) consider(k, tau);
    for (int i = 0; i < coarse_tau_points; ++i) {
      const double tau = -tau_range + 2.0 * tau_range * i / (coarse_tau_points - 1);
      consider(k, tau);
    }
  }
  return out;
}

}  // namespace hokdv
