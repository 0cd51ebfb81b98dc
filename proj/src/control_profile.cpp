#include "hokdv/control_profile.hpp"

#include <algorithm>
#include <cmath>

#include "hokdv/errors.hpp"

namespace hokdv {

std::string to_string(ProfileShape s) {
  return s == ProfileShape::kConstant ? "constant" : "raised_cosine";
}

ProfileShape profile_shape_from_string(const std::string& s) {
  if (s == "constant") return ProfileShape::kConstant;
  if (s == "raised_cosine") return ProfileShape::kRaisedCosine;
  throw invalid_argument("unknown profile shape: " + s);
}

namespace {

double wrap_angle(double x) {
  double y = std::fmod(x, kTwoPi);
  if (y < 0.0) y += kTwoPi;
  return y;
}

}  // namespace

ControlProfile ControlProfile::build(double omega_start, double omega_len, ProfileShape shape,
                                     int n_modes) {
  if (!(omega_len > 0.0) || omega_len > kTwoPi)
    throw invalid_argument("ControlProfile: support length must lie in (0, 2pi]");
  if (n_modes < 2) throw invalid_argument("ControlProfile: need at least 2 profile modes");

  ControlProfile p;
  p.shape_ = shape;
  p.Ng_ = n_modes;
  p.g_.assign(static_cast<std::size_t>(2 * n_modes + 1), cplx{0.0, 0.0});

  if (shape == ProfileShape::kConstant) {
    p.a_ = 0.0;
    p.len_ = kTwoPi;
    p.g_[static_cast<std::size_t>(n_modes)] = cplx{1.0 / kSqrt2Pi, 0.0};
    return p;
  }

  p.a_ = wrap_angle(omega_start);
  p.len_ = omega_len;
  const double L = omega_len;
  const double w = kTwoPi / L;  // interior cosine frequency
  const double c = 1.0 / L;     // normalization: integral g = c*L = 1

  // g_n = (c/sqrt(2pi)) e^{-i n a} * I_n with I_n = int_0^L (1-cos(w y)) e^{-i n y} dy.
  for (int n = -n_modes; n <= n_modes; ++n) {
    cplx In;
    const double nd = static_cast<double>(n);
    if (n == 0) {
      In = cplx{L, 0.0};
    } else if (std::abs(std::abs(nd) - w) < 1e-12) {
      // resonant case |n| = 2pi/L: only the cosine survives, giving -L/2
      In = cplx{-L / 2.0, 0.0};
    } else {
      const cplx one_minus_e = cplx{1.0, 0.0} - std::polar(1.0, -nd * L);
      In = one_minus_e / cplx{0.0, 1.0} * (w * w / (nd * (w * w - nd * nd)));
    }
    const cplx gn = (c / kSqrt2Pi) * std::polar(1.0, -nd * p.a_) * In;
    p.g_[static_cast<std::size_t>(n + n_modes)] = gn;
  }
  return p;
}

cplx ControlProfile::coeff(int n) const {
  if (n < -Ng_ || n > Ng_) return {0.0, 0.0};
  return g_[static_cast<std::size_t>(n + Ng_)];
}

double ControlProfile::sample_nominal(double x) const {
  if (shape_ == ProfileShape::kConstant) return 1.0 / kTwoPi;
  const double y = wrap_angle(x - a_);
  if (y >= len_) return 0.0;
  return (1.0 - std::cos(kTwoPi * y / len_)) / len_;
}

double ControlProfile::sample_truncated(double x) const {
  // real part of sum g_n e^{inx} / sqrt(2pi)
  double acc = coeff(0).real();
  for (int n = 1; n <= Ng_; ++n) {
    const cplx t = coeff(n) * std::polar(1.0, static_cast<double>(n) * x);
    acc += 2.0 * t.real();
  }
  return acc / kSqrt2Pi;
}

double ControlProfile::nominal_l2_squared() const {
  if (shape_ == ProfileShape::kConstant) return 1.0 / kTwoPi;
  return 1.5 / len_;  // c^2 * (3/2) L with c = 1/L
}

double ControlProfile::truncated_l2_squared() const {
  double acc = 0.0;
  for (const cplx& g : g_) acc += std::norm(g);
  return acc;
}

double ControlProfile::min_on_grid(std::size_t grid_points) const {
  double lo = sample_nominal(0.0);
  for (std::size_t m = 1; m < grid_points; ++m)
    lo = std::min(lo, sample_nominal(kTwoPi * static_cast<double>(m) / static_cast<double>(grid_points)));
  return lo;
}

double ControlProfile::smoothness_fit_constant() const {
  double c = 0.0;
  for (int n = -Ng_; n <= Ng_; ++n) {
    const double nn = 1.0 + static_cast<double>(n) * static_cast<double>(n);
    c = std::max(c, std::abs(coeff(n)) * std::pow(nn, 4.0));
  }
  return c;
}

ControlProfile ControlProfile::reflected() const {
  if (shape_ == ProfileShape::kConstant) return *this;
  // support (a, a+L) maps to (2pi - a - L, 2pi - a)
  return build(kTwoPi - a_ - len_, len_, shape_, Ng_);
}

}  // namespace hokdv
