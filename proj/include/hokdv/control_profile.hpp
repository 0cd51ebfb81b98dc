#pragma once

#include <complex>
#include <string>
#include <vector>

#include "hokdv/fourier_field.hpp"

namespace hokdv {

enum class ProfileShape { kConstant, kRaisedCosine };

std::string to_string(ProfileShape s);
ProfileShape profile_shape_from_string(const std::string& s);

/// Localization profile g of the mean-preserving control operator
///   G h = g * (h - integral(g*h)),
/// nonnegative, smooth, with integral(g) = 1. Two shapes are supported:
/// g == 1/(2pi) on the whole circle, and the raised-cosine bump
///   g(x) = (1/|w|) * (1 - cos(2pi (x-a)/|w|)) on w = (a, a+|w|), 0 elsewhere.
///
/// All spectral algebra (products, beta_k, coupling matrix) runs on the
/// band-limited truncation |n| <= profile_modes() of the nominal profile, so
/// the collocation and coefficient routes agree to round-off. Pointwise
/// checks (nonnegativity) use the nominal closed form.
class ControlProfile {
 public:
  static ControlProfile build(double omega_start, double omega_len, ProfileShape shape,
                              int n_modes = 64);

  ProfileShape shape() const { return shape_; }
  double omega_start() const { return a_; }
  double omega_len() const { return len_; }
  int profile_modes() const { return Ng_; }

  /// Fourier coefficient g_n (zero outside |n| <= profile_modes()).
  cplx coeff(int n) const;

  /// Closed-form pointwise value of the nominal profile.
  double sample_nominal(double x) const;

  /// Value of the band-limited truncation at x.
  double sample_truncated(double x) const;

  /// integral of g^2 for the nominal profile (closed form).
  double nominal_l2_squared() const;
  /// sum |g_n|^2 over the stored band (Parseval for the truncated profile).
  double truncated_l2_squared() const;

  /// min over a verification grid of the nominal profile (>= -1e-12 expected).
  double min_on_grid(std::size_t grid_points = 4096) const;

  /// 2*pi*[g]; equals 1 by construction.
  double normalization() const { return kSqrt2Pi * coeff(0).real(); }

  /// Fitted constant C = max_n |g_n| <n>^8 over the stored band. Reported,
  /// not asserted: the raised-cosine tail decays like n^-3, so the bound only
  /// means anything as a fit over the range actually used.
  double smoothness_fit_constant() const;

  /// Profile of the reflected control region, g~(x) = g(-x).
  ControlProfile reflected() const;

 private:
  ControlProfile() = default;
  ProfileShape shape_ = ProfileShape::kConstant;
  double a_ = 0.0;
  double len_ = kTwoPi;
  int Ng_ = 0;
  std::vector<cplx> g_;  // index n+Ng
};

}  // namespace hokdv
