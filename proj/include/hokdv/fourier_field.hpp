#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "hokdv/fft.hpp"

namespace hokdv {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;
inline constexpr double kSqrt2Pi = 2.5066282746310005024157652848110;

/// Truncated Fourier representation of a real function on the circle in the
/// orthonormal basis phi_k(x) = e^{ikx}/sqrt(2*pi):
///
///   u(x) = sum_{|k|<=N} c_k phi_k(x),   c_{-k} = conj(c_k).
///
/// order_j is the dispersion order (the j in d_x^{2j+1}); it rides along with
/// the state because the evolution symbol depends on it.
class FourierField {
 public:
  FourierField(int order_j, int trunc_N);
  FourierField(int order_j, int trunc_N, std::vector<cplx> coeffs);

  int order() const { return j_; }
  int modes() const { return N_; }
  std::size_t size() const { return coeffs_.size(); }  // 2N+1

  /// Coefficient of phi_k; zero outside the truncation.
  cplx coeff(int k) const {
    return (k < -N_ || k > N_) ? cplx{0.0, 0.0} : coeffs_[static_cast<std::size_t>(k + N_)];
  }
  void set_coeff(int k, cplx v);

  const std::vector<cplx>& raw() const { return coeffs_; }
  std::vector<cplx>& raw() { return coeffs_; }

  /// Max deviation from c_{-k} = conj(c_k).
  double hermitian_defect() const;
  /// Projects onto the Hermitian (real-field) part.
  void enforce_hermitian();

  bool all_finite() const;

  FourierField truncated(int new_N) const;

  FourierField& operator+=(const FourierField& o);
  FourierField& operator-=(const FourierField& o);
  FourierField& operator*=(double s);
  friend FourierField operator+(FourierField a, const FourierField& b) { return a += b; }
  friend FourierField operator-(FourierField a, const FourierField& b) { return a -= b; }
  friend FourierField operator*(double s, FourierField a) { return a *= s; }

  /// phi_k basis field (complex; pair with phi_{-k} for a real field).
  static FourierField basis(int order_j, int trunc_N, int k, cplx amplitude = {1.0, 0.0});
  /// cos(k x) as a real field.
  static FourierField cosine(int order_j, int trunc_N, int k, double amplitude = 1.0);
  static FourierField constant(int order_j, int trunc_N, double value);

 private:
  int j_;
  int N_;
  std::vector<cplx> coeffs_;  // index k+N
};

/// Uniform collocation grid x_m = 2*pi*m/M. M must be a power of two,
/// at least 2*(2N+1) and 3N+1, so quadratic products de-alias exactly.
struct GridSpec {
  std::size_t num_points;
  explicit GridSpec(std::size_t M) : num_points(M) {}
  static GridSpec for_modes(int N, std::size_t min_points = 0);
  void validate_for(int N) const;
};

/// Real samples of u on the grid.
std::vector<double> synthesize(const FourierField& u, const GridSpec& grid);

/// Recovers coefficients |k| <= N from samples; inverse of synthesize on
/// band-limited inputs up to round-off.
FourierField analyze(const std::vector<double>& samples, int order_j, int N);

/// Free evolution u -> W(t)u: coefficient k picks up e^{i t k^{2j+1}}.
FourierField propagate(const FourierField& u, double t);

/// H^s norm: (sum <k>^{2s} |c_k|^2)^{1/2}, <k> = (1+k^2)^{1/2}.
double sobolev_norm(const FourierField& u, double s);

/// [u] = (1/2pi) * integral of u.
double mean_value(const FourierField& u);

struct ConservedQuantities {
  double mass;         // integral u
  double energy;       // integral u^2
  double hamiltonian;  // integral (1/2)(d_x^j u)^2 - (1/6) u^3
};

/// The cubic term is evaluated by collocation on a de-aliased grid; the
/// quadratic pieces come from Parseval and are exact.
ConservedQuantities conserved_quantities(const FourierField& u);

/// L2 inner product (u, v) via Parseval.
cplx inner_product(const FourierField& u, const FourierField& v);

/// x -> -x. A solution reflected this way traces the time-reversed flow.
FourierField reflect(const FourierField& u);

}  // namespace hokdv
