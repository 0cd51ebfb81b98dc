#include "hokdv/fourier_field.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hokdv/dispersion.hpp"
#include "hokdv/errors.hpp"

namespace hokdv {

FourierField::FourierField(int order_j, int trunc_N)
    : j_(order_j), N_(trunc_N), coeffs_(static_cast<std::size_t>(2 * trunc_N + 1)) {
  if (order_j < 1) throw invalid_argument("FourierField: order j must be >= 1");
  if (trunc_N < 1) throw invalid_argument("FourierField: truncation N must be >= 1");
}

FourierField::FourierField(int order_j, int trunc_N, std::vector<cplx> coeffs)
    : FourierField(order_j, trunc_N) {
  if (coeffs.size() != coeffs_.size())
    throw invalid_argument("FourierField: coefficient vector must have 2N+1 entries");
  coeffs_ = std::move(coeffs);
}

void FourierField::set_coeff(int k, cplx v) {
  if (k < -N_ || k > N_) throw invalid_argument("FourierField::set_coeff: mode out of range");
  coeffs_[static_cast<std::size_t>(k + N_)] = v;
}

double FourierField::hermitian_defect() const {
  double worst = 0.0;
  for (int k = 0; k <= N_; ++k)
    worst = std::max(worst, std::abs(coeff(-k) - std::conj(coeff(k))));
  return worst;
}

void FourierField::enforce_hermitian() {
  for (int k = 1; k <= N_; ++k) {
    const cplx avg = 0.5 * (coeff(k) + std::conj(coeff(-k)));
    set_coeff(k, avg);
    set_coeff(-k, std::conj(avg));
  }
  set_coeff(0, cplx{coeff(0).real(), 0.0});
}

bool FourierField::all_finite() const {
  for (const cplx& c : coeffs_)
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
  return true;
}

FourierField FourierField::truncated(int new_N) const {
  FourierField out(j_, new_N);
  const int m = std::min(N_, new_N);
  for (int k = -m; k <= m; ++k) out.set_coeff(k, coeff(k));
  return out;
}

FourierField& FourierField::operator+=(const FourierField& o) {
  if (o.N_ != N_) throw invalid_argument("FourierField: truncation mismatch");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  return *this;
}

FourierField& FourierField::operator-=(const FourierField& o) {
  if (o.N_ != N_) throw invalid_argument("FourierField: truncation mismatch");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  return *this;
}

FourierField& FourierField::operator*=(double s) {
  for (cplx& c : coeffs_) c *= s;
  return *this;
}

FourierField FourierField::basis(int order_j, int trunc_N, int k, cplx amplitude) {
  FourierField f(order_j, trunc_N);
  f.set_coeff(k, amplitude);
  return f;
}

FourierField FourierField::cosine(int order_j, int trunc_N, int k, double amplitude) {
  FourierField f(order_j, trunc_N);
  f.set_coeff(k, amplitude * kSqrt2Pi / 2.0);
  f.set_coeff(-k, amplitude * kSqrt2Pi / 2.0);
  return f;
}

FourierField FourierField::constant(int order_j, int trunc_N, double value) {
  FourierField f(order_j, trunc_N);
  f.set_coeff(0, value * kSqrt2Pi);
  return f;
}

GridSpec GridSpec::for_modes(int N, std::size_t min_points) {
  const std::size_t need = std::max<std::size_t>(
      {static_cast<std::size_t>(2 * (2 * N + 1)), static_cast<std::size_t>(3 * N + 1),
       min_points, 8});
  return GridSpec(next_pow2(need));
}

void GridSpec::validate_for(int N) const {
  if (!is_pow2(num_points))
    throw invalid_argument("GridSpec: number of points must be a power of two");
  if (num_points < static_cast<std::size_t>(2 * N + 1))
    throw invalid_argument("GridSpec: grid too small for the requested modes (aliasing)");
}

std::vector<double> synthesize(const FourierField& u, const GridSpec& grid) {
  grid.validate_for(u.modes());
  const std::size_t M = grid.num_points;
  std::vector<cplx> spec(M, cplx{0.0, 0.0});
  for (int k = -u.modes(); k <= u.modes(); ++k) {
    const std::size_t slot = static_cast<std::size_t>((k % static_cast<int>(M) + static_cast<int>(M)) % static_cast<int>(M));
    spec[slot] += u.coeff(k) / kSqrt2Pi;
  }
  fft_pow2(spec, +1);
  std::vector<double> out(M);
  for (std::size_t m = 0; m < M; ++m) out[m] = spec[m].real();
  return out;
}

FourierField analyze(const std::vector<double>& samples, int order_j, int N) {
  const std::size_t M = samples.size();
  if (!is_pow2(M)) throw invalid_argument("analyze: sample count must be a power of two");
  if (M < static_cast<std::size_t>(2 * N + 1))
    throw invalid_argument("analyze: grid too small for the requested modes (aliasing)");
  std::vector<cplx> spec(M);
  for (std::size_t m = 0; m < M; ++m) spec[m] = cplx{samples[m], 0.0};
  fft_pow2(spec, -1);
  FourierField out(order_j, N);
  const double scale = kSqrt2Pi / static_cast<double>(M);
  for (int k = -N; k <= N; ++k) {
    const std::size_t slot = static_cast<std::size_t>((k % static_cast<int>(M) + static_cast<int>(M)) % static_cast<int>(M));
    out.set_coeff(k, scale * spec[slot]);
  }
  return out;
}

FourierField propagate(const FourierField& u, double t) {
  FourierField out(u.order(), u.modes());
  for (int k = -u.modes(); k <= u.modes(); ++k) {
    // dispersion_power range-checks the symbol before it becomes a phase
    const double w = static_cast<double>(dispersion_power(u.order(), k));
    out.set_coeff(k, u.coeff(k) * std::polar(1.0, t * w));
  }
  return out;
}

double sobolev_norm(const FourierField& u, double s) {
  double acc = 0.0;
  for (int k = -u.modes(); k <= u.modes(); ++k) {
    const double kk = static_cast<double>(k);
    acc += std::pow(1.0 + kk * kk, s) * std::norm(u.coeff(k));
  }
  return std::sqrt(acc);
}

double mean_value(const FourierField& u) { return u.coeff(0).real() / kSqrt2Pi; }

ConservedQuantities conserved_quantities(const FourierField& u) {
  ConservedQuantities q{};
  q.mass = kSqrt2Pi * u.coeff(0).real();

  double energy = 0.0, grad = 0.0;
  for (int k = -u.modes(); k <= u.modes(); ++k) {
    const double a = std::norm(u.coeff(k));
    energy += a;
    grad += std::pow(static_cast<double>(k), 2.0 * u.order()) * a;
  }
  q.energy = energy;

  const GridSpec grid = GridSpec::for_modes(u.modes());
  const std::vector<double> s = synthesize(u, grid);
  double cubic = 0.0;
  for (double v : s) cubic += v * v * v;
  cubic *= kTwoPi / static_cast<double>(grid.num_points);

  q.hamiltonian = 0.5 * grad - cubic / 6.0;
  return q;
}

cplx inner_product(const FourierField& u, const FourierField& v) {
  cplx acc{0.0, 0.0};
  const int m = std::min(u.modes(), v.modes());
  for (int k = -m; k <= m; ++k) acc += u.coeff(k) * std::conj(v.coeff(k));
  return acc;
}

FourierField reflect(const FourierField& u) {
  FourierField out(u.order(), u.modes());
  for (int k = -u.modes(); k <= u.modes(); ++k) out.set_coeff(k, u.coeff(-k));
  return out;
}

}  // namespace hokdv
