#pragma once

// Uniform periodic grids, sampled functions and the discrete Fourier machinery.
//
// Every function handled by the library is modelled as a trigonometric polynomial on the
// torus [0, L)^dim sampled at N points per axis. On that class the DFT, spectral shifts and
// Fourier multipliers are exact, so difference operators and local means commute with the
// model. Frequencies are angular: integer mode k maps to xi = 2*pi*k/L.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "vbtl/detail/fft.hpp"
#include "vbtl/error.hpp"

namespace vbtl {

using Complex = std::complex<double>;
using RealField = std::vector<double>;
using ComplexField = std::vector<Complex>;
using Point = std::array<double, 2>;

/// Pairwise summation; deterministic and accurate to O(log n) roundings.
inline double pairwise_sum(std::span<const double> v) {
  if (v.size() <= 16) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  const std::size_t half = v.size() / 2;
  return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

class Grid {
 public:
  Grid(int dim, std::size_t points_per_axis, double period)
      : dim_(dim), n_(points_per_axis), period_(period) {
    if (dim != 1 && dim != 2) throw InvalidConfig("grid dim must be 1 or 2");
    if (n_ < 8 || (n_ & (n_ - 1)) != 0)
      throw InvalidConfig("grid points per axis must be a power of two >= 8, got " +
                          std::to_string(n_));
    if (!(period > 0.0) || !std::isfinite(period))
      throw InvalidConfig("grid period must be positive and finite");
  }

  int dim() const { return dim_; }
  std::size_t n() const { return n_; }
  double period() const { return period_; }
  std::size_t size() const { return dim_ == 1 ? n_ : n_ * n_; }
  double spacing() const { return period_ / static_cast<double>(n_); }
  double cell_volume() const { return std::pow(spacing(), dim_); }
  double measure() const { return std::pow(period_, dim_); }
  /// Largest representable angular frequency per axis (pi*N/L).
  double max_frequency() const { return std::numbers::pi * static_cast<double>(n_) / period_; }

  std::array<std::size_t, 2> axes(std::size_t idx) const {
    return dim_ == 1 ? std::array<std::size_t, 2>{idx, 0} : std::array{idx / n_, idx % n_};
  }
  std::size_t index(std::size_t i0, std::size_t i1 = 0) const {
    return dim_ == 1 ? i0 : i0 * n_ + i1;
  }
  Point coordinate(std::size_t idx) const {
    const auto a = axes(idx);
    return {static_cast<double>(a[0]) * spacing(), static_cast<double>(a[1]) * spacing()};
  }

  /// Index of x + (d0, d1) cells, wrapping around the torus.
  std::size_t shifted(std::size_t idx, std::ptrdiff_t d0, std::ptrdiff_t d1 = 0) const {
    const auto a = axes(idx);
    const auto n = static_cast<std::ptrdiff_t>(n_);
    auto wrap = [n](std::ptrdiff_t v) { return static_cast<std::size_t>(((v % n) + n) % n); };
    const std::size_t j0 = wrap(static_cast<std::ptrdiff_t>(a[0]) + d0);
    if (dim_ == 1) return j0;
    return j0 * n_ + wrap(static_cast<std::ptrdiff_t>(a[1]) + d1);
  }

  /// Minimum-image signed cell offset along one axis for a raw offset in [0, N).
  std::ptrdiff_t signed_offset(std::size_t d) const {
    const auto n = static_cast<std::ptrdiff_t>(n_);
    const auto v = static_cast<std::ptrdiff_t>(d);
    return v <= n / 2 ? v : v - n;
  }

  /// Periodic (minimum image) Euclidean length of the displacement stored at index `d`.
  double displacement_length(std::size_t d) const {
    const auto a = axes(d);
    const double h = spacing();
    const double x0 = static_cast<double>(signed_offset(a[0])) * h;
    if (dim_ == 1) return std::abs(x0);
    const double x1 = static_cast<double>(signed_offset(a[1])) * h;
    return std::hypot(x0, x1);
  }

  /// Index of the displacement y - x, so that displacement_length(displacement(x, y)) = |x - y|.
  std::size_t displacement(std::size_t from, std::size_t to) const {
    const auto a = axes(from);
    const auto b = axes(to);
    const std::size_t d0 = (b[0] + n_ - a[0]) % n_;
    if (dim_ == 1) return d0;
    return d0 * n_ + (b[1] + n_ - a[1]) % n_;
  }

  double periodic_distance(std::size_t a, std::size_t b) const {
    return displacement_length(displacement(a, b));
  }

  /// Periodic distance between arbitrary points of the torus.
  double periodic_distance(const Point& x, const Point& y) const {
    double acc = 0.0;
    for (int ax = 0; ax < dim_; ++ax) {
      double d = std::fmod(std::abs(x[ax] - y[ax]), period_);
      d = std::min(d, period_ - d);
      acc += d * d;
    }
    return std::sqrt(acc);
  }

  /// Periodic lengths of all displacements, indexed like grid points.
  RealField displacement_lengths() const {
    RealField out(size());
    for (std::size_t d = 0; d < out.size(); ++d) out[d] = displacement_length(d);
    return out;
  }

  /// Integer mode k in (-N/2, N/2] stored at FFT position i along an axis.
  long mode(std::size_t i) const {
    const auto n = static_cast<long>(n_);
    const auto v = static_cast<long>(i);
    return v <= n / 2 ? v : v - n;
  }
  double angular(long k) const { return 2.0 * std::numbers::pi * static_cast<double>(k) / period_; }

  /// Angular frequency vector at spectrum position `idx`.
  Point frequency(std::size_t idx) const {
    const auto a = axes(idx);
    return {angular(mode(a[0])), dim_ == 1 ? 0.0 : angular(mode(a[1]))};
  }
  double frequency_norm(std::size_t idx) const {
    const auto w = frequency(idx);
    return std::hypot(w[0], w[1]);
  }

  bool operator==(const Grid& o) const {
    return dim_ == o.dim_ && n_ == o.n_ && period_ == o.period_;
  }

 private:
  int dim_;
  std::size_t n_;
  double period_;
};

inline void require_same_grid(const Grid& a, const Grid& b, const char* what) {
  if (!(a == b)) throw InvalidInput(std::string("grid mismatch in ") + what);
}

class SampledFunction {
 public:
  SampledFunction(Grid grid, ComplexField values) : grid_(grid), values_(std::move(values)) {
    if (values_.size() != grid_.size())
      throw InvalidInput("sample count " + std::to_string(values_.size()) + " does not match grid size " +
                         std::to_string(grid_.size()));
    for (const auto& v : values_)
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw InvalidInput("sampled function has non-finite entries");
  }
  SampledFunction(Grid grid, std::span<const double> real_values)
      : SampledFunction(grid, ComplexField(real_values.begin(), real_values.end())) {}

  static SampledFunction zero(const Grid& grid) { return {grid, ComplexField(grid.size())}; }
  static SampledFunction constant(const Grid& grid, Complex c) { return {grid, ComplexField(grid.size(), c)}; }

  template <class Fn>
  static SampledFunction from(const Grid& grid, Fn&& fn) {
    ComplexField v(grid.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = Complex(fn(grid.coordinate(i)));
    return {grid, std::move(v)};
  }

  const Grid& grid() const { return grid_; }
  const ComplexField& values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  const Complex& operator[](std::size_t i) const { return values_[i]; }

  RealField magnitude() const {
    RealField out(values_.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::abs(values_[i]);
    return out;
  }
  double max_abs() const {
    double m = 0.0;
    for (const auto& v : values_) m = std::max(m, std::abs(v));
    return m;
  }

  SampledFunction scaled(Complex c) const {
    ComplexField v = values_;
    for (auto& x : v) x *= c;
    return {grid_, std::move(v)};
  }
  SampledFunction operator+(const SampledFunction& o) const {
    require_same_grid(grid_, o.grid_, "function sum");
    ComplexField v = values_;
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += o.values_[i];
    return {grid_, std::move(v)};
  }
  SampledFunction operator-(const SampledFunction& o) const { return *this + o.scaled(-1.0); }

 private:
  Grid grid_;
  ComplexField values_;
};

/// Unitary DFT coefficients, stored in FFT order (see Grid::mode).
class Spectrum {
 public:
  Spectrum(Grid grid, ComplexField coefficients) : grid_(grid), coefficients_(std::move(coefficients)) {
    if (coefficients_.size() != grid_.size()) throw InvalidInput("spectrum size does not match grid");
  }
  const Grid& grid() const { return grid_; }
  const ComplexField& coefficients() const { return coefficients_; }
  ComplexField& coefficients() { return coefficients_; }
  const Complex& operator[](std::size_t i) const { return coefficients_[i]; }

  /// Coefficient of integer mode (k0, k1), modes taken in (-N/2, N/2].
  Complex at_mode(long k0, long k1 = 0) const {
    const auto n = static_cast<long>(grid_.n());
    auto pos = [n](long k) { return static_cast<std::size_t>(((k % n) + n) % n); };
    return coefficients_[grid_.index(pos(k0), grid_.dim() == 1 ? 0 : pos(k1))];
  }

  /// Energy in the same units as quadrature(|f|^2).
  double energy() const {
    RealField e(coefficients_.size());
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = std::norm(coefficients_[i]);
    return pairwise_sum(e) * grid_.cell_volume();
  }

 private:
  Grid grid_;
  ComplexField coefficients_;
};

inline Spectrum dft(const SampledFunction& f) {
  const Grid& g = f.grid();
  ComplexField c = f.values();
  detail::cached_plan(g.dim(), g.n(), FFTW_FORWARD).execute(c);
  const double scale = 1.0 / std::sqrt(static_cast<double>(g.size()));
  for (auto& v : c) v *= scale;
  return {g, std::move(c)};
}

inline SampledFunction idft(const Spectrum& s) {
  const Grid& g = s.grid();
  ComplexField v = s.coefficients();
  detail::cached_plan(g.dim(), g.n(), FFTW_BACKWARD).execute(v);
  const double scale = 1.0 / std::sqrt(static_cast<double>(g.size()));
  for (auto& x : v) x *= scale;
  return {g, std::move(v)};
}

/// Rectangle rule; exact for trigonometric polynomials of degree < N.
inline double quadrature(const Grid& grid, std::span<const double> values) {
  if (values.size() != grid.size()) throw InvalidInput("quadrature: value count does not match grid");
  for (double v : values)
    if (!std::isfinite(v)) throw InvalidInput("quadrature: non-finite value");
  return pairwise_sum(values) * grid.cell_volume();
}

/// Multiplies the spectrum of f by m(xi) and transforms back.
template <class Multiplier>
SampledFunction apply_multiplier(const Spectrum& spectrum, Multiplier&& m) {
  Spectrum out = spectrum;
  auto& c = out.coefficients();
  for (std::size_t i = 0; i < c.size(); ++i) c[i] *= m(spectrum.grid().frequency(i));
  return idft(out);
}

/// g(x) = f(x + offset) by spectral interpolation.
inline SampledFunction periodic_shift_sample(const SampledFunction& f, const Point& offset) {
  return apply_multiplier(dft(f), [&](const Point& w) {
    return std::polar(1.0, w[0] * offset[0] + w[1] * offset[1]);
  });
}

/// g(x) = f(x + d*h) for integer cell offsets; exact index rotation.
inline ComplexField shift_by_cells(const Grid& grid, std::span<const Complex> f, std::ptrdiff_t d0,
                                   std::ptrdiff_t d1 = 0) {
  ComplexField out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = f[grid.shifted(i, d0, d1)];
  return out;
}

/// Periodic convolution (f * k)(x) = integral of k(y) f(x - y) dy, evaluated through the DFT.
inline SampledFunction periodic_convolution(const SampledFunction& f, const SampledFunction& kernel) {
  require_same_grid(f.grid(), kernel.grid(), "periodic_convolution");
  const Grid& g = f.grid();
  Spectrum a = dft(f);
  const Spectrum b = dft(kernel);
  const double scale = std::sqrt(static_cast<double>(g.size())) * g.cell_volume();
  for (std::size_t i = 0; i < g.size(); ++i) a.coefficients()[i] *= b[i] * scale;
  return idft(a);
}

}  // namespace vbtl
