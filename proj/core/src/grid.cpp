#include "nlsscat/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "fft.hpp"

namespace nlsscat {
namespace {

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

}  // namespace

Grid::Grid(int d, int n, double half_length)
    : d_(d), n_(n), half_length_(half_length) {
  if (d < 1 || d > 3) {
    throw std::invalid_argument("grid: dimension must be 1, 2 or 3, got " +
                                std::to_string(d));
  }
  if (n < 8 || !is_power_of_two(n)) {
    throw std::invalid_argument(
        "grid: points per axis must be a power of two >= 8, got " +
        std::to_string(n));
  }
  if (!std::isfinite(half_length) || half_length <= 0.0) {
    throw std::invalid_argument("grid: half_length must be finite and > 0");
  }

  size_ = 1;
  for (int i = 0; i < d; ++i) size_ *= static_cast<std::size_t>(n);

  const double h = spacing();
  const double dk = std::numbers::pi / half_length;
  coords_.resize(n);
  wavenumbers_.resize(n);
  for (int j = 0; j < n; ++j) {
    coords_[j] = -half_length + j * h;
    const int m = (j < n / 2) ? j : j - n;
    wavenumbers_[j] = dk * m;
  }

  r2_.assign(size_, 0.0);
  k2_.assign(size_, 0.0);
  for (std::size_t flat = 0; flat < size_; ++flat) {
    double r2 = 0.0;
    double k2 = 0.0;
    for (int axis = 0; axis < d; ++axis) {
      const int j = axis_index(flat, axis);
      r2 += coords_[j] * coords_[j];
      k2 += wavenumbers_[j] * wavenumbers_[j];
    }
    r2_[flat] = r2;
    k2_[flat] = k2;
  }
}

double Grid::cell_volume() const { return std::pow(spacing(), d_); }

double Grid::k_max() const { return std::numbers::pi / spacing(); }

int Grid::axis_index(std::size_t flat, int axis) const {
  std::size_t stride = 1;
  for (int i = d_ - 1; i > axis; --i) stride *= static_cast<std::size_t>(n_);
  return static_cast<int>((flat / stride) % static_cast<std::size_t>(n_));
}

Grid Grid::rescaled(double factor) const {
  return Grid(d_, n_, half_length_ * factor);
}

Grid make_grid(int d, int n, double half_length) {
  return Grid(d, n, half_length);
}

Field::Field(Grid grid) : grid_(std::move(grid)), values_(grid_.size()) {}

Field::Field(Grid grid, std::vector<cplx> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    throw std::invalid_argument("field: value count does not match grid size");
  }
}

bool Field::all_finite() const {
  return std::all_of(values_.begin(), values_.end(), [](cplx z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  });
}

Field& Field::operator+=(const Field& other) {
  if (!grid_.same_shape(other.grid_)) {
    throw std::invalid_argument("field: shape mismatch in +=");
  }
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
  return *this;
}

Field& Field::operator-=(const Field& other) {
  if (!grid_.same_shape(other.grid_)) {
    throw std::invalid_argument("field: shape mismatch in -=");
  }
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
  return *this;
}

Field& Field::operator*=(double scale) {
  for (auto& z : values_) z *= scale;
  return *this;
}

Field& Field::operator*=(cplx scale) {
  for (auto& z : values_) z *= scale;
  return *this;
}

Field operator+(Field a, const Field& b) { return a += b; }
Field operator-(Field a, const Field& b) { return a -= b; }
Field operator*(double s, Field a) { return a *= s; }
Field operator*(cplx s, Field a) { return a *= s; }

std::vector<cplx> to_spectrum(const Field& f) {
  const Grid& g = f.grid();
  std::vector<cplx> out(g.size());
  detail::fft_forward(g.dim(), g.points_per_axis(), f.values().data(),
                      out.data());
  return out;
}

Field from_spectrum(const Grid& g, std::vector<cplx> spectrum) {
  if (spectrum.size() != g.size()) {
    throw std::invalid_argument("spectrum size does not match grid");
  }
  detail::fft_inverse(g.dim(), g.points_per_axis(), spectrum.data(),
                      spectrum.data());
  const double inv = 1.0 / static_cast<double>(g.size());
  for (auto& z : spectrum) z *= inv;
  return Field(g, std::move(spectrum));
}

Field free_propagate(const Field& f, double t) {
  if (!std::isfinite(t)) throw std::invalid_argument("free_propagate: t");
  if (t == 0.0) return f;
  return apply_fourier_multiplier(
      f, [t](double k2) { return std::polar(1.0, -k2 * t); });
}

double boundary_mass_fraction(const Field& f) {
  const Grid& g = f.grid();
  const double cut = 0.9 * g.half_length();
  const auto x = g.coords();
  double total = 0.0;
  double outer = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double w = std::norm(f[i]);
    total += w;
    bool out = false;
    for (int axis = 0; axis < g.dim() && !out; ++axis) {
      out = std::abs(x[g.axis_index(i, axis)]) > cut;
    }
    if (out) outer += w;
  }
  return total > 0.0 ? outer / total : 0.0;
}

double l2_norm_sq(const Field& f) {
  double s = 0.0;
  for (cplx z : f.values()) s += std::norm(z);
  return s * f.grid().cell_volume();
}

double spectral_l2_norm_sq(const Field& f) {
  const auto spec = to_spectrum(f);
  double s = 0.0;
  for (cplx z : spec) s += std::norm(z);
  return s * f.grid().cell_volume() / static_cast<double>(f.size());
}

}  // namespace nlsscat
