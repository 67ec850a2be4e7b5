#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace nlsscat {

using cplx = std::complex<double>;

/// Centered periodic box [-L, L)^d sampled with n points per axis.
///
/// Coordinates are x_j = -L + j * (2L / n); wavenumbers follow the FFT layout
/// (k_m = pi * m / L for m = 0, 1, ..., n/2 - 1, -n/2, ..., -1). Samples are
/// stored row-major with the last axis fastest.
class Grid {
 public:
  /// Throws std::invalid_argument unless d in {1,2,3}, n a power of two >= 8
  /// and half_length finite and positive.
  Grid(int d, int n, double half_length);

  int dim() const { return d_; }
  int points_per_axis() const { return n_; }
  double half_length() const { return half_length_; }
  std::size_t size() const { return size_; }

  double spacing() const { return 2.0 * half_length_ / n_; }
  double cell_volume() const;
  double k_max() const;

  std::span<const double> coords() const { return coords_; }
  std::span<const double> wavenumbers() const { return wavenumbers_; }

  /// |x|^2 and |k|^2 at every sample, in storage order.
  const std::vector<double>& radius_squared() const { return r2_; }
  const std::vector<double>& k_squared() const { return k2_; }

  /// Index of x_j for axis component j of a flat sample index.
  int axis_index(std::size_t flat, int axis) const;

  /// Companion grid with the same n and d and half-length L * factor.
  Grid rescaled(double factor) const;

  bool same_shape(const Grid& other) const {
    return d_ == other.d_ && n_ == other.n_;
  }
  bool operator==(const Grid& other) const {
    return same_shape(other) && half_length_ == other.half_length_;
  }

 private:
  int d_;
  int n_;
  double half_length_;
  std::size_t size_;
  std::vector<double> coords_;
  std::vector<double> wavenumbers_;
  std::vector<double> r2_;
  std::vector<double> k2_;
};

/// Same as the Grid constructor; kept as a free function for call sites that
/// read better without a type name.
Grid make_grid(int d, int n, double half_length);

/// Complex samples u(x_j) on a Grid.
class Field {
 public:
  explicit Field(Grid grid);
  Field(Grid grid, std::vector<cplx> values);

  const Grid& grid() const { return grid_; }
  std::span<const cplx> values() const { return values_; }
  std::span<cplx> values() { return values_; }
  std::size_t size() const { return values_.size(); }

  cplx operator[](std::size_t i) const { return values_[i]; }
  cplx& operator[](std::size_t i) { return values_[i]; }

  bool all_finite() const;

  Field& operator+=(const Field& other);
  Field& operator-=(const Field& other);
  Field& operator*=(double scale);
  Field& operator*=(cplx scale);

 private:
  Grid grid_;
  std::vector<cplx> values_;
};

Field operator+(Field a, const Field& b);
Field operator-(Field a, const Field& b);
Field operator*(double s, Field a);
Field operator*(cplx s, Field a);

/// Raw FFT coefficients in the FFTW layout, unnormalised.
std::vector<cplx> to_spectrum(const Field& f);
/// Inverse of to_spectrum (includes the 1/N normalisation).
Field from_spectrum(const Grid& g, std::vector<cplx> spectrum);

/// Multiplies the spectrum of f by m(|k|^2) and transforms back.
template <class Multiplier>
Field apply_fourier_multiplier(const Field& f, Multiplier&& m) {
  std::vector<cplx> spec = to_spectrum(f);
  const auto& k2 = f.grid().k_squared();
  for (std::size_t i = 0; i < spec.size(); ++i) spec[i] *= m(k2[i]);
  return from_spectrum(f.grid(), std::move(spec));
}

/// e^{it Delta} f, exact on the periodic box (multiplier e^{-i|k|^2 t}).
Field free_propagate(const Field& f, double t);

/// Fraction of the L^2 mass carried by samples whose largest coordinate
/// magnitude exceeds 0.9 L. Zero for the zero field.
double boundary_mass_fraction(const Field& f);

/// Quadrature sum of |f|^2 times the cell volume.
double l2_norm_sq(const Field& f);

/// Same quantity evaluated from the Fourier coefficients.
double spectral_l2_norm_sq(const Field& f);

}  // namespace nlsscat
