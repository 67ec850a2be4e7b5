#pragma once

#include <complex>

namespace nlsscat::detail {

// Thin wrapper around FFTW. Plans are created once per (d, n, direction,
// placement) under a mutex and executed through the new-array interface, which
// FFTW documents as thread-safe. Transforms are unnormalised.

void fft_forward(int d, int n, const std::complex<double>* in,
                 std::complex<double>* out);
void fft_inverse(int d, int n, const std::complex<double>* in,
                 std::complex<double>* out);

}  // namespace nlsscat::detail
