#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace hml::fft {

std::size_t next_pow2(std::size_t n);

/// Real-to-complex FFT of x (result size n/2+1) and its inverse (normalized).
std::vector<std::complex<double>> rfft(const std::vector<double>& x);
std::vector<double> irfft(const std::vector<std::complex<double>>& spec, std::size_t n);

/// Linear convolution of a and b (size |a|+|b|-1) via power-of-two padding.
std::vector<double> convolve(const std::vector<double>& a, const std::vector<double>& b);

/// Values sum_j c_j r^j w^{jk}, k = 0..m-1, with w = e^{-2 pi i/m}: the
/// polynomial on m equispaced points of the circle |z| = r (orientation is
/// irrelevant to moduli statistics). Requires m >= c.size().
std::vector<std::complex<double>> eval_on_circle(const std::vector<std::complex<double>>& c,
                                                 double r, std::size_t m);

}  // namespace hml::fft
