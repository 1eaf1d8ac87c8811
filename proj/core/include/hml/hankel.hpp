#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "hml/measure.hpp"
#include "hml/series.hpp"

namespace hml {

/// N x N section of the moment-kernel operator: entry (n, k) is sym[n + k],
/// where sym holds the 2N-1 moments mu_0 .. mu_{2N-2}.
struct HankelSection {
    std::vector<double> sym;
    std::size_t n = 0;
};

HankelSection hankel_section(const RadialMeasure& mu, std::size_t n,
                             int order = kDefaultOrder);

/// Wrap an explicit odd-length moment run (size 2N-1).
HankelSection hankel_from_moments(std::vector<double> moments);

/// y_i = sum_k sym[i+k] x_k, direct O(N^2) accumulation (k ascending).
std::vector<double> apply_naive(const HankelSection& h, const std::vector<double>& x);

/// Direct application to a block of vectors with the same per-vector
/// accumulation order as apply_naive (results are bitwise identical), but
/// an interleaved layout that keeps the inner loop vectorizable.
std::vector<std::vector<double>> apply_naive_block(const HankelSection& h,
                                                   const std::vector<std::vector<double>>& xs);

/// Same map evaluated as one linear correlation via FFT, O(N log N).
std::vector<double> apply(const HankelSection& h, const std::vector<double>& x);

/// Largest eigenvalue of the (symmetric positive) section by power iteration
/// with Rayleigh quotients, started from the normalized all-ones vector.
struct NormEstimate {
    double value = 0.0;
    int iterations = 0;
    bool converged = false;
    std::vector<double> history;  // Rayleigh quotient per iteration
};

NormEstimate operator_norm_truncated(const HankelSection& h, double tol = 1e-11,
                                     int max_iter = 200000);
NormEstimate operator_norm_truncated(const RadialMeasure& mu, std::size_t n,
                                     double tol = 1e-11, int max_iter = 200000,
                                     int order = kDefaultOrder);

/// Integral form of the operator image: integral of f(t) / (1 - t z) d mu(t).
/// Domain |z| <= 0.999 (kernel conditioning away from the positive axis).
std::complex<double> imu_eval(const RadialMeasure& mu, const TaylorPoly& f,
                              std::complex<double> z, int order = kDefaultOrder);

/// integral of d mu(t) / (1 - r t) for r in [0, 1): the image of the constant
/// one evaluated on the positive axis, where the kernel stays one-signed and
/// r may approach 1 as closely as the node ladder resolves (2^-72).
double moment_series_at(const RadialMeasure& mu, double r, int order = kDefaultOrder);

/// Compare the coefficient form sum_n (sum_k mu_{n+k} a_k) z^n against the
/// integral form on a polar grid of the disc of the given radius; the
/// coefficient truncation is raised until its tail bound is below tol/10.
struct AgreementReport {
    double max_abs_diff = 0.0;
    double tol = 0.0;
    bool ok = false;
    std::size_t n_used = 0;
    std::vector<std::pair<std::complex<double>, double>> samples;  // (z, |diff|)
};

AgreementReport agreement_check(const RadialMeasure& mu, const TaylorPoly& f,
                                double radius = 0.9, int n_angles = 16,
                                double tol = 1e-10, int order = kDefaultOrder);

}  // namespace hml
