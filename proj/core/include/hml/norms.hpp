#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "hml/series.hpp"

namespace hml {

/// Value of a refined numerical estimate with its refinement history:
///   diverged  -- last level >= 2.25 x first level,
///   stable    -- last two levels agree to the method's tolerance,
///   growing   -- still increasing between levels.
struct SeminormEstimate {
    enum class Flag { stable, growing, diverged };
    double value = 0.0;
    Flag flag = Flag::stable;
    std::vector<double> history;
};

const char* to_string(SeminormEstimate::Flag f);

/// Integral p-mean of |f| on the circle of radius r (p = inf: sup).
double circle_mean(const TaylorPoly& f, double r, double p);

double h2_norm(const TaylorPoly& f);

/// sup (1 - |z|^2) |f'(z)| over a refined polar grid.
SeminormEstimate bloch_seminorm(const TaylorPoly& f);

/// sup (1 - r)^{1/2} M_2(r, f'), the quadratic mean taken exactly from the
/// coefficients.
SeminormEstimate lambda12_proxy(const TaylorPoly& f);

/// ( integral over the disc of |f'|^p (1-|z|^2)^{p-2} dA/pi )^{1/p}, p > 1.
/// p = 2 is evaluated exactly from the coefficients.
SeminormEstimate besov_seminorm(const TaylorPoly& f, double p);

/// sup over window centers a of the square root of
///   integral of |f'(z)|^2 (log |1 - conj(a) z| - log |z - a|)^s dA/pi.
/// An empty grid uses a built-in grid of 81 centers with |a| <= 0.95.
SeminormEstimate qs_seminorm(const TaylorPoly& f, double s,
                             const std::vector<std::complex<double>>& a_grid = {});

/// Coefficient functionals for series with nonnegative decreasing
/// coefficients (h1 uses the signed real parts; the p-power forms use
/// moduli).
double coeff_proxy_h1(const TaylorPoly& f);                  // sum c_n / n
double coeff_proxy_hp(const TaylorPoly& f, double p);        // (sum n^{p-2} c_n^p)^{1/p}
double coeff_proxy_bp(const TaylorPoly& f, double p);        // (sum n^{p-1} c_n^p)^{1/p}

struct DecaySup {
    double value = 0.0;
    std::int64_t arg_n = 0;
};

/// sup over n >= 1 of n |a_n|.
DecaySup decay_sup(const TaylorPoly& f);
/// sup over n >= 1 of n vals[n] for a table indexed by n.
DecaySup decay_sup(const std::vector<double>& vals);

}  // namespace hml
