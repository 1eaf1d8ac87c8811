#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace hml {

/// Finite positive point masses w_i at radii t_i in [0, 1).
struct AtomicMeasure {
    struct Atom {
        double t;
        double w;
    };
    std::vector<Atom> atoms;
};

/// One density term c * (1-t)^(alpha-1) * log(e/(1-t))^gamma * log(1/(1-t))^log_power dt.
/// Externally constructed terms always have log_power == 0 and c > 0; the
/// extra integer log power (and signed coefficients) appear only when a
/// measure is re-weighted by log(1/(1-t)), which is exact in this family.
struct PowLogTerm {
    double c = 1.0;
    double alpha = 1.0;
    double gamma = 0.0;
    int log_power = 0;
};

/// Finite sum of PowLogTerm densities on [0, 1).
struct PowLogMeasure {
    std::vector<PowLogTerm> terms;
};

/// Piecewise-linear density sampled on a strictly increasing grid with
/// t.back() < 1, optionally carrying an exact log(1/(1-t))^log_power factor.
/// Accuracy is limited by the grid (documented ~1e-6 for moderate grids),
/// unlike the analytic families.
struct TabulatedMeasure {
    std::vector<double> t;
    std::vector<double> density;
    int log_power = 0;
};

using RadialMeasure = std::variant<AtomicMeasure, PowLogMeasure, TabulatedMeasure>;

/// Validating constructors.
AtomicMeasure make_atomic(const std::vector<std::pair<double, double>>& atoms);
PowLogMeasure make_powlog(double c, double alpha, double gamma);
TabulatedMeasure make_tabulated(std::vector<double> t, std::vector<double> density);

/// Normalized arclength on [0,1): dt. Equals powlog(1, 1, 0).
RadialMeasure lebesgue();

inline constexpr int kDefaultOrder = 24;

/// Largest moment index for which the discretization below is certified:
/// mass within 2^-72 of t = 1 is lumped into a constant, valid while
/// n * 2^-72 stays below resolution.
inline constexpr std::int64_t kMaxMomentIndex = std::int64_t(1) << 40;

/// Shared quadrature discretization of a measure: moment n is
/// sum_i w_i t_i^n + tail (for n <= kMaxMomentIndex), and
/// integral of phi is  sum_i w_i phi(t_i) + tail * phi(1^-).
/// For atomic measures the nodes are the atoms and tail == 0 (exact).
struct MeasureNodes {
    std::vector<double> t;
    std::vector<double> w;
    double tail = 0.0;
    double total = 0.0;
};

MeasureNodes measure_nodes(const RadialMeasure& mu, int order = kDefaultOrder);

/// n-th power moment  integral of t^n d mu(t).
double moment(const RadialMeasure& mu, std::int64_t n, int order = kDefaultOrder);

/// Moments 0 .. count-1 with a data-driven error bound (max absolute
/// deviation seen when the quadrature order is reduced, padded by roundoff).
struct MomentTable {
    std::vector<double> mu;
    double err_bound = 0.0;
};

MomentTable moments_upto(const RadialMeasure& mu, std::int64_t count,
                         int order = kDefaultOrder);

/// mu([b, 1)).
double tail_mass(const RadialMeasure& mu, double b);

/// The measure log(1/(1-t)) d mu(t): exact within each representation.
RadialMeasure log_weighted(const RadialMeasure& mu);

/// Carleson-box profile K(b) = mu([b,1)) * log(e/(1-b))^alpha_log / (1-b)^s
/// on a grid of b values, with a divergence verdict for b -> 1.
struct CarlesonReport {
    double s = 1.0;
    double alpha_log = 0.0;
    std::vector<double> b;
    std::vector<double> K;
    double sup_K = 0.0;
    double sup_b = 0.0;
    bool diverging = false;
    std::string note;
};

std::vector<double> geometric_b_grid(int jmin, int jmax);
CarlesonReport carleson_report(const RadialMeasure& mu, double s, double alpha_log,
                               const std::vector<double>& b_grid);

/// Least-squares classification of V(b) as b -> 1 against the model
///   V ~ A + C * (1-b)^(-gamma) * log(e/(1-b))^delta.
/// growth_detected is set when the fitted growing part is genuine; for
/// decaying data negative exponents are reported (decay rates).
struct GrowthFit {
    double gamma = 0.0;
    double delta = 0.0;
    double residual = 0.0;  // rms misfit relative to max |V|
    bool growth_detected = false;
    std::string note;
};

GrowthFit growth_exponent_fit(const std::vector<std::pair<double, double>>& pairs);

/// Grammar: "lebesgue" | "atoms:t1:w1[,t2:w2...]"
///        | "powlog:c=<f>,alpha=<f>,gamma=<f>" | "table:<path>".
/// Throws std::invalid_argument with the offending token on bad input.
RadialMeasure parse_measure(const std::string& text);

std::string describe(const RadialMeasure& mu);

}  // namespace hml
