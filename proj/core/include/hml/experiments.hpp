#pragma once

#include <string>
#include <vector>

#include "hml/measure.hpp"
#include "hml/series.hpp"

namespace hml {

/// Configuration shared by every command. The *_set flags let per-command
/// defaults apply only when the user left the option untouched.
struct ExperimentConfig {
    std::string command;
    std::string measure = "lebesgue";
    std::string family;  // empty: per-command default
    double p = 2.0;
    bool p_set = false;
    int jmin = 1;
    bool jmin_set = false;
    int jmax = 13;
    bool jmax_set = false;
    int degree = -1;  // -1: automatic truncation ceil(12/(1-b)) capped at 2^17
    double tol = 1e-9;
    std::string out;   // CSV path
    std::string plot;  // SVG path
    int threads = 1;
};

struct SweepRow {
    double b = 0.0;
    double one_minus_b = 0.0;
    double V = 0.0;
    double L = 0.0;
    bool has_ratio = false;
    double ratio = 0.0;
    double proxy = 0.0;
    std::string flag;
};

/// Exit codes: 0 success, 2 configuration error (surfaced as
/// std::invalid_argument), 3 numerical non-convergence, 4 verdict
/// inconsistency.
struct CommandResult {
    int exit_code = 0;
    std::vector<SweepRow> rows;
    std::vector<std::string> summary;
};

CommandResult run_command(const ExperimentConfig& cfg);

/// CSV schema: header "b,one_minus_b,V,L,ratio,proxy,flag", comma separator,
/// '.' decimal point, LF line ends; ratio is left empty where undefined.
void write_csv(const std::string& path, const std::vector<SweepRow>& rows);
void write_svg(const std::string& path, const std::vector<SweepRow>& rows,
               const std::string& title);

/// Classify a nondecreasing ladder of partial values as approaching a finite
/// limit or diverging, from the decay pattern of its increments.
struct LadderClass {
    bool finite = false;
    double limit = 0.0;  // meaningful when finite
    double theta = 0.0;  // power-law decay exponent of the increments
    std::string note;
};

LadderClass classify_ladder(const std::vector<double>& partials);

/// The three divergence indicators for the image of the constant one:
/// partial sums of the moments, the weighted mass integral near t = 1, and
/// the radial ladder of the integral form.
struct HinfReport {
    bool sum_finite = false;
    bool integral_finite = false;
    bool radial_finite = false;
    bool agree = false;
    double sup_estimate = 0.0;  // radial limit when finite, last value otherwise
    std::vector<double> radial_r, radial_value, partial_sums;
};

HinfReport hinf_report(const RadialMeasure& mu);

/// Log-weighted decay table sigma_n = sum_{k>=n} nu_k / k with the window
/// boundedness rule and the coefficient-vs-quadrature identity check at
/// matched truncation.
struct QsReport {
    std::vector<double> n, sigma, nsigma;
    double window_ratio = 0.0;
    bool bounded = false;
    double identity_max_diff = 0.0;
    bool identity_ok = false;
    double sigma_remainder = 0.0;  // estimated tail beyond the table
};

QsReport qs_report(const RadialMeasure& mu, double identity_tol = 1e-8);

}  // namespace hml
