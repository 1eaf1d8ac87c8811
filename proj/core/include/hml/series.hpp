#pragma once

#include <complex>
#include <string>
#include <vector>

namespace hml {

/// Polynomial / truncated Taylor series sum a_k z^k, k = 0..degree().
struct TaylorPoly {
    std::vector<std::complex<double>> a;

    int degree() const { return (int)a.size() - 1; }
};

std::complex<double> eval(const TaylorPoly& f, std::complex<double> z);
TaylorPoly derivative(const TaylorPoly& f);

/// True when every coefficient is real, nonnegative and nonincreasing
/// (up to `tol` slack per step).
bool is_nonneg_decreasing(const TaylorPoly& f, double tol = 0.0);

/// Truncations of the standard test families.
///   fb1 : (1-b^2) / (1-bz)^2          -> a_k = (1-b^2)(k+1) b^k
///   fbp : (1-b^2)^{1/p} / (1-bz)^{2/p}
///   gb  : log(1/(1-b^2))^{-1/p} * sum_{k>=1} b^k z^k / k,  b in (1/2, 1)
///   flog: sum_{k>=1} z^k / k
///   one : constant 1
TaylorPoly family_fb1(double b, int degree);
TaylorPoly family_fbp(double b, double p, int degree);
TaylorPoly family_gb(double b, double p, int degree);
TaylorPoly family_flog(int degree);
TaylorPoly family_one();

/// Grammar: "fb1:b=<f>" | "fbp:b=<f>,p=<f>" | "gb:b=<f>,p=<f>" | "Flog" | "one".
struct FamilySpec {
    enum class Kind { fb1, fbp, gb, flog, one };
    Kind kind = Kind::fb1;
    double b = 0.9;
    double p = 2.0;
};

FamilySpec parse_family(const std::string& text);

/// Instantiate a family at the given degree; b < 0 keeps the spec's own b.
TaylorPoly make_family(const FamilySpec& spec, double b, int degree);

/// Coefficient files: one real value per line, no header, '.' decimal, LF.
std::vector<double> read_coeff_column(const std::string& path);
void write_coeff_column(const std::string& path, const TaylorPoly& f);

}  // namespace hml
