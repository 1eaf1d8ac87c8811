#include "hml/series.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace hml {

std::complex<double> eval(const TaylorPoly& f, std::complex<double> z) {
    std::complex<double> acc = 0.0;
    for (std::size_t k = f.a.size(); k-- > 0;) acc = acc * z + f.a[k];
    return acc;
}

TaylorPoly derivative(const TaylorPoly& f) {
    TaylorPoly d;
    if (f.a.size() <= 1) {
        d.a = {0.0};
        return d;
    }
    d.a.resize(f.a.size() - 1);
    for (std::size_t k = 1; k < f.a.size(); ++k) d.a[k - 1] = (double)k * f.a[k];
    return d;
}

bool is_nonneg_decreasing(const TaylorPoly& f, double tol) {
    double prev = 0.0;
    for (std::size_t k = 0; k < f.a.size(); ++k) {
        if (std::abs(f.a[k].imag()) > tol) return false;
        const double re = f.a[k].real();
        if (re < -tol) return false;
        if (k > 0 && re > prev + tol) return false;
        prev = re;
    }
    return true;
}

namespace {

void check_b(double b) {
    if (!(b >= 0.0 && b < 1.0)) throw std::invalid_argument("family needs b in [0,1)");
}

void check_degree(int degree) {
    if (degree < 0) throw std::invalid_argument("family degree must be nonnegative");
}

}  // namespace

TaylorPoly family_fb1(double b, int degree) {
    check_b(b);
    check_degree(degree);
    TaylorPoly f;
    f.a.resize(degree + 1);
    const double c = 1.0 - b * b;
    double bk = 1.0;
    for (int k = 0; k <= degree; ++k) {
        f.a[k] = c * (k + 1.0) * bk;
        bk *= b;
    }
    return f;
}

TaylorPoly family_fbp(double b, double p, int degree) {
    check_b(b);
    check_degree(degree);
    if (!(p > 0.0)) throw std::invalid_argument("family needs p > 0");
    TaylorPoly f;
    f.a.resize(degree + 1);
    double ak = std::pow(1.0 - b * b, 1.0 / p);
    f.a[0] = ak;
    for (int k = 1; k <= degree; ++k) {
        ak *= b * (k - 1.0 + 2.0 / p) / k;
        f.a[k] = ak;
    }
    return f;
}

TaylorPoly family_gb(double b, double p, int degree) {
    check_degree(degree);
    if (!(b > 0.5 && b < 1.0)) throw std::invalid_argument("family gb needs b in (1/2,1)");
    if (!(p > 0.0)) throw std::invalid_argument("family needs p > 0");
    TaylorPoly f;
    f.a.resize(degree + 1);
    const double scale = std::pow(std::log(1.0 / (1.0 - b * b)), -1.0 / p);
    f.a[0] = 0.0;
    double bk = 1.0;
    for (int k = 1; k <= degree; ++k) {
        bk *= b;
        f.a[k] = scale * bk / k;
    }
    return f;
}

TaylorPoly family_flog(int degree) {
    check_degree(degree);
    TaylorPoly f;
    f.a.resize(degree + 1);
    f.a[0] = 0.0;
    for (int k = 1; k <= degree; ++k) f.a[k] = 1.0 / k;
    return f;
}

TaylorPoly family_one() {
    TaylorPoly f;
    f.a = {1.0};
    return f;
}

namespace {

double parse_num(const std::string& tok) {
    std::size_t pos = 0;
    double v;
    try {
        v = std::stod(tok, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("bad numeric token '" + tok + "'");
    }
    if (pos != tok.size()) throw std::invalid_argument("bad numeric token '" + tok + "'");
    return v;
}

}  // namespace

FamilySpec parse_family(const std::string& text) {
    FamilySpec spec;
    if (text == "Flog") {
        spec.kind = FamilySpec::Kind::flog;
        return spec;
    }
    if (text == "one") {
        spec.kind = FamilySpec::Kind::one;
        return spec;
    }
    const auto colon = text.find(':');
    const std::string head = text.substr(0, colon);
    const std::string rest = colon == std::string::npos ? "" : text.substr(colon + 1);
    if (head == "fb1")
        spec.kind = FamilySpec::Kind::fb1;
    else if (head == "fbp")
        spec.kind = FamilySpec::Kind::fbp;
    else if (head == "gb")
        spec.kind = FamilySpec::Kind::gb;
    else
        throw std::invalid_argument("unknown family '" + head + "'");
    std::istringstream items(rest);
    std::string item;
    while (std::getline(items, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("bad family token '" + item + "'");
        const std::string key = item.substr(0, eq), val = item.substr(eq + 1);
        if (key == "b")
            spec.b = parse_num(val);
        else if (key == "p")
            spec.p = parse_num(val);
        else
            throw std::invalid_argument("unknown family key '" + key + "'");
    }
    return spec;
}

TaylorPoly make_family(const FamilySpec& spec, double b, int degree) {
    const double bb = b < 0.0 ? spec.b : b;
    switch (spec.kind) {
        case FamilySpec::Kind::fb1:
            return family_fb1(bb, degree);
        case FamilySpec::Kind::fbp:
            return family_fbp(bb, spec.p, degree);
        case FamilySpec::Kind::gb:
            return family_gb(bb, spec.p, degree);
        case FamilySpec::Kind::flog:
            return family_flog(degree);
        case FamilySpec::Kind::one:
            return family_one();
    }
    throw std::logic_error("unreachable family kind");
}

std::vector<double> read_coeff_column(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open coefficient file '" + path + "'");
    std::vector<double> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        out.push_back(parse_num(line));
    }
    return out;
}

void write_coeff_column(const std::string& path, const TaylorPoly& f) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot write coefficient file '" + path + "'");
    char buf[64];
    for (const auto& a : f.a) {
        if (std::abs(a.imag()) > 1e-12)
            throw std::invalid_argument("coefficient file format holds real values only");
        std::snprintf(buf, sizeof buf, "%.17g\n", a.real());
        out << buf;
    }
}

}  // namespace hml
