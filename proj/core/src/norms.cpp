#include "hml/norms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "hml/fft.hpp"
#include "hml/quadrature.hpp"

namespace hml {

namespace {

constexpr double kSupTol = 1e-2;    // sup-type refinement agreement
constexpr double kQuadTol = 1e-4;   // quadrature-type refinement agreement

SeminormEstimate::Flag classify_history(const std::vector<double>& h, double rtol) {
    if (h.size() < 2) return SeminormEstimate::Flag::stable;
    const double first = h.front(), last = h[h.size() - 1], prev = h[h.size() - 2];
    if (first > 0.0 && last >= 2.25 * first) return SeminormEstimate::Flag::diverged;
    if (std::abs(last - prev) <= rtol * std::max(std::abs(last), 1e-300))
        return SeminormEstimate::Flag::stable;
    return SeminormEstimate::Flag::growing;
}

std::size_t angle_count(int degree, std::size_t floor_m) {
    return fft::next_pow2(std::max<std::size_t>(floor_m, 8 * (std::size_t)(degree + 1)));
}

}  // namespace

const char* to_string(SeminormEstimate::Flag f) {
    switch (f) {
        case SeminormEstimate::Flag::stable: return "stable";
        case SeminormEstimate::Flag::growing: return "growing";
        case SeminormEstimate::Flag::diverged: return "diverged";
    }
    return "?";
}

double circle_mean(const TaylorPoly& f, double r, double p) {
    if (!(r >= 0.0 && r <= 1.0)) throw std::invalid_argument("circle radius must be in [0,1]");
    if (!(p > 0.0)) throw std::invalid_argument("circle mean needs p > 0");
    const std::size_t m = angle_count(f.degree(), 512);
    const auto vals = fft::eval_on_circle(f.a, r, m);
    if (std::isinf(p)) {
        double mx = 0.0;
        for (const auto& v : vals) mx = std::max(mx, std::abs(v));
        const auto vals2 = fft::eval_on_circle(f.a, r, 2 * m);
        for (const auto& v : vals2) mx = std::max(mx, std::abs(v));
        return mx;
    }
    double acc = 0.0;
    for (const auto& v : vals) acc += std::pow(std::abs(v), p);
    return std::pow(acc / (double)m, 1.0 / p);
}

double h2_norm(const TaylorPoly& f) {
    double s = 0.0;
    for (const auto& a : f.a) s += std::norm(a);
    return std::sqrt(s);
}

SeminormEstimate bloch_seminorm(const TaylorPoly& f) {
    const TaylorPoly d = derivative(f);
    SeminormEstimate est;
    for (int level = 0; level < 3; ++level) {
        const int jmax = 6 + 2 * level;
        const std::size_t m = angle_count(d.degree(), 256) << level;
        double sup = 0.0;
        for (int j = 0; j <= jmax; ++j) {
            const double r = j == 0 ? 0.0 : 1.0 - std::pow(0.5, j);
            const double w = 1.0 - r * r;
            for (const auto& v : fft::eval_on_circle(d.a, r, m))
                sup = std::max(sup, w * std::abs(v));
        }
        est.history.push_back(sup);
    }
    est.value = est.history.back();
    est.flag = classify_history(est.history, kSupTol);
    return est;
}

SeminormEstimate lambda12_proxy(const TaylorPoly& f) {
    // M_2(r, f')^2 = sum_{n>=1} (n |a_n|)^2 r^{2(n-1)}, summed exactly.
    std::vector<double> sq;
    for (std::size_t n = 1; n < f.a.size(); ++n) {
        const double c = (double)n * std::abs(f.a[n]);
        sq.push_back(c * c);
    }
    auto m2 = [&](double r) {
        double acc = 0.0, rp = 1.0;
        const double r2 = r * r;
        for (double s : sq) {
            acc += s * rp;
            rp *= r2;
        }
        return std::sqrt(acc);
    };
    SeminormEstimate est;
    for (int level = 0; level < 3; ++level) {
        const int jmax = 8 + 4 * level;
        double sup = 0.0;
        for (int j = 0; j <= jmax; ++j) {
            const double r = j == 0 ? 0.0 : 1.0 - std::pow(0.5, j);
            sup = std::max(sup, std::sqrt(1.0 - r) * m2(r));
        }
        est.history.push_back(sup);
    }
    est.value = est.history.back();
    est.flag = classify_history(est.history, kSupTol);
    return est;
}

SeminormEstimate besov_seminorm(const TaylorPoly& f, double p) {
    if (!(p > 1.0)) throw std::invalid_argument("besov seminorm needs p > 1");
    SeminormEstimate est;
    if (p == 2.0) {
        double s = 0.0;
        for (std::size_t n = 1; n < f.a.size(); ++n)
            s += (double)n * std::norm(f.a[n]);
        est.value = std::sqrt(s);
        est.history = {est.value, est.value, est.value};
        return est;
    }
    const TaylorPoly d = derivative(f);
    // seminorm^p = integral over v in (0,1] of v^{p-2} M_p^p(sqrt(1-v), f') dv,
    // dyadic panels in v plus the analytic boundary slab where M_p saturates.
    for (int level = 0; level < 3; ++level) {
        const int jmax = 28 + 6 * level;
        const int order = 12 + 4 * level;
        const std::size_t m = angle_count(d.degree(), 256) << level;
        const auto& rule = quad::gauss_legendre(order);
        auto mp_p = [&](double v) {
            const double r = std::sqrt(std::max(0.0, 1.0 - v));
            double acc = 0.0;
            for (const auto& w : fft::eval_on_circle(d.a, r, m))
                acc += std::pow(std::abs(w), p);
            return acc / (double)m;
        };
        double acc = 0.0;
        for (int j = 0; j < jmax; ++j) {
            const double vhi = std::pow(0.5, j), vlo = 0.5 * vhi;
            const double mid = 0.5 * (vlo + vhi), half = 0.5 * (vhi - vlo);
            for (std::size_t i = 0; i < rule.x.size(); ++i) {
                const double v = mid + half * rule.x[i];
                acc += half * rule.w[i] * std::pow(v, p - 2.0) * mp_p(v);
            }
        }
        const double v0 = std::pow(0.5, jmax);
        acc += mp_p(v0) * std::pow(v0, p - 1.0) / (p - 1.0);
        est.history.push_back(std::pow(acc, 1.0 / p));
    }
    est.value = est.history.back();
    est.flag = classify_history(est.history, kQuadTol);
    return est;
}

namespace {

double qs_window_integral(const TaylorPoly& d, double s, std::complex<double> a,
                          int jmax, int order, std::size_t m_theta) {
    constexpr double eps = 1e-3;
    const std::complex<double> ca = std::conj(a);
    const auto& rule = quad::gauss_legendre(order);
    auto g_of = [&](std::complex<double> z) {
        const double num = std::abs(1.0 - ca * z);
        const double den = std::max(std::abs(z - a), eps);  // clipped near a
        return std::log(num / den);
    };
    // outer part: polar at the origin, dyadic panels in 1 - r
    double acc = 0.0;
    for (int j = 0; j <= jmax; ++j) {
        const double hi = j == 0 ? 1.0 : std::pow(0.5, j);
        const double lo = j == jmax ? 0.0 : 0.5 * hi;
        const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
        for (std::size_t i = 0; i < rule.x.size(); ++i) {
            const double omr = mid + half * rule.x[i];
            const double r = 1.0 - omr;
            if (r < 0.0) continue;
            const auto vals = fft::eval_on_circle(d.a, r, m_theta);
            double ring = 0.0;
            for (std::size_t k = 0; k < m_theta; ++k) {
                const std::complex<double> z =
                    std::polar(r, 2.0 * M_PI * (double)k / (double)m_theta);
                const double g = g_of(z);
                if (g <= 0.0) continue;
                ring += std::norm(vals[k]) * std::pow(g, s);
            }
            // dA/pi = 2 r dr dtheta/(2 pi)
            acc += half * rule.w[i] * 2.0 * r * ring / (double)m_theta;
        }
    }
    // inner patch: polar at a over the clipped disc |z - a| <= eps
    const double ca2 = std::abs(1.0 - std::norm(a));
    const auto& irule = quad::gauss_legendre(32);
    const std::size_t m_in = 16;
    double inner = 0.0;
    for (std::size_t i = 0; i < irule.x.size(); ++i) {
        const double rho = 0.5 * eps * (1.0 + irule.x[i]);
        double ring = 0.0;
        for (std::size_t k = 0; k < m_in; ++k) {
            const std::complex<double> z =
                a + std::polar(rho, 2.0 * M_PI * (double)k / (double)m_in);
            if (std::abs(z) >= 1.0) continue;
            const double g = std::log(std::abs(1.0 - ca * z) / std::max(rho, 1e-18));
            if (g <= 0.0) continue;
            ring += std::norm(eval(d, z)) * std::pow(g, s);
        }
        inner += 0.5 * eps * irule.w[i] * 2.0 * rho * ring / (double)m_in;
    }
    // subtract the clipped-g mass the outer grid assigned to the patch
    const double g_eps = std::log(std::max(ca2, 1e-18) / eps);
    double clipped = 0.0;
    if (g_eps > 0.0 && std::abs(a) < 1.0)
        clipped = std::norm(eval(d, a)) * std::pow(g_eps, s) * eps * eps;
    return acc + inner - clipped;
}

}  // namespace

SeminormEstimate qs_seminorm(const TaylorPoly& f, double s,
                             const std::vector<std::complex<double>>& a_grid) {
    if (!(s > 0.0)) throw std::invalid_argument("qs seminorm needs s > 0");
    std::vector<std::complex<double>> grid = a_grid;
    if (grid.empty()) {
        grid.push_back(0.0);
        for (double r : {0.15, 0.35, 0.55, 0.75, 0.95})
            for (int k = 0; k < 16; ++k)
                grid.push_back(std::polar(r, 2.0 * M_PI * k / 16.0));
    }
    const TaylorPoly d = derivative(f);
    SeminormEstimate est;
    const int jmaxs[3] = {12, 16, 20};
    const int orders[3] = {8, 8, 12};
    for (int level = 0; level < 3; ++level) {
        const std::size_t m = angle_count(d.degree(), 128) << level;
        double sup = 0.0;
        for (const auto& a : grid)
            sup = std::max(sup,
                           qs_window_integral(d, s, a, jmaxs[level], orders[level], m));
        est.history.push_back(std::sqrt(std::max(0.0, sup)));
    }
    est.value = est.history.back();
    est.flag = classify_history(est.history, kSupTol);
    return est;
}

double coeff_proxy_h1(const TaylorPoly& f) {
    double s = 0.0;
    for (std::size_t n = f.a.size(); n-- > 1;) s += f.a[n].real() / (double)n;
    return s;
}

double coeff_proxy_hp(const TaylorPoly& f, double p) {
    if (!(p > 0.0)) throw std::invalid_argument("proxy needs p > 0");
    double s = 0.0;
    for (std::size_t n = f.a.size(); n-- > 1;)
        s += std::pow((double)n, p - 2.0) * std::pow(std::abs(f.a[n]), p);
    return std::pow(s, 1.0 / p);
}

double coeff_proxy_bp(const TaylorPoly& f, double p) {
    if (!(p > 0.0)) throw std::invalid_argument("proxy needs p > 0");
    double s = 0.0;
    for (std::size_t n = f.a.size(); n-- > 1;)
        s += std::pow((double)n, p - 1.0) * std::pow(std::abs(f.a[n]), p);
    return std::pow(s, 1.0 / p);
}

DecaySup decay_sup(const TaylorPoly& f) {
    DecaySup out;
    for (std::size_t n = 1; n < f.a.size(); ++n) {
        const double v = (double)n * std::abs(f.a[n]);
        if (v > out.value) {
            out.value = v;
            out.arg_n = (std::int64_t)n;
        }
    }
    return out;
}

DecaySup decay_sup(const std::vector<double>& vals) {
    DecaySup out;
    for (std::size_t n = 1; n < vals.size(); ++n) {
        const double v = (double)n * vals[n];
        if (v > out.value) {
            out.value = v;
            out.arg_n = (std::int64_t)n;
        }
    }
    return out;
}

}  // namespace hml
