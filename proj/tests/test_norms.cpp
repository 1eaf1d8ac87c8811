#include <doctest.h>

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <vector>

#include "hml/norms.hpp"
#include "hml/series.hpp"

using namespace hml;
using cplx = std::complex<double>;

namespace {

TaylorPoly monomial(int m) {
    TaylorPoly f;
    f.a.assign(m + 1, 0.0);
    f.a[m] = 1.0;
    return f;
}

}  // namespace

TEST_CASE("quadratic circle means obey the coefficient identity") {
    TaylorPoly f;
    f.a = {cplx(1.0), cplx(-0.5), cplx(0.0), cplx(2.0), cplx(0.25)};
    for (double r : {0.3, 0.9, 1.0}) {
        double want2 = 0.0;
        for (int k = 0; k <= f.degree(); ++k)
            want2 += std::norm(f.a[k]) * std::pow(r, 2 * k);
        CHECK(circle_mean(f, r, 2.0) == doctest::Approx(std::sqrt(want2)).epsilon(1e-12));
    }
    CHECK(circle_mean(f, 1.0, 2.0) == doctest::Approx(h2_norm(f)).epsilon(1e-13));
}

TEST_CASE("closed-form circle means of simple functions") {
    // mean of |1 + z|^4 over the unit circle is 6
    TaylorPoly f;
    f.a = {cplx(1.0), cplx(1.0)};
    CHECK(circle_mean(f, 1.0, 4.0) == doctest::Approx(std::pow(6.0, 0.25)).epsilon(1e-12));
    // sup of |z^m| on radius r is r^m
    CHECK(circle_mean(monomial(5), 0.8,
                      std::numeric_limits<double>::infinity()) ==
          doctest::Approx(std::pow(0.8, 5)).epsilon(1e-9));
    // the normalized reproducing-kernel square has unit integral mean:
    // (1-b^2) / |1 - b e^{i t}|^2 averages to 1 for every b
    for (double b : {0.5, 0.9, 0.99})
        CHECK(circle_mean(family_fb1(b, 4000), 1.0, 1.0) ==
              doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("square-summable norm closed form for the first family") {
    for (double b : {0.3, 0.9, 0.99}) {
        // sum (1-b^2)^2 (k+1)^2 b^{2k} = (1-b^2)(1+b^2) ... = (1+b^2)/(1-b^2)
        const double want = std::sqrt((1.0 + b * b) / (1.0 - b * b));
        const int deg = (int)(4000.0 / (1.0 - b));
        CHECK(h2_norm(family_fb1(b, deg)) == doctest::Approx(want).epsilon(1e-12));
    }
}

TEST_CASE("derivative-sup seminorm") {
    // f = z: sup (1-|z|^2) |f'| = 1 at the origin
    const SeminormEstimate lin = bloch_seminorm(monomial(1));
    CHECK(lin.value == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(lin.flag == SeminormEstimate::Flag::stable);
    // truncated geometric series: f' ~ (1-z)^{-2} makes the sup blow up
    TaylorPoly geo;
    geo.a.assign(4097, 1.0);
    const SeminormEstimate g = bloch_seminorm(geo);
    CHECK(g.flag == SeminormEstimate::Flag::diverged);
    REQUIRE(g.history.size() >= 2);
    CHECK(g.history.back() >= 2.25 * g.history.front());
}

TEST_CASE("weighted quadratic means separate slow and fast coefficient decay") {
    // a_n = 1/n: (1-r) M_2(r, f')^2 = (1-r)/(1-r^2) <= 1, sup 1 at r = 0
    const SeminormEstimate log_fn = lambda12_proxy(family_flog(1 << 14));
    CHECK(log_fn.flag != SeminormEstimate::Flag::diverged);
    CHECK(log_fn.value == doctest::Approx(1.0).epsilon(1e-6));

    // a_n = n^{-1/2}: (1-r) M_2^2 ~ ((1-r)(1+r)^2)^{-1} diverges
    TaylorPoly root;
    root.a.assign((1 << 16) + 1, 0.0);
    for (int n = 1; n < (int)root.a.size(); ++n) root.a[n] = 1.0 / std::sqrt((double)n);
    CHECK(lambda12_proxy(root).flag == SeminormEstimate::Flag::diverged);

    // a_n = 2^{-n}: bounded derivative, sup settles immediately
    TaylorPoly pw;
    pw.a.assign(64, 0.0);
    for (int n = 1; n < 64; ++n) pw.a[n] = std::pow(0.5, n);
    CHECK(lambda12_proxy(pw).flag == SeminormEstimate::Flag::stable);

    // a_n = 1/(n log^2(n+1)): summable n a_n^2 . log^{-4}, stays put
    TaylorPoly loglog;
    loglog.a.assign(1 << 14, 0.0);
    for (int n = 1; n < (int)loglog.a.size(); ++n) {
        const double l = std::log(n + 1.0);
        loglog.a[n] = 1.0 / (n * l * l);
    }
    CHECK(lambda12_proxy(loglog).flag != SeminormEstimate::Flag::diverged);
}

TEST_CASE("area seminorm: exact coefficient form at p = 2") {
    for (int m : {1, 3, 7, 25}) {
        const SeminormEstimate est = besov_seminorm(monomial(m), 2.0);
        CHECK(est.value == doctest::Approx(std::sqrt((double)m)).epsilon(1e-13));
        CHECK(est.flag == SeminormEstimate::Flag::stable);
    }
    TaylorPoly f;
    f.a = {cplx(4.0), cplx(1.0), cplx(0.5), cplx(0.25)};
    // constants do not register: sum n |a_n|^2 = 1 + 0.5 + 3/16
    CHECK(besov_seminorm(f, 2.0).value ==
          doctest::Approx(std::sqrt(1.0 + 0.5 + 3.0 / 16.0)).epsilon(1e-13));
}

TEST_CASE("area seminorm: quadrature path matches the Beta closed form") {
    // rho_p(z^m)^p = m^p B((p(m-1)+2)/2, p-1)
    for (double p : {1.5, 2.5, 3.0, 4.0}) {
        for (int m : {1, 2, 7, 20}) {
            const double x = (p * (m - 1) + 2.0) / 2.0, y = p - 1.0;
            const double want =
                m * std::exp((std::lgamma(x) + std::lgamma(y) - std::lgamma(x + y)) / p);
            const SeminormEstimate est = besov_seminorm(monomial(m), p);
            CHECK(est.value == doctest::Approx(want).epsilon(5e-7));
            CHECK(est.flag == SeminormEstimate::Flag::stable);
        }
    }
    CHECK_THROWS_AS(besov_seminorm(monomial(2), 1.0), std::invalid_argument);
}

TEST_CASE("windowed square mean against the linear-function closed form") {
    // f = z, s = 1: the window integral is (1 - |a|^2)/2
    const TaylorPoly f = monomial(1);
    const SeminormEstimate at0 = qs_seminorm(f, 1.0, {cplx(0.0)});
    CHECK(at0.value == doctest::Approx(std::sqrt(0.5)).epsilon(1e-3));
    CHECK(at0.flag == SeminormEstimate::Flag::stable);
    const SeminormEstimate at6 = qs_seminorm(f, 1.0, {cplx(0.6)});
    CHECK(at6.value == doctest::Approx(std::sqrt(0.32)).epsilon(1e-3));
    // default grid: the sup sits at the center
    const SeminormEstimate sup = qs_seminorm(f, 1.0);
    CHECK(sup.value == doctest::Approx(std::sqrt(0.5)).epsilon(1e-3));
}

TEST_CASE("coefficient functionals reproduce pinned series") {
    const double pi2_6 = std::numbers::pi * std::numbers::pi / 6.0;
    // a_n = 1/(n+1)^2: sum_{n>=1} a_n / n = 2 - pi^2/6, tail below 1/(2N^2)
    const int N = 1 << 16;
    TaylorPoly f;
    f.a.assign(N + 1, 0.0);
    for (int n = 0; n <= N; ++n) f.a[n] = 1.0 / ((n + 1.0) * (n + 1.0));
    CHECK(std::abs(coeff_proxy_h1(f) - (2.0 - pi2_6)) <= 0.5 / ((double)N * N) + 1e-12);

    // a_n = 1/n at p = 2: sum n^0 a_n^2 -> pi^2/6, tail 1/N - 1/(2N^2) + O(N^-3)
    const TaylorPoly lg = family_flog(N);
    const double hp = coeff_proxy_hp(lg, 2.0);
    CHECK(std::abs(hp * hp + 1.0 / N - 0.5 / ((double)N * N) - pi2_6) <=
          1.0 / ((double)N * N * N) + 1e-12);

    // a_n = 2^-n at p = 2: sum n 4^-n = 4/9
    TaylorPoly pw;
    pw.a.assign(80, 0.0);
    for (int n = 1; n < 80; ++n) pw.a[n] = std::pow(0.5, n);
    CHECK(coeff_proxy_bp(pw, 2.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("decay envelope") {
    // a_n = 0.9^n: n a_n peaks at n = 9 (exact tie with n = 10)
    TaylorPoly f;
    f.a.assign(200, 0.0);
    for (int n = 0; n < 200; ++n) f.a[n] = std::pow(0.9, n);
    const DecaySup d = decay_sup(f);
    CHECK(d.value == doctest::Approx(9.0 * std::pow(0.9, 9)).epsilon(1e-14));
    CHECK((d.arg_n == 9 || d.arg_n == 10));

    const std::vector<double> tab = {1.0, 1.0, 0.3, 0.5};
    const DecaySup dt = decay_sup(tab);
    CHECK(dt.value == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(dt.arg_n == 3);
}
