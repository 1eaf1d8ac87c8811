#include <doctest.h>

#include <cmath>
#include <complex>
#include <cstdio>
#include <vector>

#include "hml/series.hpp"

using namespace hml;
using cplx = std::complex<double>;

TEST_CASE("first family has the explicit coefficient law") {
    const double b = 0.9;
    const TaylorPoly f = family_fb1(b, 64);
    REQUIRE(f.degree() == 64);
    for (int k = 0; k <= 64; ++k) {
        const double want = (1.0 - b * b) * (k + 1) * std::pow(b, k);
        CHECK(f.a[k].real() == doctest::Approx(want).epsilon(1e-14));
        CHECK(f.a[k].imag() == 0.0);
    }
}

TEST_CASE("truncated families evaluate close to their generating functions") {
    const double b = 0.8;
    const int deg = 300;
    const cplx zs[] = {{0.5, 0.0}, {0.3, 0.4}, {-0.7, 0.1}, {0.0, 0.9}};
    SUBCASE("fb1") {
        const TaylorPoly f = family_fb1(b, deg);
        for (cplx z : zs) {
            const cplx want = (1.0 - b * b) / ((1.0 - b * z) * (1.0 - b * z));
            CHECK(std::abs(eval(f, z) - want) <= 1e-10 * std::abs(want));
        }
    }
    SUBCASE("fbp") {
        for (double p : {1.0, 2.0, 3.0}) {
            const TaylorPoly f = family_fbp(b, p, deg);
            for (cplx z : zs) {
                const cplx want = std::pow(cplx(1.0 - b * b), 1.0 / p) /
                                  std::pow(1.0 - b * z, 2.0 / p);
                CHECK(std::abs(eval(f, z) - want) <= 1e-10 * std::abs(want));
            }
        }
    }
    SUBCASE("gb") {
        const TaylorPoly g = family_gb(b, 2.0, deg);
        const double scale = std::pow(std::log(1.0 / (1.0 - b * b)), -0.5);
        for (cplx z : zs) {
            const cplx want = -scale * std::log(1.0 - b * z);
            CHECK(std::abs(eval(g, z) - want) <= 1e-10);
        }
    }
    SUBCASE("flog") {
        const TaylorPoly f = family_flog(deg);
        const cplx z{0.5, 0.2};
        CHECK(std::abs(eval(f, z) + std::log(1.0 - z)) <= 1e-12);
    }
}

TEST_CASE("fbp with p = 1 coincides with the first family") {
    const TaylorPoly f1 = family_fb1(0.77, 40);
    const TaylorPoly fp = family_fbp(0.77, 1.0, 40);
    for (int k = 0; k <= 40; ++k)
        CHECK(std::abs(f1.a[k] - fp.a[k]) <= 1e-15 * std::abs(f1.a[k]));
}

TEST_CASE("fbp with p = 2 is a unit vector in the square-summable norm") {
    // a_k = sqrt(1-b^2) b^k, so sum |a_k|^2 telescopes to 1.
    for (double b : {0.5, 0.9, 0.99}) {
        const TaylorPoly f = family_fbp(b, 2.0, 4000);
        double s = 0.0;
        for (const auto& c : f.a) s += std::norm(c);
        CHECK(s <= 1.0 + 1e-14);
        // truncation error b^(2*4001) underflows; only rounding remains
        CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("log family needs b above one half") {
    CHECK_THROWS_AS(family_gb(0.5, 2.0, 8), std::invalid_argument);
    CHECK_NOTHROW(family_gb(0.500001, 2.0, 8));
    const TaylorPoly g = family_gb(0.75, 3.0, 8);
    CHECK(std::abs(g.a[0]) == 0.0);
    const double scale = std::pow(std::log(1.0 / (1.0 - 0.75 * 0.75)), -1.0 / 3.0);
    CHECK(g.a[2].real() == doctest::Approx(scale * 0.75 * 0.75 / 2.0).epsilon(1e-14));
}

TEST_CASE("derivative shifts and scales coefficients") {
    TaylorPoly f;
    f.a = {cplx(1), cplx(2), cplx(3), cplx(4)};
    const TaylorPoly d = derivative(f);
    REQUIRE(d.degree() == 2);
    CHECK(d.a[0] == cplx(2));
    CHECK(d.a[1] == cplx(6));
    CHECK(d.a[2] == cplx(12));
}

TEST_CASE("nonnegative-nonincreasing predicate") {
    TaylorPoly f;
    f.a = {cplx(3), cplx(2), cplx(2), cplx(0.5)};
    CHECK(is_nonneg_decreasing(f));
    f.a = {cplx(1), cplx(2)};
    CHECK(!is_nonneg_decreasing(f));
    f.a = {cplx(1), cplx(-0.5)};
    CHECK(!is_nonneg_decreasing(f));
    f.a = {cplx(1), cplx(0.5, 1e-6)};
    CHECK(!is_nonneg_decreasing(f));
    f.a = {cplx(1), cplx(1.0 + 1e-12)};
    CHECK(!is_nonneg_decreasing(f));
    CHECK(is_nonneg_decreasing(f, 1e-10));
}

TEST_CASE("family grammar") {
    FamilySpec s = parse_family("fb1:b=0.95");
    CHECK(s.kind == FamilySpec::Kind::fb1);
    CHECK(s.b == 0.95);
    s = parse_family("fbp:b=0.8,p=3");
    CHECK(s.kind == FamilySpec::Kind::fbp);
    CHECK(s.p == 3.0);
    s = parse_family("gb:b=0.6,p=1.5");
    CHECK(s.kind == FamilySpec::Kind::gb);
    CHECK(parse_family("Flog").kind == FamilySpec::Kind::flog);
    CHECK(parse_family("one").kind == FamilySpec::Kind::one);

    CHECK_THROWS_AS(parse_family("fb2:b=0.5"), std::invalid_argument);
    CHECK_THROWS_AS(parse_family("fb1:q=0.5"), std::invalid_argument);
    CHECK_THROWS_AS(parse_family("fbp:b=0.5,p=x"), std::invalid_argument);
    // range checks live in the constructors, reached through make_family
    CHECK_THROWS_AS(make_family(parse_family("fb1:b=1.0"), -1.0, 4), std::invalid_argument);
    CHECK_THROWS_AS(make_family(parse_family("fbp:b=0.5,p=0"), -1.0, 4), std::invalid_argument);
}

TEST_CASE("make_family honors the override radius") {
    const FamilySpec s = parse_family("fb1:b=0.9");
    const TaylorPoly at_spec = make_family(s, -1.0, 16);
    const TaylorPoly at_half = make_family(s, 0.5, 16);
    CHECK(at_spec.a[1].real() == doctest::Approx((1 - 0.81) * 2 * 0.9));
    CHECK(at_half.a[1].real() == doctest::Approx((1 - 0.25) * 2 * 0.5));
}

TEST_CASE("coefficient files round-trip exactly") {
    TaylorPoly f;
    f.a = {cplx(1.0), cplx(1.0 / 3.0), cplx(2.2250738585072014e-308),
           cplx(-0.75), cplx(6.02214076e23)};
    const char* path = "coeff_roundtrip_test.txt";
    write_coeff_column(path, f);
    const std::vector<double> back = read_coeff_column(path);
    REQUIRE(back.size() == f.a.size());
    for (std::size_t i = 0; i < back.size(); ++i) CHECK(back[i] == f.a[i].real());
    std::remove(path);

    TaylorPoly bad;
    bad.a = {cplx(1.0, 0.5)};
    CHECK_THROWS_AS(write_coeff_column(path, bad), std::invalid_argument);
    CHECK_THROWS_AS(read_coeff_column("/nonexistent/coeffs"), std::invalid_argument);
}
