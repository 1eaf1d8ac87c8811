#pragma once

#include <vector>

namespace hml::quad {

/// Gauss-Legendre rule on [-1, 1], nodes ascending. Rules are cached per
/// order; the returned reference stays valid for the process lifetime.
struct Rule {
    std::vector<double> x;
    std::vector<double> w;
};

const Rule& gauss_legendre(int order);

/// Integrate `f` over [a, b] with a single Gauss-Legendre rule.
template <typename F>
double integrate(F&& f, double a, double b, int order) {
    const Rule& r = gauss_legendre(order);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double acc = 0.0;
    for (std::size_t i = 0; i < r.x.size(); ++i)
        acc += r.w[i] * f(mid + half * r.x[i]);
    return half * acc;
}

}  // namespace hml::quad
