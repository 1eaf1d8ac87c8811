#include "hml/hankel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hml/fft.hpp"

namespace hml {

HankelSection hankel_section(const RadialMeasure& mu, std::size_t n, int order) {
    if (n == 0) throw std::invalid_argument("section size must be positive");
    HankelSection h;
    h.n = n;
    h.sym = moments_upto(mu, (std::int64_t)(2 * n - 1), order).mu;
    return h;
}

HankelSection hankel_from_moments(std::vector<double> moments) {
    if (moments.empty() || moments.size() % 2 == 0)
        throw std::invalid_argument("moment run must have odd length 2N-1");
    HankelSection h;
    h.n = (moments.size() + 1) / 2;
    h.sym = std::move(moments);
    return h;
}

std::vector<double> apply_naive(const HankelSection& h, const std::vector<double>& x) {
    if (x.size() != h.n) throw std::invalid_argument("vector length mismatch");
    std::vector<double> y(h.n);
    for (std::size_t i = 0; i < h.n; ++i) {
        double acc = 0.0;
        const double* row = h.sym.data() + i;
        for (std::size_t k = 0; k < h.n; ++k) acc += row[k] * x[k];
        y[i] = acc;
    }
    return y;
}

std::vector<std::vector<double>> apply_naive_block(const HankelSection& h,
                                                   const std::vector<std::vector<double>>& xs) {
    const std::size_t nv = xs.size(), n = h.n;
    for (const auto& x : xs)
        if (x.size() != n) throw std::invalid_argument("vector length mismatch");
    // interleaved layout: X[k * nv + v]
    std::vector<double> X(n * nv), Y(n * nv, 0.0);
    for (std::size_t v = 0; v < nv; ++v)
        for (std::size_t k = 0; k < n; ++k) X[k * nv + v] = xs[v][k];
    for (std::size_t i = 0; i < n; ++i) {
        const double* row = h.sym.data() + i;
        double* yi = Y.data() + i * nv;
        for (std::size_t k = 0; k < n; ++k) {
            const double s = row[k];
            const double* xk = X.data() + k * nv;
            for (std::size_t v = 0; v < nv; ++v) yi[v] += s * xk[v];
        }
    }
    std::vector<std::vector<double>> out(nv, std::vector<double>(n));
    for (std::size_t v = 0; v < nv; ++v)
        for (std::size_t i = 0; i < n; ++i) out[v][i] = Y[i * nv + v];
    return out;
}

std::vector<double> apply(const HankelSection& h, const std::vector<double>& x) {
    if (x.size() != h.n) throw std::invalid_argument("vector length mismatch");
    // y_i = sum_k sym[i+k] x_k = (sym * reverse(x))[i + N - 1]
    std::vector<double> rx(x.rbegin(), x.rend());
    const std::vector<double> conv = fft::convolve(h.sym, rx);
    return std::vector<double>(conv.begin() + (h.n - 1), conv.begin() + (2 * h.n - 1));
}

namespace {

// FFT application with a precomputed symbol spectrum (power iteration path).
struct FastApplier {
    std::size_t n, len;
    std::vector<std::complex<double>> sym_hat;

    explicit FastApplier(const HankelSection& h) : n(h.n) {
        len = fft::next_pow2(3 * n - 2);
        std::vector<double> padded(len, 0.0);
        std::copy(h.sym.begin(), h.sym.end(), padded.begin());
        sym_hat = fft::rfft(padded);
    }

    std::vector<double> operator()(const std::vector<double>& x) const {
        std::vector<double> rx(len, 0.0);
        for (std::size_t k = 0; k < n; ++k) rx[k] = x[n - 1 - k];
        auto spec = fft::rfft(rx);
        for (std::size_t i = 0; i < spec.size(); ++i) spec[i] *= sym_hat[i];
        auto conv = fft::irfft(spec, len);
        return std::vector<double>(conv.begin() + (n - 1), conv.begin() + (2 * n - 1));
    }
};

}  // namespace

NormEstimate operator_norm_truncated(const HankelSection& h, double tol, int max_iter) {
    if (tol <= 0.0) throw std::invalid_argument("tolerance must be positive");
    const std::size_t n = h.n;
    const FastApplier fast(h);
    std::vector<double> x(n, 1.0 / std::sqrt((double)n));
    NormEstimate est;
    double prev = 0.0;
    for (int it = 1; it <= max_iter; ++it) {
        const std::vector<double> y = fast(x);
        double lam = 0.0, norm2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            lam += x[i] * y[i];
            norm2 += y[i] * y[i];
        }
        const double ny = std::sqrt(norm2);
        est.history.push_back(lam);
        est.iterations = it;
        est.value = lam;
        if (ny == 0.0) {  // zero operator
            est.converged = true;
            return est;
        }
        if (it >= 3 && std::abs(lam - prev) <= tol * std::max(std::abs(lam), 1e-300)) {
            est.converged = true;
            return est;
        }
        prev = lam;
        for (std::size_t i = 0; i < n; ++i) x[i] = y[i] / ny;
    }
    return est;
}

NormEstimate operator_norm_truncated(const RadialMeasure& mu, std::size_t n, double tol,
                                     int max_iter, int order) {
    return operator_norm_truncated(hankel_section(mu, n, order), tol, max_iter);
}

std::complex<double> imu_eval(const RadialMeasure& mu, const TaylorPoly& f,
                              std::complex<double> z, int order) {
    if (std::abs(z) > 0.999)
        throw std::domain_error("imu_eval is restricted to |z| <= 0.999");
    const MeasureNodes nd = measure_nodes(mu, order);
    std::complex<double> acc = 0.0;
    for (std::size_t i = 0; i < nd.t.size(); ++i)
        acc += nd.w[i] * eval(f, nd.t[i]) / (1.0 - nd.t[i] * z);
    acc += nd.tail * eval(f, 1.0) / (1.0 - z);
    return acc;
}

double moment_series_at(const RadialMeasure& mu, double r, int order) {
    if (!(r >= 0.0 && r < 1.0)) throw std::domain_error("radius must lie in [0, 1)");
    const MeasureNodes nd = measure_nodes(mu, order);
    double acc = 0.0;
    for (std::size_t i = 0; i < nd.t.size(); ++i) acc += nd.w[i] / (1.0 - r * nd.t[i]);
    return acc + nd.tail / (1.0 - r);
}

AgreementReport agreement_check(const RadialMeasure& mu, const TaylorPoly& f, double radius,
                                int n_angles, double tol, int order) {
    if (!(radius > 0.0 && radius <= 0.99))
        throw std::invalid_argument("agreement radius must lie in (0, 0.99]");
    if (n_angles < 1) throw std::invalid_argument("need at least one angle");
    AgreementReport rep;
    rep.tol = tol;

    // Coefficient side: c_n = sum_k mu_{n+k} a_k, truncation raised until the
    // geometric tail bound at the outer radius falls below tol / 10.
    const std::size_t deg = f.a.size() - 1;
    std::vector<double> areal(f.a.size());
    for (std::size_t k = 0; k < f.a.size(); ++k) {
        if (std::abs(f.a[k].imag()) > 0.0)
            throw std::invalid_argument("agreement check expects real coefficients");
        areal[k] = f.a[k].real();
    }
    std::vector<double> arev(areal.rbegin(), areal.rend());
    std::vector<double> c;
    std::size_t N = 256;
    for (;; N *= 2) {
        const MomentTable tab = moments_upto(mu, (std::int64_t)(N + deg + 1), order);
        const std::vector<double> conv = fft::convolve(tab.mu, arev);
        c.assign(conv.begin() + deg, conv.begin() + deg + N + 1);
        double c_cap = 0.0;
        for (std::size_t i = N >= 16 ? N - 15 : 0; i <= N; ++i)
            c_cap = std::max(c_cap, std::abs(c[i]));
        const double bound = c_cap * std::pow(radius, (double)N + 1.0) / (1.0 - radius);
        if (bound <= tol / 10.0 || N >= (1u << 15)) break;
    }
    rep.n_used = N;
    TaylorPoly image;
    image.a.assign(c.begin(), c.end());

    for (int ring = 1; ring <= 3; ++ring) {
        const double rho = radius * ring / 3.0;
        for (int k = 0; k < n_angles; ++k) {
            const double th = 2.0 * M_PI * k / n_angles;
            const std::complex<double> z = std::polar(rho, th);
            const std::complex<double> lhs = eval(image, z);
            const std::complex<double> rhs = imu_eval(mu, f, z, order);
            const double d = std::abs(lhs - rhs);
            rep.samples.push_back({z, d});
            rep.max_abs_diff = std::max(rep.max_abs_diff, d);
        }
    }
    rep.ok = rep.max_abs_diff <= tol;
    return rep;
}

}  // namespace hml
