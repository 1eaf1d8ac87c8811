#include "hml/fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <map>
#include <mutex>
#include <stdexcept>

namespace hml::fft {

namespace {

// The FFTW planner is not thread-safe; plan creation is serialized and plans
// (created with FFTW_ESTIMATE | FFTW_UNALIGNED) are cached per size and
// executed through the new-array interface.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

struct PlanSet {
    fftw_plan fwd = nullptr;   // r2c
    fftw_plan bwd = nullptr;   // c2r
    fftw_plan cplx = nullptr;  // forward c2c
};

PlanSet& plans_for(std::size_t n) {
    static std::map<std::size_t, PlanSet> cache;
    std::lock_guard<std::mutex> lock(planner_mutex());
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    PlanSet ps;
    std::vector<double> re(n, 0.0);
    std::vector<std::complex<double>> sp(n / 2 + 1);
    std::vector<std::complex<double>> ca(n), cb(n);
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    ps.fwd = fftw_plan_dft_r2c_1d((int)n, re.data(),
                                  reinterpret_cast<fftw_complex*>(sp.data()), flags);
    ps.bwd = fftw_plan_dft_c2r_1d((int)n, reinterpret_cast<fftw_complex*>(sp.data()),
                                  re.data(), flags);
    ps.cplx = fftw_plan_dft_1d((int)n, reinterpret_cast<fftw_complex*>(ca.data()),
                               reinterpret_cast<fftw_complex*>(cb.data()), FFTW_FORWARD,
                               flags);
    if (!ps.fwd || !ps.bwd || !ps.cplx) throw std::runtime_error("fftw plan creation failed");
    return cache.emplace(n, ps).first->second;
}

}  // namespace

std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

std::vector<std::complex<double>> rfft(const std::vector<double>& x) {
    const std::size_t n = x.size();
    if (n == 0) throw std::invalid_argument("rfft of empty input");
    PlanSet& ps = plans_for(n);
    std::vector<double> in = x;
    std::vector<std::complex<double>> out(n / 2 + 1);
    fftw_execute_dft_r2c(ps.fwd, in.data(), reinterpret_cast<fftw_complex*>(out.data()));
    return out;
}

std::vector<double> irfft(const std::vector<std::complex<double>>& spec, std::size_t n) {
    if (spec.size() != n / 2 + 1) throw std::invalid_argument("irfft spectrum size mismatch");
    PlanSet& ps = plans_for(n);
    std::vector<std::complex<double>> in = spec;  // c2r destroys its input
    std::vector<double> out(n);
    fftw_execute_dft_c2r(ps.bwd, reinterpret_cast<fftw_complex*>(in.data()), out.data());
    for (double& v : out) v /= (double)n;
    return out;
}

std::vector<double> convolve(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("convolve of empty input");
    const std::size_t full = a.size() + b.size() - 1;
    const std::size_t n = next_pow2(full);
    std::vector<double> pa(n, 0.0), pb(n, 0.0);
    std::memcpy(pa.data(), a.data(), a.size() * sizeof(double));
    std::memcpy(pb.data(), b.data(), b.size() * sizeof(double));
    auto fa = rfft(pa);
    const auto fb = rfft(pb);
    for (std::size_t i = 0; i < fa.size(); ++i) fa[i] *= fb[i];
    auto out = irfft(fa, n);
    out.resize(full);
    return out;
}

std::vector<std::complex<double>> eval_on_circle(const std::vector<std::complex<double>>& c,
                                                 double r, std::size_t m) {
    if (m < c.size()) throw std::invalid_argument("eval_on_circle needs m >= #coefficients");
    PlanSet& ps = plans_for(m);
    std::vector<std::complex<double>> in(m, 0.0), out(m);
    double rj = 1.0;
    for (std::size_t j = 0; j < c.size(); ++j) {
        in[j] = c[j] * rj;
        rj *= r;
    }
    fftw_execute_dft(ps.cplx, reinterpret_cast<fftw_complex*>(in.data()),
                     reinterpret_cast<fftw_complex*>(out.data()));
    return out;
}

}  // namespace hml::fft
