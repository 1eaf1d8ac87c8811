#include "hml/measure.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "hml/quadrature.hpp"

namespace hml {

namespace {

constexpr int kPanels = 72;          // dyadic panels in u = 1 - t down to 2^-72
constexpr double kLn2 = 0.6931471805599453;

double density_u(const PowLogMeasure& m, double u) {
    const double lu = std::log(1.0 / u);
    double d = 0.0;
    for (const auto& trm : m.terms) {
        double v = trm.c * std::pow(u, trm.alpha - 1.0) * std::pow(1.0 + lu, trm.gamma);
        for (int k = 0; k < trm.log_power; ++k) v *= lu;
        d += v;
    }
    return d;
}

// integral over v in [L, inf) of c e^{-alpha v} (1+v)^gamma v^m dv,
// i.e. the mass of one term above b with L = log(1/(1-b)).
double term_tail(const PowLogTerm& trm, double L) {
    const auto& rule = quad::gauss_legendre(16);
    const double scale = trm.c * std::exp(-trm.alpha * L);
    if (scale == 0.0) return 0.0;
    double acc = 0.0;
    for (int k = 0;; ++k) {
        if (trm.alpha * k > 760.0) break;
        double panel = 0.0;
        for (std::size_t i = 0; i < rule.x.size(); ++i) {
            const double s = k + 0.5 + 0.5 * rule.x[i];
            const double v = L + s;
            double val = std::exp(-trm.alpha * s) * std::pow(1.0 + v, trm.gamma);
            for (int q = 0; q < trm.log_power; ++q) val *= v;
            panel += 0.5 * rule.w[i] * val;
        }
        acc += panel;
        if (k >= 8 && std::abs(panel) <= 1e-18 * std::abs(acc)) break;
    }
    return scale * acc;
}

double powlog_tail(const PowLogMeasure& m, double L) {
    double s = 0.0;
    for (const auto& trm : m.terms) s += term_tail(trm, L);
    return s;
}

// Piecewise-linear density value of a TabulatedMeasure at t (0 outside grid).
double tab_density(const TabulatedMeasure& m, double t) {
    if (m.t.empty() || t < m.t.front() || t > m.t.back()) return 0.0;
    auto it = std::upper_bound(m.t.begin(), m.t.end(), t);
    std::size_t hi = std::min<std::size_t>(it - m.t.begin(), m.t.size() - 1);
    if (hi == 0) hi = 1;
    const std::size_t lo = hi - 1;
    const double span = m.t[hi] - m.t[lo];
    const double lam = span > 0 ? (t - m.t[lo]) / span : 0.0;
    double d = (1.0 - lam) * m.density[lo] + lam * m.density[hi];
    if (m.log_power > 0) {
        const double lg = std::log(1.0 / (1.0 - t));
        for (int q = 0; q < m.log_power; ++q) d *= lg;
    }
    return d;
}

struct LinFit2 {
    double A = 0.0, C = 0.0, sse = 0.0;
};

// least squares V ~ A + C * reg (mean-centered for stability)
LinFit2 fit_offset_scale(const std::vector<double>& reg, const std::vector<double>& V) {
    const std::size_t n = reg.size();
    double mr = 0.0, mv = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mr += reg[i];
        mv += V[i];
    }
    mr /= n;
    mv /= n;
    double srr = 0.0, srv = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        srr += (reg[i] - mr) * (reg[i] - mr);
        srv += (reg[i] - mr) * (V[i] - mv);
    }
    LinFit2 out;
    out.C = srr > 0.0 ? srv / srr : 0.0;
    out.A = mv - out.C * mr;
    for (std::size_t i = 0; i < n; ++i) {
        const double e = V[i] - out.A - out.C * reg[i];
        out.sse += e * e;
    }
    return out;
}

struct ModelFit {
    double gamma = 0.0, delta = 0.0, A = 0.0, C = 0.0, sse = 0.0;
};

ModelFit eval_model(const std::vector<double>& omb, const std::vector<double>& lam,
                    const std::vector<double>& V, double g, double d) {
    std::vector<double> reg(omb.size());
    for (std::size_t i = 0; i < omb.size(); ++i)
        reg[i] = std::pow(omb[i], -g) * std::pow(lam[i], d);
    LinFit2 f = fit_offset_scale(reg, V);
    return {g, d, f.A, f.C, f.sse};
}

template <typename F>
double golden_min(F&& f, double a, double b, int iters = 90) {
    const double gr = 0.6180339887498949;
    double c = b - gr * (b - a), d = a + gr * (b - a);
    double fc = f(c), fd = f(d);
    for (int i = 0; i < iters; ++i) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

// Coordinate-descent least squares of V ~ A + C (1-b)^{-g} Lam^d over a box.
ModelFit hierarchical_fit(const std::vector<double>& omb, const std::vector<double>& lam,
                          const std::vector<double>& V, double glo, double ghi,
                          double dlo, double dhi) {
    auto sse_g = [&](double g, double d) { return eval_model(omb, lam, V, g, d).sse; };
    double g1 = golden_min([&](double g) { return sse_g(g, 0.0); }, glo, ghi);
    double d1 = golden_min([&](double d) { return sse_g(0.0, d); }, dlo, dhi);
    double g0, d0;
    if (sse_g(g1, 0.0) < sse_g(0.0, d1)) {
        g0 = g1;
        d0 = 0.0;
    } else {
        g0 = 0.0;
        d0 = d1;
    }
    for (int round = 0; round < 3; ++round) {
        d0 = golden_min([&](double d) { return sse_g(g0, d); }, dlo, dhi);
        g0 = golden_min([&](double g) { return sse_g(g, d0); }, glo, ghi);
    }
    return eval_model(omb, lam, V, g0, d0);
}

// 3-parameter linear least squares log V ~ c0 + g*log(1/(1-b)) + d*log(Lam),
// used for data that decays to zero (no additive offset to absorb it).
void loglog_fit(const std::vector<double>& omb, const std::vector<double>& lam,
                const std::vector<double>& V, double& g, double& d) {
    const std::size_t n = omb.size();
    std::array<std::array<double, 3>, 3> M{};
    std::array<double, 3> rhs{};
    for (std::size_t i = 0; i < n; ++i) {
        const std::array<double, 3> row = {1.0, std::log(1.0 / omb[i]), std::log(lam[i])};
        const double y = std::log(V[i]);
        for (int a = 0; a < 3; ++a) {
            rhs[a] += row[a] * y;
            for (int b = 0; b < 3; ++b) M[a][b] += row[a] * row[b];
        }
    }
    // Gaussian elimination with partial pivoting on the 3x3 normal equations.
    std::array<int, 3> piv = {0, 1, 2};
    for (int col = 0; col < 3; ++col) {
        int best = col;
        for (int r = col + 1; r < 3; ++r)
            if (std::abs(M[piv[r]][col]) > std::abs(M[piv[best]][col])) best = r;
        std::swap(piv[col], piv[best]);
        const double diag = M[piv[col]][col];
        if (std::abs(diag) < 1e-300) return;
        for (int r = col + 1; r < 3; ++r) {
            const double f = M[piv[r]][col] / diag;
            for (int cc = col; cc < 3; ++cc) M[piv[r]][cc] -= f * M[piv[col]][cc];
            rhs[piv[r]] -= f * rhs[piv[col]];
        }
    }
    std::array<double, 3> sol{};
    for (int col = 2; col >= 0; --col) {
        double v = rhs[piv[col]];
        for (int cc = col + 1; cc < 3; ++cc) v -= M[piv[col]][cc] * sol[cc];
        sol[col] = v / M[piv[col]][col];
    }
    g = sol[1];
    d = sol[2];
}

}  // namespace

AtomicMeasure make_atomic(const std::vector<std::pair<double, double>>& atoms) {
    if (atoms.empty()) throw std::invalid_argument("atomic measure needs at least one atom");
    AtomicMeasure m;
    for (const auto& [t, w] : atoms) {
        if (!(t >= 0.0 && t < 1.0))
            throw std::invalid_argument("atom location must lie in [0,1)");
        if (!(w > 0.0)) throw std::invalid_argument("atom weight must be positive");
        m.atoms.push_back({t, w});
    }
    std::sort(m.atoms.begin(), m.atoms.end(),
              [](const auto& a, const auto& b) { return a.t < b.t; });
    return m;
}

PowLogMeasure make_powlog(double c, double alpha, double gamma) {
    if (!(c > 0.0)) throw std::invalid_argument("powlog coefficient must be positive");
    if (!(alpha > 0.0)) throw std::invalid_argument("powlog alpha must be positive");
    if (!std::isfinite(gamma)) throw std::invalid_argument("powlog gamma must be finite");
    PowLogMeasure m;
    m.terms.push_back({c, alpha, gamma, 0});
    return m;
}

TabulatedMeasure make_tabulated(std::vector<double> t, std::vector<double> density) {
    if (t.size() < 2 || t.size() != density.size())
        throw std::invalid_argument("tabulated measure needs matching grids of size >= 2");
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (i > 0 && !(t[i] > t[i - 1]))
            throw std::invalid_argument("tabulated grid must be strictly increasing");
        if (!(density[i] >= 0.0))
            throw std::invalid_argument("tabulated density must be nonnegative");
    }
    if (!(t.front() >= 0.0 && t.back() < 1.0))
        throw std::invalid_argument("tabulated grid must lie in [0,1)");
    return {std::move(t), std::move(density), 0};
}

RadialMeasure lebesgue() { return make_powlog(1.0, 1.0, 0.0); }

MeasureNodes measure_nodes(const RadialMeasure& mu, int order) {
    MeasureNodes out;
    if (const auto* a = std::get_if<AtomicMeasure>(&mu)) {
        for (const auto& atom : a->atoms) {
            out.t.push_back(atom.t);
            out.w.push_back(atom.w);
            out.total += atom.w;
        }
        return out;
    }
    if (const auto* p = std::get_if<PowLogMeasure>(&mu)) {
        const auto& rule = quad::gauss_legendre(order);
        for (int j = 0; j < kPanels; ++j) {
            const double uhi = std::pow(0.5, j), ulo = 0.5 * uhi;
            const double mid = 0.5 * (ulo + uhi), half = 0.5 * (uhi - ulo);
            for (std::size_t i = 0; i < rule.x.size(); ++i) {
                const double u = mid + half * rule.x[i];
                out.t.push_back(1.0 - u);
                out.w.push_back(half * rule.w[i] * density_u(*p, u));
            }
        }
        out.tail = powlog_tail(*p, kPanels * kLn2);
        out.total = powlog_tail(*p, 0.0);
        return out;
    }
    const auto& tab = std::get<TabulatedMeasure>(mu);
    const int sub_order = std::max(8, std::min(order, 16));
    const auto& rule = quad::gauss_legendre(sub_order);
    const double span = tab.t.back() - tab.t.front();
    const double max_w = std::max((1.0 - tab.t.back()) / 8.0, span / 2048.0);
    for (std::size_t s = 0; s + 1 < tab.t.size(); ++s) {
        const double a = tab.t[s], b = tab.t[s + 1];
        const int pieces = std::max(1, (int)std::ceil((b - a) / max_w));
        for (int k = 0; k < pieces; ++k) {
            const double lo = a + (b - a) * k / pieces;
            const double hi = a + (b - a) * (k + 1) / pieces;
            const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
            for (std::size_t i = 0; i < rule.x.size(); ++i) {
                const double t = mid + half * rule.x[i];
                out.t.push_back(t);
                out.w.push_back(half * rule.w[i] * tab_density(tab, t));
            }
        }
    }
    for (double w : out.w) out.total += w;
    return out;
}

double moment(const RadialMeasure& mu, std::int64_t n, int order) {
    if (n < 0) throw std::invalid_argument("moment index must be nonnegative");
    if (n > kMaxMomentIndex)
        throw std::invalid_argument("moment index exceeds certified range");
    const MeasureNodes nd = measure_nodes(mu, order);
    double acc = 0.0;
    for (std::size_t i = 0; i < nd.t.size(); ++i)
        acc += nd.w[i] * std::pow(nd.t[i], (double)n);
    return acc + nd.tail;
}

MomentTable moments_upto(const RadialMeasure& mu, std::int64_t count, int order) {
    if (count <= 0) throw std::invalid_argument("moment count must be positive");
    if (count - 1 > kMaxMomentIndex)
        throw std::invalid_argument("moment index exceeds certified range");
    const MeasureNodes nd = measure_nodes(mu, order);
    const std::size_t m = nd.t.size();
    MomentTable out;
    out.mu.resize(count);
    std::vector<double> p(m, 1.0);
    for (std::int64_t n = 0; n < count; ++n) {
        double acc = 0.0;
        for (std::size_t i = 0; i < m; ++i) acc += nd.w[i] * p[i];
        out.mu[n] = acc + nd.tail;
        for (std::size_t i = 0; i < m; ++i) {
            p[i] *= nd.t[i];
            p[i] = p[i] >= 1e-300 ? p[i] : 0.0;  // flush denormal powers
        }
    }
    if (std::holds_alternative<AtomicMeasure>(mu)) {
        out.err_bound = 1e-14 * (std::abs(out.mu[0]) + 1.0e-300) *
                        (1.0 + std::log2((double)count + 1.0));
        return out;
    }
    // Spot-check a log-spaced index set at reduced order; the gap between
    // orders dominates the residual error of the full-order table.
    const int low_order = std::max(8, order * 2 / 3);
    const MeasureNodes lo = measure_nodes(mu, low_order);
    double max_diff = 0.0;
    for (std::int64_t n = 0; n < count; n = (n == 0 ? 1 : n * 2)) {
        double acc = 0.0;
        for (std::size_t i = 0; i < lo.t.size(); ++i)
            acc += lo.w[i] * std::pow(lo.t[i], (double)n);
        max_diff = std::max(max_diff, std::abs(acc + lo.tail - out.mu[n]));
    }
    out.err_bound = 4.0 * max_diff + 8e-16 * std::abs(out.mu[0]);
    return out;
}

double tail_mass(const RadialMeasure& mu, double b) {
    if (b >= 1.0) return 0.0;
    if (const auto* a = std::get_if<AtomicMeasure>(&mu)) {
        double s = 0.0;
        for (const auto& atom : a->atoms)
            if (atom.t >= b) s += atom.w;
        return s;
    }
    if (const auto* p = std::get_if<PowLogMeasure>(&mu)) {
        const double L = b <= 0.0 ? 0.0 : std::log(1.0 / (1.0 - b));
        return powlog_tail(*p, L);
    }
    const auto& tab = std::get<TabulatedMeasure>(mu);
    const auto& rule = quad::gauss_legendre(16);
    double s = 0.0;
    for (std::size_t seg = 0; seg + 1 < tab.t.size(); ++seg) {
        const double lo = std::max(tab.t[seg], b), hi = tab.t[seg + 1];
        if (hi <= lo) continue;
        const int pieces = 4;
        for (int k = 0; k < pieces; ++k) {
            const double a0 = lo + (hi - lo) * k / pieces;
            const double a1 = lo + (hi - lo) * (k + 1) / pieces;
            const double mid = 0.5 * (a0 + a1), half = 0.5 * (a1 - a0);
            for (std::size_t i = 0; i < rule.x.size(); ++i)
                s += half * rule.w[i] * tab_density(tab, mid + half * rule.x[i]);
        }
    }
    return s;
}

RadialMeasure log_weighted(const RadialMeasure& mu) {
    if (const auto* a = std::get_if<AtomicMeasure>(&mu)) {
        AtomicMeasure out;
        for (const auto& atom : a->atoms) {
            const double w = atom.w * std::log(1.0 / (1.0 - atom.t));
            if (w > 0.0) out.atoms.push_back({atom.t, w});
        }
        if (out.atoms.empty())
            throw std::invalid_argument("log weight annihilates every atom (all at t=0)");
        return out;
    }
    if (const auto* p = std::get_if<PowLogMeasure>(&mu)) {
        // log(1/(1-t)) == log(e/(1-t)) - 1, so the weight is exact in-family.
        PowLogMeasure out;
        for (const auto& trm : p->terms) {
            out.terms.push_back({trm.c, trm.alpha, trm.gamma + 1.0, trm.log_power});
            out.terms.push_back({-trm.c, trm.alpha, trm.gamma, trm.log_power});
        }
        return out;
    }
    TabulatedMeasure out = std::get<TabulatedMeasure>(mu);
    out.log_power += 1;
    return out;
}

std::vector<double> geometric_b_grid(int jmin, int jmax) {
    if (jmin < 0 || jmax < jmin) throw std::invalid_argument("bad geometric grid range");
    std::vector<double> b;
    for (int j = jmin; j <= jmax; ++j) b.push_back(1.0 - std::pow(0.5, j));
    return b;
}

CarlesonReport carleson_report(const RadialMeasure& mu, double s, double alpha_log,
                               const std::vector<double>& b_grid) {
    if (b_grid.empty()) throw std::invalid_argument("carleson grid must be nonempty");
    CarlesonReport rep;
    rep.s = s;
    rep.alpha_log = alpha_log;
    for (double b : b_grid) {
        if (!(b >= 0.0 && b < 1.0))
            throw std::invalid_argument("carleson grid values must lie in [0,1)");
        const double omb = 1.0 - b;
        const double K = tail_mass(mu, b) * std::pow(1.0 + std::log(1.0 / omb), alpha_log) /
                         std::pow(omb, s);
        rep.b.push_back(b);
        rep.K.push_back(K);
        if (K >= rep.sup_K) {
            rep.sup_K = K;
            rep.sup_b = b;
        }
    }
    // Ratio rule on the last decade of 1-b ...
    double omb_min = 1.0;
    for (double b : rep.b) omb_min = std::min(omb_min, 1.0 - b);
    std::vector<double> decade;
    for (std::size_t i = 0; i < rep.b.size(); ++i)
        if (1.0 - rep.b[i] <= 10.0 * omb_min) decade.push_back(rep.K[i]);
    std::vector<double> sorted = rep.K;
    std::sort(sorted.begin(), sorted.end());
    const double median = sorted[sorted.size() / 2];
    bool ratio_fire = false;
    if (decade.size() >= 2 && decade.front() > 0.0) {
        bool mono = true;
        for (std::size_t i = 1; i < decade.size(); ++i)
            if (decade[i] < decade[i - 1]) mono = false;
        if (mono && decade.back() / decade.front() >= 1.5 && rep.sup_K >= 10.0 * median)
            ratio_fire = true;
    }
    // ... augmented by the growth fit, which also catches pure log divergence.
    bool fit_fire = false;
    bool all_pos = true;
    for (double K : rep.K)
        if (!(K > 0.0)) all_pos = false;
    if (all_pos && rep.K.size() >= 8) {
        std::vector<std::pair<double, double>> pairs;
        for (std::size_t i = 0; i < rep.b.size(); ++i) pairs.push_back({rep.b[i], rep.K[i]});
        const GrowthFit gf = growth_exponent_fit(pairs);
        if (gf.growth_detected && std::max(gf.gamma, gf.delta) > 0.15) fit_fire = true;
    }
    rep.diverging = ratio_fire || fit_fire;
    if (ratio_fire && fit_fire)
        rep.note = "diverging (ratio rule and growth fit)";
    else if (ratio_fire)
        rep.note = "diverging (ratio rule)";
    else if (fit_fire)
        rep.note = "diverging (growth fit)";
    else
        rep.note = "bounded on the sampled grid";
    return rep;
}

GrowthFit growth_exponent_fit(const std::vector<std::pair<double, double>>& pairs) {
    if (pairs.size() < 8)
        throw std::invalid_argument("growth fit needs at least 8 samples");
    std::vector<std::pair<double, double>> pts = pairs;
    std::sort(pts.begin(), pts.end());
    const std::size_t n = pts.size();
    std::vector<double> omb(n), lam(n), V(n);
    double vmax = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double b = pts[i].first;
        if (!(b >= 0.0 && b < 1.0))
            throw std::invalid_argument("growth fit needs b in [0,1)");
        if (!(pts[i].second > 0.0))
            throw std::invalid_argument("growth fit needs positive values");
        omb[i] = 1.0 - b;
        lam[i] = 1.0 + std::log(1.0 / omb[i]);
        V[i] = pts[i].second;
        vmax = std::max(vmax, std::abs(V[i]));
    }
    GrowthFit out;
    auto rms_rel = [&](double sse, std::size_t cnt) {
        return std::sqrt(sse / (double)cnt) / vmax;
    };
    std::size_t i0 = 0;
    for (std::size_t i = 1; i < n; ++i)
        if (V[i] < V[i0]) i0 = i;

    if (i0 == n - 1) {
        // Monotone-tail decay: decide "settles to a positive level" vs
        // "decays to zero" by whether the fitted offset dominates at b_max.
        ModelFit mf = hierarchical_fit(omb, lam, V, -4.0, 0.0, -4.0, 0.0);
        const double g_end = std::pow(omb.back(), -mf.gamma) * std::pow(lam.back(), mf.delta);
        if (mf.C <= 0.0 || std::max(mf.A, 0.0) >= mf.C * g_end) {
            out.note = "bounded: settles to a positive level";
            out.residual = rms_rel(mf.sse, n);
            return out;
        }
        loglog_fit(omb, lam, V, out.gamma, out.delta);
        ModelFit check = eval_model(omb, lam, V, out.gamma, out.delta);
        out.residual = rms_rel(check.sse, n);
        out.note = "decays to zero";
        return out;
    }
    if (i0 + 4 >= n) {
        out.note = "bounded: dip near the end of the grid";
        return out;
    }

    std::vector<double> ow(omb.begin() + i0, omb.end());
    std::vector<double> lw(lam.begin() + i0, lam.end());
    std::vector<double> W(V.begin() + i0, V.end());
    std::vector<double> D(W.size() - 1);
    bool all_up = true;
    for (std::size_t i = 0; i + 1 < W.size(); ++i) {
        D[i] = W[i + 1] - W[i];
        if (!(D[i] > 0.0)) all_up = false;
    }
    if (all_up && D.size() >= 5) {
        const double q = std::pow(D.back() / D.front(), 1.0 / (double)(D.size() - 1));
        if (q <= 0.93) {
            std::ostringstream os;
            os << "bounded: increments decay geometrically (q=" << q << ")";
            out.note = os.str();
            return out;
        }
    }
    ModelFit mf = hierarchical_fit(ow, lw, W, 0.0, 4.0, -4.0, 4.0);
    if (mf.C <= 0.0) {
        out.note = "bounded: no growing component";
        out.residual = rms_rel(mf.sse, W.size());
        return out;
    }
    out.gamma = mf.gamma;
    out.delta = mf.delta;
    out.residual = rms_rel(mf.sse, W.size());
    out.growth_detected = true;
    out.note = "growing";
    return out;
}

namespace {

double parse_double(const std::string& tok) {
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

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

}  // namespace

RadialMeasure parse_measure(const std::string& text) {
    if (text == "lebesgue") return lebesgue();
    const auto colon = text.find(':');
    const std::string head = text.substr(0, colon);
    const std::string rest = colon == std::string::npos ? "" : text.substr(colon + 1);
    if (head == "atoms") {
        std::vector<std::pair<double, double>> atoms;
        for (const std::string& item : split(rest, ',')) {
            const auto parts = split(item, ':');
            if (parts.size() != 2)
                throw std::invalid_argument("bad atom token '" + item + "'");
            atoms.push_back({parse_double(parts[0]), parse_double(parts[1])});
        }
        return make_atomic(atoms);
    }
    if (head == "powlog") {
        double c = 1.0, alpha = 1.0, gamma = 0.0;
        bool saw_c = false, saw_a = false, saw_g = false;
        for (const std::string& item : split(rest, ',')) {
            const auto kv = split(item, '=');
            if (kv.size() != 2)
                throw std::invalid_argument("bad powlog token '" + item + "'");
            if (kv[0] == "c") {
                c = parse_double(kv[1]);
                saw_c = true;
            } else if (kv[0] == "alpha") {
                alpha = parse_double(kv[1]);
                saw_a = true;
            } else if (kv[0] == "gamma") {
                gamma = parse_double(kv[1]);
                saw_g = true;
            } else {
                throw std::invalid_argument("unknown powlog key '" + kv[0] + "'");
            }
        }
        if (!saw_c || !saw_a || !saw_g)
            throw std::invalid_argument("powlog needs c=, alpha=, gamma=");
        return make_powlog(c, alpha, gamma);
    }
    if (head == "table") {
        std::ifstream in(rest);
        if (!in) throw std::invalid_argument("cannot open table file '" + rest + "'");
        std::vector<double> t, d;
        std::string line;
        while (std::getline(in, line)) {
            const auto hash = line.find('#');
            if (hash != std::string::npos) line.resize(hash);
            std::istringstream ls(line);
            double tv, dv;
            if (ls >> tv >> dv) {
                t.push_back(tv);
                d.push_back(dv);
            }
        }
        return make_tabulated(std::move(t), std::move(d));
    }
    throw std::invalid_argument("unknown measure '" + head + "'");
}

std::string describe(const RadialMeasure& mu) {
    std::ostringstream os;
    if (const auto* a = std::get_if<AtomicMeasure>(&mu)) {
        os << "atoms";
        for (const auto& atom : a->atoms) os << " (" << atom.t << "," << atom.w << ")";
        return os.str();
    }
    if (const auto* p = std::get_if<PowLogMeasure>(&mu)) {
        os << "powlog";
        for (const auto& trm : p->terms) {
            os << " [c=" << trm.c << " alpha=" << trm.alpha << " gamma=" << trm.gamma;
            if (trm.log_power) os << " logpow=" << trm.log_power;
            os << "]";
        }
        return os.str();
    }
    const auto& tab = std::get<TabulatedMeasure>(mu);
    os << "table(" << tab.t.size() << " points";
    if (tab.log_power) os << ", logpow=" << tab.log_power;
    os << ")";
    return os.str();
}

}  // namespace hml
