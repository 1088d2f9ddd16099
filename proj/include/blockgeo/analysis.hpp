#pragma once

// Quantitative inequality checkers and growth / entropy estimators.

#include <blockgeo/blocking.hpp>

#include <cmath>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace blockgeo {

struct BoundCheck {
    std::string name;
    std::vector<std::pair<std::string, double>> inputs;
    double lhs = 0.0;
    double rhs = 0.0;
    bool satisfied = false;
    std::string notes;
};

/// Lemma bound m_T <= n_T <= (T/2delta)^2 * m_T; zero m forces zero n.
inline BoundCheck check_mn_bound(double n_T, double m_T, double T, double delta) {
    if (n_T < 0 || m_T < 0) throw std::invalid_argument("negative count");
    if (delta <= 0 || T <= 0) throw std::invalid_argument("T and delta must be positive");
    BoundCheck c;
    c.name = "mn_bound";
    c.inputs = {{"n_T", n_T}, {"m_T", m_T}, {"T", T}, {"delta", delta}};
    double factor = (T / (2.0 * delta)) * (T / (2.0 * delta));
    c.lhs = n_T;
    c.rhs = factor * m_T;
    c.satisfied = (m_T <= n_T) && (n_T <= c.rhs) && !(m_T == 0 && n_T > 0);
    return c;
}

/// Split bound m_T(x,y;z) <= m_{T/2}(x,z) + m_{T/2}(z,y).
inline BoundCheck check_split_bound(double m_xyz, double m_xz_half, double m_zy_half) {
    BoundCheck c;
    c.name = "split_bound";
    c.inputs = {{"m_xyz", m_xyz}, {"m_xz_half", m_xz_half}, {"m_zy_half", m_zy_half}};
    c.lhs = m_xyz;
    c.rhs = m_xz_half + m_zy_half;
    c.satisfied = c.lhs <= c.rhs;
    return c;
}

/// Uniform-security growth bound n_T < (s/2) (T/delta)^{3 + log2 s}; the
/// intermediate connecting-count bound 2s (T/delta)^{1 + log2 s} is reported
/// in the notes.
inline BoundCheck check_uniform_security_bound(double n_T, double T, double delta, double s) {
    if (s < 1 || delta <= 0 || T <= 0) throw std::invalid_argument("bad inputs");
    BoundCheck c;
    c.name = "uniform_security_bound";
    c.inputs = {{"n_T", n_T}, {"T", T}, {"delta", delta}, {"s", s}};
    double log2s = std::log2(s);
    c.lhs = n_T;
    c.rhs = (s / 2.0) * std::pow(T / delta, 3.0 + log2s);
    c.satisfied = c.lhs < c.rhs;
    double m_bound = 2.0 * s * std::pow(T / delta, 1.0 + log2s);
    c.notes = "intermediate m bound: " + std::to_string(m_bound);
    return c;
}

struct CountCurveView {
    const std::vector<Rat>* grid;
    const std::vector<std::size_t>* n;
};

/// e^{h1 T} <= n_T <= e^{h2 T} on the curve window above T_min; the
/// insecurity conclusion additionally needs h2 < 2 h1, flagged in the notes.
inline BoundCheck check_entropy_window(const CountCurve& curve, double h1, double h2,
                                       double t_min = 0.0) {
    if (h1 <= 0 || h2 <= 0) throw std::invalid_argument("rates must be positive");
    BoundCheck c;
    c.name = "entropy_window";
    c.inputs = {{"h1", h1}, {"h2", h2}, {"t_min", t_min}};
    bool any = false;
    bool ok = true;
    for (std::size_t i = 0; i < curve.grid.size(); ++i) {
        double T = to_double(curve.grid[i]);
        if (T < t_min) continue;
        any = true;
        double n = static_cast<double>(curve.n[i]);
        if (!(std::exp(h1 * T) <= n && n <= std::exp(h2 * T))) {
            ok = false;
            c.lhs = n;
            c.rhs = std::exp(h2 * T);
        }
    }
    if (!any) throw std::invalid_argument("empty window");
    c.satisfied = ok;
    if (h2 >= 2.0 * h1) c.notes = "flag: h2 >= 2*h1, insecurity conclusion unavailable";
    return c;
}

enum class GrowthModel { Polynomial, Exponential };

struct GrowthFit {
    GrowthModel model = GrowthModel::Polynomial;
    double parameter = 0.0;  // degree d or rate h
    double residual = 0.0;   // RMS residual on the log scale
    double window_lo = 0.0;
    double window_hi = 0.0;
    std::size_t dropped_zero_counts = 0;
    std::vector<double> grid;       // T values actually used
    std::vector<double> log_vals;   // fitted log counts / log averages
    std::vector<double> se;         // batch-means standard errors (estimators only)
};

namespace detail {

struct LsFit {
    double slope = 0.0;
    double rms = 0.0;
};

inline LsFit least_squares(const std::vector<double>& xs, const std::vector<double>& ys) {
    const std::size_t n = xs.size();
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    LsFit f;
    f.slope = sxy / sxx;
    double icept = my - f.slope * mx;
    double ss = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double r = ys[i] - (icept + f.slope * xs[i]);
        ss += r * r;
    }
    f.rms = std::sqrt(ss / n);
    return f;
}

}  // namespace detail

/// Least-squares growth fit over the upper half of the T window by default.
/// Polynomial: slope of log n vs log T. Exponential: slope of log n vs T.
/// Grid points with zero count are dropped and recorded.
inline GrowthFit fit_growth(const CountCurve& curve, GrowthModel model,
                            double window_fraction = 0.5) {
    std::vector<double> ts, logs;
    std::size_t dropped = 0;
    double tmin = to_double(curve.grid.front());
    double tmax = to_double(curve.grid.back());
    double cut = tmax - window_fraction * (tmax - tmin);
    for (std::size_t i = 0; i < curve.grid.size(); ++i) {
        double T = to_double(curve.grid[i]);
        if (T < cut) continue;
        if (curve.n[i] == 0) {
            ++dropped;
            continue;
        }
        ts.push_back(T);
        logs.push_back(std::log(static_cast<double>(curve.n[i])));
    }
    if (ts.size() < 4) throw std::invalid_argument("need at least 4 grid points with positive counts");
    std::vector<double> xs = ts;
    if (model == GrowthModel::Polynomial)
        for (auto& x : xs) x = std::log(x);
    auto ls = detail::least_squares(xs, logs);
    GrowthFit fit;
    fit.model = model;
    fit.parameter = ls.slope;
    fit.residual = ls.rms;
    fit.window_lo = ts.front();
    fit.window_hi = ts.back();
    fit.dropped_zero_counts = dropped;
    fit.grid = ts;
    fit.log_vals = logs;
    return fit;
}

// ---------------------------------------------------------------------------
// Monte-Carlo estimators

namespace detail {

inline TorusPoint sample_torus_point(const LatticeTorus& t, std::mt19937_64& rng) {
    // dyadic rationals with denominator 2^20: uniform to well below any length
    // scale in play and still exact
    const Int den = Int(1) << 20;
    RatVec c(t.dim);
    for (int i = 0; i < t.dim; ++i) {
        std::uint64_t r = rng() & ((std::uint64_t(1) << 20) - 1);
        c[i] = Rat(Int(r), den);
    }
    return TorusPoint{std::move(c)};
}

inline DiskPoint sample_octagon_point(const Genus2Surface& s, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const double cmax = std::cosh(s.octagon_circumradius) - 1.0;
    for (;;) {
        double rho = std::acosh(1.0 + unif(rng) * cmax);
        double th = 2.0 * M_PI * unif(rng);
        Complex z = std::tanh(rho / 2.0) * std::polar(1.0, th);
        if (in_fundamental_octagon(s, z)) return DiskPoint{z};
    }
}

struct BatchStats {
    double mean = 0.0;
    double se = 0.0;  // batch-means standard error, 10 batches
};

inline BatchStats batch_means(const std::vector<double>& xs) {
    const std::size_t nb = 10;
    BatchStats st;
    if (xs.empty()) return st;
    for (double x : xs) st.mean += x;
    st.mean /= static_cast<double>(xs.size());
    std::size_t per = xs.size() / nb;
    if (per == 0) return st;
    std::vector<double> bm;
    for (std::size_t b = 0; b < nb; ++b) {
        double m = 0;
        for (std::size_t i = b * per; i < (b + 1) * per; ++i) m += xs[i];
        bm.push_back(m / static_cast<double>(per));
    }
    double mu = 0;
    for (double m : bm) mu += m;
    mu /= nb;
    double var = 0;
    for (double m : bm) var += (m - mu) * (m - mu);
    var /= (nb - 1);
    st.se = std::sqrt(var / nb);
    return st;
}

/// n_T per grid point for one torus configuration, one enumeration at Tmax.
inline std::vector<std::size_t> torus_counts_on_grid(const LatticeTorus& t, const TorusPoint& x,
                                                     const TorusPoint& y,
                                                     const std::vector<Rat>& grid) {
    auto segs = enumerate_joining(t, x, y, grid.back());
    std::vector<std::size_t> out(grid.size(), 0);
    for (const auto& seg : segs)
        for (std::size_t i = 0; i < grid.size(); ++i)
            if (seg.len2 <= grid[i] * grid[i]) ++out[i];
    return out;
}

inline std::vector<std::size_t> hyp_counts_on_grid(const Genus2Surface& s, DiskPoint x,
                                                   DiskPoint y, const std::vector<double>& grid,
                                                   const OrbitOptions& opts) {
    auto orbit = enumerate_orbit(s, x, y, grid.back(), opts);
    std::vector<std::size_t> out(grid.size(), 0);
    for (const auto& e : orbit) {
        if (e.disp <= s.tol_geo) continue;
        for (std::size_t i = 0; i < grid.size(); ++i)
            if (e.disp <= grid[i]) ++out[i];
    }
    return out;
}

}  // namespace detail

/// Monte-Carlo average of n_T over sampled configurations per grid T, then an
/// exponential fit of the log averages. Deterministic given the seed.
inline GrowthFit mane_estimate(const Space& sp, std::size_t sample_count,
                               const std::vector<Rat>& t_grid, std::uint64_t rng_seed,
                               const OrbitOptions& opts = {}) {
    if (sample_count < 100) throw std::invalid_argument("sample_count must be >= 100");
    if (t_grid.empty()) throw std::invalid_argument("empty T grid");
    std::mt19937_64 rng(rng_seed);
    std::vector<std::vector<double>> samples(t_grid.size());
    if (const auto* t = std::get_if<LatticeTorus>(&sp.v)) {
        for (std::size_t k = 0; k < sample_count; ++k) {
            auto x = detail::sample_torus_point(*t, rng);
            auto y = detail::sample_torus_point(*t, rng);
            auto counts = detail::torus_counts_on_grid(*t, x, y, t_grid);
            for (std::size_t i = 0; i < t_grid.size(); ++i)
                samples[i].push_back(static_cast<double>(counts[i]));
        }
    } else if (const auto* h = std::get_if<Genus2Surface>(&sp.v)) {
        std::vector<double> grid_d;
        for (const auto& g : t_grid) grid_d.push_back(to_double(g));
        for (std::size_t k = 0; k < sample_count; ++k) {
            auto x = detail::sample_octagon_point(*h, rng);
            auto y = detail::sample_octagon_point(*h, rng);
            auto counts = detail::hyp_counts_on_grid(*h, x, y, grid_d, opts);
            for (std::size_t i = 0; i < t_grid.size(); ++i)
                samples[i].push_back(static_cast<double>(counts[i]));
        }
    } else {
        throw std::invalid_argument("sampling unsupported on this space");
    }

    CountCurve curve;
    curve.grid = t_grid;
    std::vector<double> ses;
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        auto st = detail::batch_means(samples[i]);
        // store rounded averages as counts for the shared fit path
        curve.n.push_back(static_cast<std::size_t>(std::llround(std::max(0.0, st.mean))));
        curve.m.push_back(curve.n.back());
        ses.push_back(st.se);
    }
    auto fit = fit_growth(curve, GrowthModel::Exponential);
    fit.se = ses;
    return fit;
}

/// Monte-Carlo estimate of \int n_T(x,y) dmu(y) against the cover-ball volume.
/// Satisfied when the estimate is at least volume - 3 SE; on tori equality
/// within 2% is additionally required.
inline BoundCheck berger_bott_check(const Space& sp, const Point& x, const Rat& T,
                                    std::size_t sample_count, std::uint64_t rng_seed,
                                    const OrbitOptions& opts = {}) {
    std::mt19937_64 rng(rng_seed);
    BoundCheck c;
    c.name = "berger_bott";
    const double Td = to_double(T);
    if (const auto* t = std::get_if<LatticeTorus>(&sp.v)) {
        const auto& xp = std::get<TorusPoint>(x.v);
        std::vector<double> xs;
        for (std::size_t k = 0; k < sample_count; ++k) {
            auto y = detail::sample_torus_point(*t, rng);
            xs.push_back(static_cast<double>(
                detail::torus_counts_on_grid(*t, xp, y, {T}).front()));
        }
        auto st = detail::batch_means(xs);
        double cov = to_double(t->covolume);
        double estimate = st.mean * cov;
        double se = st.se * cov;
        static const double omega[5] = {0.0, 2.0, M_PI, 4.0 * M_PI / 3.0, M_PI * M_PI / 2.0};
        double volume = omega[t->dim] * std::pow(Td, t->dim);
        c.inputs = {{"T", Td}, {"samples", double(sample_count)}, {"se", se}};
        c.lhs = volume;
        c.rhs = estimate;
        bool ineq = estimate >= volume - 3.0 * se;
        bool eq2 = std::abs(estimate - volume) <= 0.02 * volume;
        c.satisfied = ineq && eq2;
        c.notes = eq2 ? "torus equality within 2%" : "torus equality beyond 2%";
        return c;
    }
    if (const auto* h = std::get_if<Genus2Surface>(&sp.v)) {
        const auto& xp = std::get<DiskPoint>(x.v);
        std::vector<double> xs;
        for (std::size_t k = 0; k < sample_count; ++k) {
            auto y = detail::sample_octagon_point(*h, rng);
            xs.push_back(static_cast<double>(
                detail::hyp_counts_on_grid(*h, xp, y, {Td}, opts).front()));
        }
        auto st = detail::batch_means(xs);
        const double area = 4.0 * M_PI;  // genus-2 hyperbolic surface area
        double estimate = st.mean * area;
        double se = st.se * area;
        double volume = 2.0 * M_PI * (std::cosh(Td) - 1.0);
        c.inputs = {{"T", Td}, {"samples", double(sample_count)}, {"se", se}};
        c.lhs = volume;
        c.rhs = estimate;
        c.satisfied = estimate >= volume - 3.0 * se;
        return c;
    }
    throw std::invalid_argument("unsupported space for berger_bott_check");
}

}  // namespace blockgeo
