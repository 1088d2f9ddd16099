#pragma once

// Independent brute-force reference implementations used to cross-check the
// library. Deliberately different algorithms: the torus oracle grows an
// integer box until a whole shell is empty and decides passages by
// intersecting per-component candidate sets; the hyperbolic oracle does a
// full unpruned nonbacktracking word enumeration with coarse matrix dedup.

#include <blockgeo/flat_torus.hpp>
#include <blockgeo/hyperbolic.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <set>
#include <tuple>
#include <vector>

namespace oracle {

using blockgeo::Int;
using blockgeo::Rat;
using blockgeo::RatMat;
using blockgeo::RatVec;

struct TorusGeodesic {
    RatVec disp;  // y - x + k, basis frame
    Rat len2;
};

/// Squared length computed straight from the basis columns (no Gram matrix).
inline Rat euclid_len2(const RatMat& basis, const RatVec& v) {
    const std::size_t n = v.size();
    Rat s = 0;
    for (std::size_t i = 0; i < n; ++i) {
        Rat row = 0;
        for (std::size_t j = 0; j < n; ++j) row += basis[i][j] * v[j];
        s += row * row;
    }
    return s;
}

/// All geodesics x -> y with 0 < len^2 <= T^2, by box growth with a
/// shell-completeness stopping rule.
inline std::vector<TorusGeodesic> torus_geodesics(const RatMat& basis, const RatVec& x,
                                                  const RatVec& y, const Rat& T) {
    const int n = static_cast<int>(basis.size());
    RatVec d(n);
    for (int i = 0; i < n; ++i) d[i] = y[i] - x[i];
    std::vector<TorusGeodesic> out;
    const Rat T2 = T * T;
    long long R = 0;
    int empty_streak = 0;
    for (;;) {
        bool shell_hit = (R == 0);
        std::vector<long long> k(n, -R);
        for (;;) {
            long long mx = 0;
            for (int i = 0; i < n; ++i) mx = std::max(mx, std::llabs(k[i]));
            if (mx == R) {
                RatVec v(n);
                for (int i = 0; i < n; ++i) v[i] = d[i] + Rat(k[i]);
                Rat l2 = euclid_len2(basis, v);
                if (l2 > 0 && l2 <= T2) {
                    out.push_back(TorusGeodesic{v, l2});
                    shell_hit = true;
                }
            }
            int i = 0;
            while (i < n && k[i] == R) k[i++] = -R;
            if (i == n) break;
            ++k[i];
        }
        empty_streak = shell_hit ? 0 : empty_streak + 1;
        // two consecutive empty shells: safe to stop even for skewed bases
        if (empty_streak >= 2) break;
        ++R;
    }
    std::sort(out.begin(), out.end(),
              [](const TorusGeodesic& a, const TorusGeodesic& b) { return a.len2 < b.len2; });
    return out;
}

/// Interior fractions where x + u*disp = z (mod Z^n): per-component candidate
/// sets intersected across all nonzero components.
inline std::vector<Rat> torus_passages(const RatVec& x, const RatVec& disp, const RatVec& z) {
    const int n = static_cast<int>(x.size());
    std::vector<Rat> current;
    bool first = true;
    for (int i = 0; i < n; ++i) {
        if (disp[i] == 0) {
            if (blockgeo::mod_one(z[i] - x[i]) != 0) return {};
            continue;
        }
        std::vector<Rat> cand;
        Rat w = disp[i];
        Rat d = z[i] - x[i];
        // u = (d + m)/w in (0,1)
        for (Int m = blockgeo::floor_rat(std::min(Rat(-d), Rat(w - d))) - 1;
             Rat(m) <= std::max(Rat(-d), Rat(w - d)) + 1; ++m) {
            Rat u = (d + Rat(m)) / w;
            if (u > 0 && u < 1) cand.push_back(u);
        }
        std::sort(cand.begin(), cand.end());
        if (first) {
            current = cand;
            first = false;
        } else {
            std::vector<Rat> inter;
            std::set_intersection(current.begin(), current.end(), cand.begin(), cand.end(),
                                  std::back_inserter(inter));
            current = inter;
        }
        if (current.empty()) return {};
    }
    return current;
}

struct TorusCounts {
    std::size_t n = 0;
    std::size_t m = 0;
};

inline TorusCounts torus_counts(const RatMat& basis, const RatVec& x, const RatVec& y,
                                const Rat& T) {
    TorusCounts c;
    for (const auto& g : torus_geodesics(basis, x, y, T)) {
        ++c.n;
        if (torus_passages(x, g.disp, x).empty() && torus_passages(x, g.disp, y).empty()) ++c.m;
    }
    return c;
}

// ---------------------------------------------------------------------------
// hyperbolic oracle

/// Distinct orbit-point displacements d(x, g*y) over all nonbacktracking words
/// up to word_cap, without pruning. Coarse 1e-5 matrix dedup after sign
/// normalization; element separation in this group is ~5e-4.
inline std::vector<double> hyp_displacements(const blockgeo::Genus2Surface& s,
                                             blockgeo::Complex x, blockgeo::Complex y,
                                             double T, int word_cap) {
    using blockgeo::Mobius;
    std::set<std::tuple<std::int64_t, std::int64_t, std::int64_t, std::int64_t>> seen;
    auto key = [](Mobius g) {
        if (g.a.real() < 0) {
            g.a = -g.a;
            g.b = -g.b;
        }
        auto q = [](double v) { return static_cast<std::int64_t>(std::llround(v * 1e5)); };
        return std::make_tuple(q(g.a.real()), q(g.a.imag()), q(g.b.real()), q(g.b.imag()));
    };
    std::vector<double> out;
    struct Frame {
        Mobius g;
        int last;
        int depth;
    };
    std::vector<Frame> stack{Frame{Mobius{}, -1, 0}};
    while (!stack.empty()) {
        Frame f = stack.back();
        stack.pop_back();
        if (seen.insert(key(f.g)).second) {
            double d = blockgeo::hyp_dist(x, f.g.apply(y));
            if (d <= T) out.push_back(d);
        }
        if (f.depth == word_cap) continue;
        for (int l = 0; l < 8; ++l) {
            if (f.last >= 0 && l == blockgeo::inverse_gen_index(f.last)) continue;
            stack.push_back(Frame{f.g.compose(s.gens[l]), l, f.depth + 1});
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline std::size_t hyp_count_joining(const blockgeo::Genus2Surface& s, blockgeo::Complex x,
                                     blockgeo::Complex y, double T, int word_cap) {
    std::size_t n = 0;
    for (double d : hyp_displacements(s, x, y, T, word_cap))
        if (d > s.tol_geo) ++n;
    return n;
}

}  // namespace oracle
