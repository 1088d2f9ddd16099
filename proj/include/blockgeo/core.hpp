#pragma once

// Space-independent geodesic-system operations: passage times, the trim map
// G_T -> Gamma_T, the split map at a blocker, and the three counters.

#include <blockgeo/product.hpp>

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace blockgeo {

struct PassageRecord {
    Point point;
    std::vector<Fraction> fracs;  // parameter fractions in (0,1), sorted
    std::vector<double> times;    // arclength parameters in (0, length)
};

namespace detail {

inline std::vector<Fraction> intersect_fractions(const std::vector<Fraction>& a,
                                                 const std::vector<Fraction>& b, double tol) {
    std::vector<Fraction> out;
    for (const auto& fa : a)
        for (const auto& fb : b) {
            if (fa.exact && fb.exact) {
                if (fa.r == fb.r) out.push_back(fa);
            } else if (std::abs(fa.value() - fb.value()) <= tol) {
                out.push_back(fa.exact ? fa : fb);
            }
        }
    std::sort(out.begin(), out.end(),
              [](const Fraction& x, const Fraction& y) { return x.value() < y.value(); });
    return out;
}

}  // namespace detail

/// Interior parameter fractions where the segment meets z; exact on tori,
/// tolerance-based on the hyperbolic surface, componentwise-intersected on
/// products.
inline std::vector<Fraction> passage_fractions(const Space& sp, const Segment& seg, const Point& z,
                                               const OrbitOptions& opts = {}) {
    if (const auto* t = std::get_if<LatticeTorus>(&sp.v)) {
        (void)t;
        const auto& ts = std::get<TorusSegment>(seg.v);
        std::vector<Fraction> out;
        for (auto& u : torus_passage_fractions(ts, std::get<TorusPoint>(z.v)))
            out.push_back(exact_fraction(std::move(u)));
        return out;
    }
    if (const auto* h = std::get_if<Genus2Surface>(&sp.v)) {
        const auto& hs = std::get<HypSegment>(seg.v);
        const auto& zp = std::get<DiskPoint>(z.v);
        std::vector<Complex> lifts;
        for (const auto& e : enumerate_orbit(*h, hs.start, zp, hs.length, opts))
            lifts.push_back(e.g.apply(zp.z));
        std::vector<Fraction> out;
        for (double u : hyp_passage_fractions(*h, hs, lifts)) out.push_back(approx_fraction(u));
        return out;
    }
    const auto& ps = std::get<ProductSpace>(sp.v);
    const auto& pseg = std::get<ProductSegment>(seg.v);
    const auto& pz = std::get<ProductPoint>(z.v);
    auto part_fracs = [&](const ProductPart& part, const Space& sub,
                          const Point& zc) -> std::optional<std::vector<Fraction>> {
        // nullopt means "all fractions" (constant part sitting on the target point)
        if (part.constant) {
            if (points_equal(*part.constant, zc)) return std::nullopt;
            return std::vector<Fraction>{};
        }
        return passage_fractions(sub, *part.seg, zc, opts);
    };
    auto fl = part_fracs(pseg.left, *ps.left, *pz.left);
    auto fr = part_fracs(pseg.right, *ps.right, *pz.right);
    if (!fl && !fr) return {};  // (point, point) pairs never exist
    if (!fl) return *fr;
    if (!fr) return *fl;
    return detail::intersect_fractions(*fl, *fr, 1e-9);
}

inline PassageRecord passage_times(const Space& sp, const Segment& seg, const Point& z,
                                   const OrbitOptions& opts = {}) {
    PassageRecord rec;
    rec.point = z;
    rec.fracs = passage_fractions(sp, seg, z, opts);
    const double L = seg_length(seg);
    for (const auto& f : rec.fracs) rec.times.push_back(f.value() * L);
    return rec;
}

/// Restriction of a segment to the fraction interval [u1, u2].
inline Segment subsegment_any(const Space& sp, const Segment& seg, const Fraction& u1,
                              const Fraction& u2) {
    if (const auto* ts = std::get_if<TorusSegment>(&seg.v)) {
        if (!u1.exact || !u2.exact) throw std::invalid_argument("torus subsegment needs exact fractions");
        return Segment{torus_subsegment(*ts, u1.r, u2.r)};
    }
    if (const auto* hs = std::get_if<HypSegment>(&seg.v)) {
        double a = u1.value() * hs->length;
        double b = u2.value() * hs->length;
        Complex p = hyp_point_along(hs->start.z, hs->end.z, a);
        Complex q = hyp_point_along(hs->start.z, hs->end.z, b);
        return Segment{HypSegment{DiskPoint{p}, DiskPoint{q}, b - a}};
    }
    const auto& psp = std::get<ProductSpace>(sp.v);
    const auto& ps = std::get<ProductSegment>(seg.v);
    ProductSegment out;
    auto cut = [&](const ProductPart& part, const Space& sub) {
        ProductPart np;
        if (part.constant)
            np.constant = part.constant;
        else
            np.seg = std::make_shared<const Segment>(subsegment_any(sub, *part.seg, u1, u2));
        return np;
    };
    out.left = cut(ps.left, *psp.left);
    out.right = cut(ps.right, *psp.right);
    double du = u2.value() - u1.value();
    out.length = du * ps.length;
    if (ps.len2 && u1.exact && u2.exact) {
        Rat dr = u2.r - u1.r;
        out.len2 = dr * dr * *ps.len2;
    }
    return Segment{std::move(out)};
}

/// The trim map: restrict to [a', b'] where b' is the first time the segment
/// reaches y and a' the last time at x before b'. Identity on connecting
/// segments.
inline Segment trim_to_connecting(const Space& sp, const Segment& seg, const Configuration& cfg,
                                  const OrbitOptions& opts = {}) {
    auto fy = passage_fractions(sp, seg, cfg.y, opts);
    Fraction b1 = fy.empty() ? exact_fraction(Rat(1)) : fy.front();
    auto fx = passage_fractions(sp, seg, cfg.x, opts);
    Fraction a1 = exact_fraction(Rat(0));
    for (const auto& u : fx)
        if (u.value() < b1.value() && (!u.exact || !b1.exact || u.r < b1.r)) a1 = u;
    if (!a1.exact || !b1.exact) {
        // keep exactness flags coherent on mixed comparisons
        if (a1.value() >= b1.value()) throw std::logic_error("trim produced an empty interval");
    }
    if (a1.exact && b1.exact && a1.r == 0 && b1.r == 1) return seg;
    return subsegment_any(sp, seg, a1, b1);
}

/// The split map at a blocker z: the initial segment up to the first passage
/// of z if its length is <= T/2, else the terminal segment from the last
/// passage. Ties go to the initial segment.
inline Segment split_at_blocker(const Space& sp, const Segment& seg, const Point& z, const Rat& T,
                                const OrbitOptions& opts = {}) {
    auto fz = passage_fractions(sp, seg, z, opts);
    if (fz.empty()) throw std::invalid_argument("segment does not pass through the blocker");
    const Fraction& first = fz.front();
    const Fraction& last = fz.back();
    bool take_first;
    auto l2 = seg_length2_exact(seg);
    if (l2 && first.exact) {
        take_first = first.r * first.r * *l2 <= T * T / 4;
    } else {
        take_first = first.value() * seg_length(seg) <= to_double(T) / 2.0 + 1e-12;
    }
    if (take_first) return subsegment_any(sp, seg, exact_fraction(Rat(0)), first);
    return subsegment_any(sp, seg, last, exact_fraction(Rat(1)));
}

/// True when the segment has no interior passage through either endpoint of
/// the configuration.
inline bool is_connecting(const Space& sp, const Segment& seg, const Configuration& cfg,
                          const OrbitOptions& opts = {}) {
    return passage_fractions(sp, seg, cfg.x, opts).empty() &&
           passage_fractions(sp, seg, cfg.y, opts).empty();
}

inline std::size_t count_joining(const Space& sp, const Configuration& cfg, const Rat& T,
                                 const OrbitOptions& opts = {}) {
    return enumerate_joining_any(sp, cfg, T, opts).size();
}

inline std::size_t count_connecting(const Space& sp, const Configuration& cfg, const Rat& T,
                                    const OrbitOptions& opts = {}) {
    std::size_t n = 0;
    for (const auto& seg : enumerate_joining_any(sp, cfg, T, opts))
        if (is_connecting(sp, seg, cfg, opts)) ++n;
    return n;
}

/// m_T(x,y;z): connecting geodesics passing through z.
inline std::size_t count_through(const Space& sp, const Configuration& cfg, const Point& z,
                                 const Rat& T, const OrbitOptions& opts = {}) {
    if (points_equal(z, cfg.x) || points_equal(z, cfg.y))
        throw std::invalid_argument("z coincides with a configuration endpoint");
    std::size_t n = 0;
    for (const auto& seg : enumerate_joining_any(sp, cfg, T, opts))
        if (is_connecting(sp, seg, cfg, opts) && !passage_fractions(sp, seg, z, opts).empty()) ++n;
    return n;
}

struct CountCurve {
    Configuration cfg;
    std::vector<Rat> grid;       // increasing T values
    std::vector<std::size_t> n;  // joining counts
    std::vector<std::size_t> m;  // connecting counts
    std::string space_desc;
};

/// Counts over a T grid from a single enumeration at the grid maximum.
inline CountCurve compute_count_curve(const Space& sp, const Configuration& cfg,
                                      std::vector<Rat> grid, const OrbitOptions& opts = {}) {
    if (grid.empty()) throw std::invalid_argument("empty T grid");
    std::sort(grid.begin(), grid.end());
    CountCurve curve;
    curve.cfg = cfg;
    curve.grid = grid;
    const Rat tmax = grid.back();
    auto segs = enumerate_joining_any(sp, cfg, tmax, opts);
    std::vector<std::optional<Rat>> len2(segs.size());
    std::vector<double> len(segs.size());
    std::vector<bool> conn(segs.size());
    for (std::size_t i = 0; i < segs.size(); ++i) {
        len2[i] = seg_length2_exact(segs[i]);
        len[i] = seg_length(segs[i]);
        conn[i] = is_connecting(sp, segs[i], cfg, opts);
    }
    for (const auto& T : grid) {
        std::size_t nT = 0, mT = 0;
        for (std::size_t i = 0; i < segs.size(); ++i) {
            bool in = len2[i] ? (*len2[i] <= T * T) : (len[i] <= to_double(T) + 1e-12);
            if (!in) continue;
            ++nT;
            if (conn[i]) ++mT;
        }
        curve.n.push_back(nT);
        curve.m.push_back(mT);
    }
    return curve;
}

}  // namespace blockgeo
