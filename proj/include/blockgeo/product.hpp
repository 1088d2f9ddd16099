#pragma once

// Riemannian products of two supported spaces: enumeration of product
// geodesics and the product blocking-set construction.

#include <blockgeo/space.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

namespace blockgeo {

/// Joining geodesics of length <= T on any supported space, wrapped in the
/// generic segment type. Deterministic order per space module.
inline std::vector<Segment> enumerate_joining_any(const Space& sp, const Configuration& cfg,
                                                  const Rat& T, const OrbitOptions& opts = {});

namespace detail {

inline std::vector<Segment> enumerate_product_impl(const ProductSpace& p, const Configuration& cfg,
                                                   const Rat& T, const OrbitOptions& opts) {
    const auto& px = std::get<ProductPoint>(cfg.x.v);
    const auto& py = std::get<ProductPoint>(cfg.y.v);
    Configuration lcfg{*px.left, *py.left};
    Configuration rcfg{*px.right, *py.right};
    auto lsegs = enumerate_joining_any(*p.left, lcfg, T, opts);
    auto rsegs = enumerate_joining_any(*p.right, rcfg, T, opts);
    const bool left_const_ok = points_equal(lcfg.x, lcfg.y);
    const bool right_const_ok = points_equal(rcfg.x, rcfg.y);
    const Rat T2 = T * T;
    const double Td = to_double(T);

    std::vector<Segment> out;
    auto push_pair = [&](const Segment* ls, const Segment* rs) {
        ProductSegment ps;
        std::optional<Rat> l2a = ls ? seg_length2_exact(*ls) : std::optional<Rat>(Rat(0));
        std::optional<Rat> l2b = rs ? seg_length2_exact(*rs) : std::optional<Rat>(Rat(0));
        double la = ls ? seg_length(*ls) : 0.0;
        double lb = rs ? seg_length(*rs) : 0.0;
        if (l2a && l2b) {
            Rat sum = *l2a + *l2b;
            if (sum > T2) return;
            ps.len2 = sum;
            ps.length = std::sqrt(to_double(sum));
        } else {
            double sum = la * la + lb * lb;
            if (sum > Td * Td) return;
            ps.length = std::sqrt(sum);
        }
        if (ls)
            ps.left.seg = std::make_shared<const Segment>(*ls);
        else
            ps.left.constant = std::make_shared<const Point>(lcfg.x);
        if (rs)
            ps.right.seg = std::make_shared<const Segment>(*rs);
        else
            ps.right.constant = std::make_shared<const Point>(rcfg.x);
        out.push_back(Segment{std::move(ps)});
    };

    for (const auto& ls : lsegs)
        for (const auto& rs : rsegs) push_pair(&ls, &rs);
    if (left_const_ok)
        for (const auto& rs : rsegs) push_pair(nullptr, &rs);
    if (right_const_ok)
        for (const auto& ls : lsegs) push_pair(&ls, nullptr);

    std::stable_sort(out.begin(), out.end(), [](const Segment& a, const Segment& b) {
        const auto& pa = std::get<ProductSegment>(a.v);
        const auto& pb = std::get<ProductSegment>(b.v);
        if (pa.len2 && pb.len2 && *pa.len2 != *pb.len2) return *pa.len2 < *pb.len2;
        return pa.length < pb.length;
    });
    return out;
}

}  // namespace detail

inline std::vector<Segment> enumerate_joining_any(const Space& sp, const Configuration& cfg,
                                                  const Rat& T, const OrbitOptions& opts) {
    if (T <= 0) throw std::invalid_argument("T must be positive");
    if (const auto* t = std::get_if<LatticeTorus>(&sp.v)) {
        const auto& x = std::get<TorusPoint>(cfg.x.v);
        const auto& y = std::get<TorusPoint>(cfg.y.v);
        std::vector<Segment> out;
        for (auto& seg : enumerate_joining(*t, x, y, T)) out.push_back(Segment{std::move(seg)});
        return out;
    }
    if (const auto* h = std::get_if<Genus2Surface>(&sp.v)) {
        const auto& x = std::get<DiskPoint>(cfg.x.v);
        const auto& y = std::get<DiskPoint>(cfg.y.v);
        std::vector<Segment> out;
        for (const auto& e : enumerate_orbit(*h, x, y, to_double(T), opts)) {
            if (e.disp <= h->tol_geo) continue;  // positive length only
            out.push_back(Segment{HypSegment{x, DiskPoint{e.g.apply(y.z)}, e.disp}});
        }
        return out;
    }
    return detail::enumerate_product_impl(std::get<ProductSpace>(sp.v), cfg, T, opts);
}

/// enumerate_product: product geodesics of length <= T, including the
/// constant-component families when an endpoint pair coincides.
inline std::vector<Segment> enumerate_product(const Space& sp, const Configuration& cfg,
                                              const Rat& T, const OrbitOptions& opts = {}) {
    if (!std::holds_alternative<ProductSpace>(sp.v))
        throw std::invalid_argument("enumerate_product requires a product space");
    return enumerate_joining_any(sp, cfg, T, opts);
}

/// B_left x B_right, augmented with (x, b') when x = y and (b, x') when x' = y'.
inline std::vector<Point> product_blocking_set(const Space& sp, const Configuration& cfg,
                                               const std::vector<Point>& b_left,
                                               const std::vector<Point>& b_right) {
    if (!std::holds_alternative<ProductSpace>(sp.v))
        throw std::invalid_argument("product_blocking_set requires a product space");
    const auto& px = std::get<ProductPoint>(cfg.x.v);
    const auto& py = std::get<ProductPoint>(cfg.y.v);
    for (const auto& b : b_left)
        if (points_equal(b, *px.left) || points_equal(b, *py.left))
            throw std::invalid_argument("left blocking set touches a configuration endpoint");
    for (const auto& b : b_right)
        if (points_equal(b, *px.right) || points_equal(b, *py.right))
            throw std::invalid_argument("right blocking set touches a configuration endpoint");
    std::vector<Point> out;
    for (const auto& bl : b_left)
        for (const auto& br : b_right) out.push_back(make_product_point(bl, br));
    if (points_equal(*px.left, *py.left))
        for (const auto& br : b_right) out.push_back(make_product_point(*px.left, br));
    if (points_equal(*px.right, *py.right))
        for (const auto& bl : b_left) out.push_back(make_product_point(bl, *px.right));
    return out;
}

}  // namespace blockgeo
