#pragma once

// Space-independent handles: a space is a lattice torus, the genus-2 surface,
// or a Riemannian product of two spaces; points and segments mirror that shape.

#include <blockgeo/flat_torus.hpp>
#include <blockgeo/hyperbolic.hpp>

#include <memory>
#include <optional>
#include <stdexcept>
#include <variant>

namespace blockgeo {

struct Space;

struct ProductSpace {
    std::shared_ptr<const Space> left;
    std::shared_ptr<const Space> right;
};

struct Space {
    std::variant<LatticeTorus, Genus2Surface, ProductSpace> v;
};

inline Space make_space(LatticeTorus t) { return Space{std::move(t)}; }
inline Space make_space(Genus2Surface s) { return Space{std::move(s)}; }
inline Space make_product_space(Space left, Space right) {
    return Space{ProductSpace{std::make_shared<const Space>(std::move(left)),
                              std::make_shared<const Space>(std::move(right))}};
}

struct Point;

struct ProductPoint {
    std::shared_ptr<const Point> left;
    std::shared_ptr<const Point> right;
};

struct Point {
    std::variant<TorusPoint, DiskPoint, ProductPoint> v;
};

inline Point make_point(TorusPoint p) { return Point{std::move(p)}; }
inline Point make_point(DiskPoint p) { return Point{std::move(p)}; }
inline Point make_product_point(Point l, Point r) {
    return Point{ProductPoint{std::make_shared<const Point>(std::move(l)),
                              std::make_shared<const Point>(std::move(r))}};
}

/// Equality of projected points; exact on tori, tolerance-based on the disk.
inline bool points_equal(const Point& a, const Point& b, double tol = 1e-9) {
    if (a.v.index() != b.v.index()) return false;
    if (const auto* ta = std::get_if<TorusPoint>(&a.v))
        return *ta == std::get<TorusPoint>(b.v);
    if (const auto* da = std::get_if<DiskPoint>(&a.v))
        return std::abs(da->z - std::get<DiskPoint>(b.v).z) <= tol;
    const auto& pa = std::get<ProductPoint>(a.v);
    const auto& pb = std::get<ProductPoint>(b.v);
    return points_equal(*pa.left, *pb.left, tol) && points_equal(*pa.right, *pb.right, tol);
}

struct Configuration {
    Point x;
    Point y;
};

struct Segment;

// One factor of a product geodesic: a genuine segment, or a constant-point
// marker when that component's endpoints coincide.
struct ProductPart {
    std::shared_ptr<const Segment> seg;       // null for a constant part
    std::shared_ptr<const Point> constant;    // null for a moving part
};

struct ProductSegment {
    ProductPart left;
    ProductPart right;
    double length = 0.0;
    std::optional<Rat> len2;  // set when both parts are exact
};

struct Segment {
    std::variant<TorusSegment, HypSegment, ProductSegment> v;
};

inline double seg_length(const Segment& s);

inline double seg_length(const Segment& s) {
    if (const auto* t = std::get_if<TorusSegment>(&s.v)) return std::sqrt(to_double(t->len2));
    if (const auto* h = std::get_if<HypSegment>(&s.v)) return h->length;
    return std::get<ProductSegment>(s.v).length;
}

inline std::optional<Rat> seg_length2_exact(const Segment& s) {
    if (const auto* t = std::get_if<TorusSegment>(&s.v)) return t->len2;
    if (const auto* p = std::get_if<ProductSegment>(&s.v)) return p->len2;
    return std::nullopt;
}

/// Parameter fraction along a segment, exact where the space supports it.
struct Fraction {
    bool exact = false;
    Rat r;           // meaningful when exact
    double f = 0.0;  // always meaningful

    double value() const { return exact ? to_double(r) : f; }
};

inline Fraction exact_fraction(Rat r) {
    Fraction fr;
    fr.exact = true;
    fr.f = to_double(r);
    fr.r = std::move(r);
    return fr;
}

inline Fraction approx_fraction(double f) {
    Fraction fr;
    fr.exact = false;
    fr.f = f;
    return fr;
}

}  // namespace blockgeo
