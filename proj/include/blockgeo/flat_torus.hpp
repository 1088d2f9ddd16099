#pragma once

// Flat torus R^n / Lambda with an exact rational lattice basis.
// Geodesic enumeration, injectivity radius, midpoint blocking sets and
// all-T blocking certificates.

#include <blockgeo/rational.hpp>

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace blockgeo {

struct TorusPoint {
    RatVec c;  // coordinates in the basis frame, each in [0,1)

    friend bool operator==(const TorusPoint& a, const TorusPoint& b) { return a.c == b.c; }
    friend bool operator!=(const TorusPoint& a, const TorusPoint& b) { return !(a == b); }
};

inline TorusPoint make_torus_point(RatVec coords) { return TorusPoint{mod_one(std::move(coords))}; }

struct LatticeTorus {
    int dim = 0;
    RatMat basis;      // columns generate Lambda; basis[i][j] = entry (row i, col j)
    RatMat gram;       // gram[i][j] = col_i . col_j
    RatMat inv_basis;  // basis^{-1}
    Rat covolume;      // |det basis|
};

namespace detail {

inline RatMat rat_identity(int n) {
    RatMat m(n, RatVec(n, Rat(0)));
    for (int i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

// Gauss-Jordan; returns (det, inverse) or nullopt if singular.
inline std::optional<std::pair<Rat, RatMat>> invert(const RatMat& a) {
    const int n = static_cast<int>(a.size());
    RatMat m = a;
    RatMat inv = rat_identity(n);
    Rat det = 1;
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        for (int r = col; r < n; ++r)
            if (m[r][col] != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0) return std::nullopt;
        if (pivot != col) {
            std::swap(m[pivot], m[col]);
            std::swap(inv[pivot], inv[col]);
            det = -det;
        }
        Rat p = m[col][col];
        det *= p;
        for (int j = 0; j < n; ++j) {
            m[col][j] /= p;
            inv[col][j] /= p;
        }
        for (int r = 0; r < n; ++r) {
            if (r == col || m[r][col] == 0) continue;
            Rat f = m[r][col];
            for (int j = 0; j < n; ++j) {
                m[r][j] -= f * m[col][j];
                inv[r][j] -= f * inv[col][j];
            }
        }
    }
    return std::make_pair(det, inv);
}

}  // namespace detail

inline LatticeTorus make_torus(const RatMat& basis) {
    const int n = static_cast<int>(basis.size());
    if (n < 1 || n > 4) throw std::invalid_argument("torus dimension must be 1..4");
    for (const auto& row : basis)
        if (static_cast<int>(row.size()) != n) throw std::invalid_argument("basis must be square");
    auto inv = detail::invert(basis);
    if (!inv) throw std::invalid_argument("singular lattice basis");
    LatticeTorus t;
    t.dim = n;
    t.basis = basis;
    t.inv_basis = inv->second;
    t.covolume = inv->first < 0 ? -inv->first : inv->first;
    t.gram.assign(n, RatVec(n, Rat(0)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Rat s = 0;
            for (int k = 0; k < n; ++k) s += basis[k][i] * basis[k][j];
            t.gram[i][j] = s;
        }
    return t;
}

// A geodesic lift on the torus: runs from `start` along `disp` (basis frame),
// parametrized by the fraction u in [0,1]. len2 = disp^T G disp > 0.
struct TorusSegment {
    RatVec start;            // coordinates of the projected initial point, in [0,1)
    RatVec disp;             // displacement y - x + lambda, basis frame
    Rat len2;                // exact squared arclength
    std::vector<Int> coeff;  // lattice coefficients lambda (empty for derived subsegments)
};

inline TorusPoint torus_segment_end(const TorusSegment& s) {
    RatVec e(s.start.size());
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = mod_one(s.start[i] + s.disp[i]);
    return TorusPoint{e};
}

/// Point at parameter fraction u of the segment, projected to the torus.
inline TorusPoint torus_point_at(const TorusSegment& s, const Rat& u) {
    RatVec p(s.start.size());
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = mod_one(s.start[i] + u * s.disp[i]);
    return TorusPoint{p};
}

inline TorusSegment torus_subsegment(const TorusSegment& s, const Rat& u1, const Rat& u2) {
    if (!(0 <= u1 && u1 < u2 && u2 <= 1)) throw std::invalid_argument("bad subsegment fractions");
    TorusSegment out;
    out.start = torus_point_at(s, u1).c;
    out.disp.resize(s.disp.size());
    Rat du = u2 - u1;
    for (std::size_t i = 0; i < s.disp.size(); ++i) out.disp[i] = du * s.disp[i];
    out.len2 = du * du * s.len2;
    return out;
}

/// Interior parameter fractions u in (0,1) with start + u*disp = z (mod Lambda).
/// Exact decision in rational arithmetic.
inline std::vector<Rat> torus_passage_fractions(const TorusSegment& seg, const TorusPoint& z) {
    const std::size_t n = seg.disp.size();
    if (z.c.size() != n) throw std::invalid_argument("point dimension mismatch");
    // pivot: nonzero displacement component with the smallest |w| keeps the scan short
    std::size_t piv = n;
    for (std::size_t i = 0; i < n; ++i) {
        if (seg.disp[i] == 0) continue;
        if (piv == n || abs(seg.disp[i]) < abs(seg.disp[piv])) piv = i;
    }
    if (piv == n) throw std::invalid_argument("zero displacement");
    const Rat w = seg.disp[piv];
    const Rat d = z.c[piv] - seg.start[piv];
    // u = (d + m)/w with u in (0,1)  <=>  d + m strictly between 0 and w
    Rat lo = w > 0 ? Rat(-d) : Rat(w - d);
    Rat hi = w > 0 ? Rat(w - d) : Rat(-d);
    std::vector<Rat> out;
    for (Int m = floor_rat(lo) + 1; Rat(m) < hi; ++m) {
        if (Rat(m) <= lo) continue;
        Rat u = (d + Rat(m)) / w;
        bool ok = true;
        for (std::size_t j = 0; j < n && ok; ++j) {
            if (j == piv) continue;
            Rat r = u * seg.disp[j] - (z.c[j] - seg.start[j]);
            ok = (mod_one(r) == 0);
        }
        if (ok) out.push_back(u);
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// All joining geodesics from x to y with squared length in (0, T^2].
/// Deterministic order: squared length, then lexicographic lattice coefficients.
inline std::vector<TorusSegment> enumerate_joining(const LatticeTorus& t, const TorusPoint& x,
                                                   const TorusPoint& y, const Rat& T) {
    const int n = t.dim;
    if (static_cast<int>(x.c.size()) != n || static_cast<int>(y.c.size()) != n)
        throw std::invalid_argument("point dimension mismatch");
    if (T <= 0) throw std::invalid_argument("T must be positive");
    const Rat T2 = T * T;
    RatVec d(n);
    for (int i = 0; i < n; ++i) d[i] = y.c[i] - x.c[i];
    // coefficient box: |c_i| <= ||row_i(basis^{-1})|| * T (Cauchy-Schwarz)
    std::vector<Int> kmin(n), kmax(n);
    for (int i = 0; i < n; ++i) {
        Rat r2 = 0;
        for (int j = 0; j < n; ++j) r2 += t.inv_basis[i][j] * t.inv_basis[i][j];
        Int bound = ceil_sqrt(r2 * T2);
        kmin[i] = floor_rat(-Rat(bound) - d[i]);
        kmax[i] = ceil_rat(Rat(bound) - d[i]);
    }
    std::vector<TorusSegment> out;
    std::vector<Int> k(n);
    RatVec c(n);
    auto scan = [&](auto&& self, int i) -> void {
        if (i == n) {
            for (int j = 0; j < n; ++j) c[j] = d[j] + Rat(k[j]);
            Rat q = quad_form(t.gram, c);
            if (q > 0 && q <= T2) out.push_back(TorusSegment{x.c, c, q, k});
            return;
        }
        for (k[i] = kmin[i]; k[i] <= kmax[i]; ++k[i]) self(self, i + 1);
    };
    scan(scan, 0);
    std::sort(out.begin(), out.end(), [](const TorusSegment& a, const TorusSegment& b) {
        if (a.len2 != b.len2) return a.len2 < b.len2;
        return a.coeff < b.coeff;
    });
    return out;
}

/// Squared injectivity radius delta^2, delta = half the shortest nonzero lattice vector.
inline Rat injectivity_radius2(const LatticeTorus& t) {
    Rat best = t.gram[0][0];
    for (int i = 1; i < t.dim; ++i) best = std::min(best, t.gram[i][i]);
    // all lattice vectors up to the current best length; exhaustive in the coefficient box
    TorusPoint origin{RatVec(t.dim, Rat(0))};
    Int bound_len = ceil_sqrt(best);
    for (const auto& seg : enumerate_joining(t, origin, origin, Rat(bound_len)))
        best = std::min(best, seg.len2);
    return best / 4;
}

/// Midpoint blocking set: 2^n points (x+y)/2 + mu/2 for x != y, or the 2^n - 1
/// points x + mu/2, mu not in 2*Lambda, for x = y. Never contains x or y.
inline std::vector<TorusPoint> midpoint_blocking_set(const LatticeTorus& t, const TorusPoint& x,
                                                     const TorusPoint& y) {
    const int n = t.dim;
    std::vector<TorusPoint> out;
    const bool coincident = (x == y);
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        if (coincident && mask == 0) continue;
        RatVec p(n);
        for (int i = 0; i < n; ++i) {
            Rat mu_half = (mask >> i) & 1 ? Rat(1, 2) : Rat(0);
            p[i] = mod_one((x.c[i] + y.c[i]) / 2 + mu_half);
        }
        out.push_back(TorusPoint{p});
    }
    return out;
}

enum class CertificateScope { All, FiniteT };

struct TorusBlockingWitness {
    unsigned residue = 0;        // bitmask of the class mu in Lambda/2Lambda
    Rat param;                   // witness parameter for the class representative
    std::size_t blocker = 0;     // index into the certificate's blocker list
    std::string rule;            // "midpoint" (x != y) or "dyadic" (x = y)
};

struct BlockingCertificate {
    TorusPoint x, y;
    std::vector<TorusPoint> blockers;
    CertificateScope scope = CertificateScope::FiniteT;
    Rat finite_T;  // meaningful when scope == FiniteT
    bool certified = false;
    std::vector<TorusBlockingWitness> witnesses;
};

/// All-T certificate for a candidate blocker set. Succeeds with scope "all"
/// when every residue class of the displacement family has its witness point
/// in B; the finite-scope fallback is handled by the caller (module blocking).
inline BlockingCertificate certify_blocking_all(const LatticeTorus& t, const TorusPoint& x,
                                                const TorusPoint& y,
                                                const std::vector<TorusPoint>& B) {
    for (const auto& b : B)
        if (b == x || b == y) throw std::invalid_argument("blocker coincides with an endpoint");
    const int n = t.dim;
    BlockingCertificate cert;
    cert.x = x;
    cert.y = y;
    cert.blockers = B;
    const bool coincident = (x == y);
    auto find_blocker = [&](const TorusPoint& p) -> std::optional<std::size_t> {
        for (std::size_t i = 0; i < B.size(); ++i)
            if (B[i] == p) return i;
        return std::nullopt;
    };
    bool all_ok = true;
    for (unsigned mask = 0; mask < (1u << n) && all_ok; ++mask) {
        if (coincident && mask == 0) continue;  // lambda = 0 lift excluded when x = y
        RatVec p(n);
        for (int i = 0; i < n; ++i) {
            Rat mu_half = (mask >> i) & 1 ? Rat(1, 2) : Rat(0);
            p[i] = coincident ? mod_one(x.c[i] + mu_half)
                              : mod_one((x.c[i] + y.c[i]) / 2 + mu_half);
        }
        auto idx = find_blocker(TorusPoint{p});
        if (!idx) {
            all_ok = false;
            break;
        }
        TorusBlockingWitness w;
        w.residue = mask;
        w.blocker = *idx;
        if (coincident) {
            // lambda = 2^k * lambda', lambda' ≡ mask (mod 2Lambda): witness u = 2^{-(k+1)};
            // the recorded parameter is the k = 0 representative.
            w.param = Rat(1, 2);
            w.rule = "dyadic";
        } else {
            w.param = Rat(1, 2);
            w.rule = "midpoint";
        }
        cert.witnesses.push_back(std::move(w));
    }
    cert.certified = all_ok;
    cert.scope = all_ok ? CertificateScope::All : CertificateScope::FiniteT;
    if (!all_ok) cert.witnesses.clear();
    return cert;
}

}  // namespace blockgeo
