#pragma once

// Compact genus-2 hyperbolic surface presented as the unit disk modulo the
// regular-octagon Fuchsian group. Joining geodesics correspond to orbit
// elements; enumeration is breadth-first over words with displacement pruning
// and matrix deduplication.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace blockgeo {

using Complex = std::complex<double>;

struct DiskPoint {
    Complex z;  // |z| < 1
};

/// Disk-model isometry z -> (a z + b) / (conj(b) z + conj(a)), |a|^2 - |b|^2 = 1.
struct Mobius {
    Complex a{1.0, 0.0};
    Complex b{0.0, 0.0};

    Complex apply(Complex z) const { return (a * z + b) / (std::conj(b) * z + std::conj(a)); }

    Mobius compose(const Mobius& o) const {
        // this ∘ o
        return Mobius{a * o.a + b * std::conj(o.b), a * o.b + b * std::conj(o.a)};
    }

    Mobius inverse() const { return Mobius{std::conj(a), -b}; }

    double trace() const { return 2.0 * a.real(); }
};

inline double hyp_dist(Complex z, Complex w) {
    double num = std::norm(z - w);
    double den = (1.0 - std::norm(z)) * (1.0 - std::norm(w));
    return std::acosh(1.0 + 2.0 * num / den);
}

/// Point at hyperbolic distance t from z toward w (0 <= t <= d(z,w)).
inline Complex hyp_point_along(Complex z, Complex w, double t) {
    // translate z to the origin, walk along the ray to the image of w, pull back
    Mobius to_origin{Complex(1.0, 0.0) / std::sqrt(1.0 - std::norm(z)),
                     -z / std::sqrt(1.0 - std::norm(z))};
    Complex w0 = to_origin.apply(w);
    double r = std::tanh(t / 2.0);
    Complex dir = std::abs(w0) > 0 ? w0 / std::abs(w0) : Complex(1.0, 0.0);
    return to_origin.inverse().apply(r * dir);
}

struct Genus2Surface {
    // gens[0..3] are the side-pairing translations, gens[4..7] their inverses.
    std::array<Mobius, 8> gens;
    double tol_geo = 1e-9;    // passage / incidence tolerance in cover coordinates
    double tol_ident = 1e-7;  // matrix-identification threshold
    double gen_translation_length = 0.0;
    double octagon_inradius = 0.0;    // distance from center to an edge midpoint
    double octagon_circumradius = 0.0;
};

inline int inverse_gen_index(int i) { return i < 4 ? i + 4 : i - 4; }

inline Genus2Surface make_genus2(double tol_geo = 1e-9) {
    Genus2Surface s;
    s.tol_geo = tol_geo;
    const double ch = 1.0 + std::sqrt(2.0);  // cosh of half the translation length
    const double sh = std::sqrt(ch * ch - 1.0);
    for (int k = 0; k < 4; ++k) {
        double th = k * M_PI / 4.0;
        s.gens[k] = Mobius{Complex(ch, 0.0), sh * std::polar(1.0, th)};
        s.gens[k + 4] = s.gens[k].inverse();
    }
    s.gen_translation_length = 2.0 * std::acosh(ch);
    s.octagon_inradius = std::acosh(ch);
    s.octagon_circumradius = std::acosh(ch * ch);  // cosh R_v = cot^2(pi/8) = 3 + 2*sqrt(2)
    // self-check: side-pairing relator g0 g1^-1 g2 g3^-1 g0^-1 g1 g2^-1 g3 = 1
    const auto& g = s.gens;
    Mobius r = g[0].compose(g[5]).compose(g[2]).compose(g[7]).compose(g[4]).compose(g[1]).compose(
        g[6]).compose(g[3]);
    double err = std::max(std::abs(r.a - Complex(1.0, 0.0)), std::abs(r.b));
    double err_neg = std::max(std::abs(r.a + Complex(1.0, 0.0)), std::abs(r.b));
    if (std::min(err, err_neg) > 1e-9)
        throw std::runtime_error("genus-2 construction self-check failed (relator)");
    for (int k = 0; k < 4; ++k)
        if (std::abs(g[k].trace() - 2.0 * ch) > 1e-12)
            throw std::runtime_error("genus-2 construction self-check failed (trace)");
    return s;
}

/// True when p lies in the closed Dirichlet octagon centered at 0.
inline bool in_fundamental_octagon(const Genus2Surface& s, Complex p) {
    double d0 = hyp_dist(Complex(0, 0), p);
    for (const auto& g : s.gens)
        if (d0 > hyp_dist(g.apply(Complex(0, 0)), p) + 1e-12) return false;
    return true;
}

// ---------------------------------------------------------------------------
// word handling

using Word = std::vector<std::int8_t>;  // letters 0..7, gens index

inline Word free_reduce(Word w) {
    Word out;
    for (auto l : w) {
        if (!out.empty() && out.back() == inverse_gen_index(l))
            out.pop_back();
        else
            out.push_back(l);
    }
    return out;
}

/// The octagon relator as a letter sequence: g0 g1^-1 g2 g3^-1 g0^-1 g1 g2^-1 g3.
inline const Word& octagon_relator() {
    static const Word r = {0, 5, 2, 7, 4, 1, 6, 3};
    return r;
}

/// Greedy Dehn shortening: any subword exceeding half of a cyclic permutation of
/// the relator (or its inverse) is replaced by the inverse of the complement.
inline Word dehn_reduce(Word w) {
    const Word& rel = octagon_relator();
    const int n = static_cast<int>(rel.size());
    std::vector<Word> rotations;
    for (int dir = 0; dir < 2; ++dir) {
        Word base = rel;
        if (dir == 1) {
            std::reverse(base.begin(), base.end());
            for (auto& l : base) l = static_cast<std::int8_t>(inverse_gen_index(l));
        }
        for (int r = 0; r < n; ++r) {
            Word rot(base.begin() + r, base.end());
            rot.insert(rot.end(), base.begin(), base.begin() + r);
            rotations.push_back(std::move(rot));
        }
    }
    w = free_reduce(std::move(w));
    bool changed = true;
    while (changed) {
        changed = false;
        const int half = n / 2 + 1;  // strictly more than half: 5 letters of 8
        if (static_cast<int>(w.size()) < half) break;
        for (std::size_t pos = 0; pos + half <= w.size() && !changed; ++pos) {
            for (const auto& rot : rotations) {
                if (!std::equal(w.begin() + pos, w.begin() + pos + half, rot.begin())) continue;
                // replace rot[0..half) by inverse of rot[half..n)
                Word repl;
                for (int i = n - 1; i >= half; --i)
                    repl.push_back(static_cast<std::int8_t>(inverse_gen_index(rot[i])));
                Word nw(w.begin(), w.begin() + pos);
                nw.insert(nw.end(), repl.begin(), repl.end());
                nw.insert(nw.end(), w.begin() + pos + half, w.end());
                w = free_reduce(std::move(nw));
                changed = true;
                break;
            }
        }
    }
    return w;
}

inline std::string word_to_string(const Word& w) {
    static const char* names[8] = {"a", "b", "c", "d", "A", "B", "C", "D"};
    if (w.empty()) return "e";
    std::string s;
    for (auto l : w) s += names[l];
    return s;
}

// ---------------------------------------------------------------------------
// orbit enumeration

struct OrbitElement {
    Mobius g;
    Word word;          // Dehn-shortened reduced word
    double disp = 0.0;  // d(xlift, g * ylift)
};

struct OrbitOptions {
    double t_cap = 12.0;
    int word_cap = 24;
    std::size_t frontier_cap = 30'000'000;
    // pruning margin added to T; defaults to the octagon diameter, which makes
    // the BFS provably complete: prefixes of a Dirichlet tiling word along the
    // connecting geodesic stay within T + diam of the start lift
    std::optional<double> margin;
};

struct DedupAmbiguityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

struct MobiusKey {
    std::int64_t q[4];
    bool operator==(const MobiusKey& o) const {
        return q[0] == o.q[0] && q[1] == o.q[1] && q[2] == o.q[2] && q[3] == o.q[3];
    }
};

struct MobiusKeyHash {
    std::size_t operator()(const MobiusKey& k) const {
        std::size_t h = 1469598103934665603ull;
        for (int i = 0; i < 4; ++i) {
            h ^= static_cast<std::size_t>(k.q[i]);
            h *= 1099511628211ull;
        }
        return h;
    }
};

inline Mobius normalize_sign(Mobius g) {
    if (g.a.real() < 0.0) {
        g.a = -g.a;
        g.b = -g.b;
    }
    return g;
}

constexpr double kCell = 1e-6;
constexpr double kBand = 2e-9;  // well above accumulated product roundoff

/// Primary key plus boundary-straddling alternatives for each coordinate.
inline void probe_keys(const Mobius& g, std::vector<MobiusKey>& out) {
    double c[4] = {g.a.real(), g.a.imag(), g.b.real(), g.b.imag()};
    std::int64_t base[4];
    int alts[4] = {0, 0, 0, 0};  // -1, 0, +1 extra cell
    for (int i = 0; i < 4; ++i) {
        double r = c[i] / kCell;
        base[i] = static_cast<std::int64_t>(std::llround(r));
        double frac = r - static_cast<double>(base[i]);  // in [-0.5, 0.5]
        double band = kBand / kCell;
        if (frac > 0.5 - band) alts[i] = 1;
        else if (frac < -0.5 + band) alts[i] = -1;
    }
    out.clear();
    int n_alt[4];
    for (int i = 0; i < 4; ++i) n_alt[i] = alts[i] == 0 ? 1 : 2;
    for (int i0 = 0; i0 < n_alt[0]; ++i0)
        for (int i1 = 0; i1 < n_alt[1]; ++i1)
            for (int i2 = 0; i2 < n_alt[2]; ++i2)
                for (int i3 = 0; i3 < n_alt[3]; ++i3) {
                    MobiusKey k;
                    k.q[0] = base[0] + i0 * alts[0];
                    k.q[1] = base[1] + i1 * alts[1];
                    k.q[2] = base[2] + i2 * alts[2];
                    k.q[3] = base[3] + i3 * alts[3];
                    out.push_back(k);
                }
}

inline double mobius_diff(const Mobius& x, const Mobius& y) {
    return std::max(std::abs(x.a - y.a), std::abs(x.b - y.b));
}

// Visited store for explored group elements, keyed by quantized matrix.
class MobiusSet {
  public:
    explicit MobiusSet(double tol_ident) : tol_(tol_ident) {}

    // Returns true if g was new (inserted); false if already present.
    bool insert(const Mobius& raw) {
        Mobius g = normalize_sign(raw);
        probe_keys(g, probes_);
        for (const auto& key : probes_) {
            auto it = map_.find(key);
            if (it == map_.end()) continue;
            for (auto idx : it->second) {
                double d = mobius_diff(g, elems_[idx]);
                if (d <= tol_) return false;
                if (d <= 1e-5)
                    throw DedupAmbiguityError(
                        "orbit deduplication ambiguity: matrices differ by " + std::to_string(d));
            }
        }
        std::size_t idx = elems_.size();
        elems_.push_back(g);
        MobiusKey primary;
        probe_keys(g, probes_);
        primary = probes_.front();
        map_[primary].push_back(idx);
        return true;
    }

    std::size_t size() const { return elems_.size(); }

  private:
    double tol_;
    std::vector<Mobius> elems_;
    std::unordered_map<MobiusKey, std::vector<std::size_t>, MobiusKeyHash> map_;
    std::vector<MobiusKey> probes_;
};

}  // namespace detail

/// All group elements g with d(xlift, g*ylift) <= T, by pruned BFS.
/// Deterministic order: displacement, then word.
inline std::vector<OrbitElement> enumerate_orbit(const Genus2Surface& s, DiskPoint xlift,
                                                 DiskPoint ylift, double T,
                                                 const OrbitOptions& opts = {}) {
    if (T > opts.t_cap) throw std::invalid_argument("T exceeds the configured cap");
    const double margin = opts.margin.value_or(2.0 * s.octagon_circumradius + 1e-9);
    const double prune = T + margin;

    struct Node {
        Mobius g;
        std::int32_t parent;  // index into nodes, -1 for root
        std::int8_t letter;   // -1 for root
        std::int16_t depth;
        double disp;
    };
    std::vector<Node> nodes;
    detail::MobiusSet visited(s.tol_ident);

    Mobius id;
    visited.insert(id);
    nodes.push_back(Node{id, -1, -1, 0, hyp_dist(xlift.z, ylift.z)});

    std::size_t head = 0;
    while (head < nodes.size()) {
        Node cur = nodes[head];
        std::size_t cur_idx = head;
        ++head;
        if (cur.disp > prune) continue;
        if (cur.depth >= opts.word_cap) continue;
        for (int l = 0; l < 8; ++l) {
            if (cur.letter >= 0 && l == inverse_gen_index(cur.letter)) continue;
            Mobius child = cur.g.compose(s.gens[l]);
            if (!visited.insert(child)) continue;
            double d = hyp_dist(xlift.z, child.apply(ylift.z));
            nodes.push_back(Node{child, static_cast<std::int32_t>(cur_idx),
                                 static_cast<std::int8_t>(l),
                                 static_cast<std::int16_t>(cur.depth + 1), d});
            if (nodes.size() > opts.frontier_cap)
                throw std::runtime_error("orbit enumeration frontier budget exceeded");
        }
    }

    std::vector<OrbitElement> out;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (nodes[i].disp > T) continue;
        Word w;
        for (std::int32_t j = static_cast<std::int32_t>(i); j >= 0 && nodes[j].letter >= 0;
             j = nodes[j].parent)
            w.push_back(nodes[j].letter);
        std::reverse(w.begin(), w.end());
        out.push_back(OrbitElement{nodes[i].g, dehn_reduce(std::move(w)), nodes[i].disp});
    }
    std::sort(out.begin(), out.end(), [](const OrbitElement& a, const OrbitElement& b) {
        if (a.disp != b.disp) return a.disp < b.disp;
        if (a.word.size() != b.word.size()) return a.word.size() < b.word.size();
        return a.word < b.word;
    });
    return out;
}

/// n_T(x,y): orbit elements with 0 < d(xlift, g*ylift) <= T.
inline std::size_t count_joining_hyp(const Genus2Surface& s, DiskPoint xlift, DiskPoint ylift,
                                     double T, const OrbitOptions& opts = {}) {
    std::size_t n = 0;
    for (const auto& e : enumerate_orbit(s, xlift, ylift, T, opts))
        if (e.disp > s.tol_geo) ++n;
    return n;
}

struct SystoleEstimate {
    double length = 0.0;
    int word_cap = 0;  // enumeration cap; the value is an upper bound certified to this cap
};

/// Minimal translation length 2*acosh(|tr|/2) over nonbacktracking words up to
/// the cap. Direct DFS; no dedup needed for a minimum.
inline SystoleEstimate systole(const Genus2Surface& s, int word_cap = 8) {
    double best = std::numeric_limits<double>::infinity();
    struct Frame {
        Mobius g;
        int last;
        int depth;
    };
    std::vector<Frame> stack;
    stack.push_back(Frame{Mobius{}, -1, 0});
    while (!stack.empty()) {
        Frame f = stack.back();
        stack.pop_back();
        if (f.depth > 0) {
            double tr = std::abs(f.g.trace());
            if (tr > 2.0 + 1e-12) best = std::min(best, 2.0 * std::acosh(tr / 2.0));
        }
        if (f.depth == word_cap) continue;
        for (int l = 0; l < 8; ++l) {
            if (f.last >= 0 && l == inverse_gen_index(f.last)) continue;
            stack.push_back(Frame{f.g.compose(s.gens[l]), l, f.depth + 1});
        }
    }
    return SystoleEstimate{best, word_cap};
}

// ---------------------------------------------------------------------------
// joining segments and connecting counts

struct HypSegment {
    DiskPoint start;  // xlift
    DiskPoint end;    // g * ylift
    double length = 0.0;
};

/// Interior parameter fractions u in (0,1) where a lift p of z lies on the
/// segment; tolerance-based. `lifts` must cover displacement <= seg.length.
inline std::vector<double> hyp_passage_fractions(const Genus2Surface& s, const HypSegment& seg,
                                                 const std::vector<Complex>& lifts,
                                                 std::vector<bool>* marginal = nullptr) {
    std::vector<double> out;
    const double L = seg.length;
    for (const auto& p : lifts) {
        double d1 = hyp_dist(seg.start.z, p);
        if (d1 >= L) continue;
        double d2 = hyp_dist(p, seg.end.z);
        double dev = d1 + d2 - L;
        bool hit = dev <= s.tol_geo && d1 > s.tol_geo && d2 > s.tol_geo;
        if (marginal && !hit && dev <= 1e-6 && d1 > s.tol_geo && d2 > s.tol_geo)
            marginal->push_back(true);
        if (hit) out.push_back(d1 / L);
    }
    std::sort(out.begin(), out.end());
    return out;
}

struct HypConnectingCounts {
    std::size_t joining = 0;
    std::size_t connecting = 0;
    std::size_t marginal_hits = 0;  // tolerance-marginal incidences, reported not resolved
};

/// m_T and n_T together: joining segments minus those with a detected interior
/// passage through x or y.
inline HypConnectingCounts count_connecting_hyp(const Genus2Surface& s, DiskPoint xlift,
                                                DiskPoint ylift, double T,
                                                const OrbitOptions& opts = {}) {
    auto orbit = enumerate_orbit(s, xlift, ylift, T, opts);
    std::vector<Complex> lifts;  // lifts of x and of y within distance T of xlift
    for (const auto& e : enumerate_orbit(s, xlift, xlift, T, opts)) lifts.push_back(e.g.apply(xlift.z));
    for (const auto& e : orbit) lifts.push_back(e.g.apply(ylift.z));
    HypConnectingCounts out;
    for (const auto& e : orbit) {
        if (e.disp <= s.tol_geo) continue;
        ++out.joining;
        HypSegment seg{xlift, DiskPoint{e.g.apply(ylift.z)}, e.disp};
        std::vector<bool> marginal;
        auto hits = hyp_passage_fractions(s, seg, lifts, &marginal);
        out.marginal_hits += marginal.size();
        if (hits.empty()) ++out.connecting;
    }
    return out;
}

struct NonBlockingCertificate {
    DiskPoint x, y;
    std::vector<DiskPoint> candidates;
    double T = 0.0;
    std::size_t lhs = 0;  // m_T(x,y) lower-bound side
    std::size_t rhs = 0;  // sum of n_{T/2} budgets, an upper bound of the lemma's right side
    bool violated = false;
    std::size_t marginal_hits = 0;
};

/// Counting-based refutation: verdict "violated" (lhs > rhs) is sound evidence
/// the candidate set blocks no Gamma_T(x,y), hence is not a blocking set.
inline NonBlockingCertificate non_blocking_certificate(const Genus2Surface& s, DiskPoint xlift,
                                                       DiskPoint ylift,
                                                       const std::vector<DiskPoint>& candidates,
                                                       double T, const OrbitOptions& opts = {}) {
    for (const auto& c : candidates) {
        if (hyp_dist(c.z, xlift.z) <= s.tol_geo || hyp_dist(c.z, ylift.z) <= s.tol_geo)
            throw std::invalid_argument("candidate blocker coincides with an endpoint");
    }
    NonBlockingCertificate cert;
    cert.x = xlift;
    cert.y = ylift;
    cert.candidates = candidates;
    cert.T = T;
    auto mm = count_connecting_hyp(s, xlift, ylift, T, opts);
    cert.lhs = mm.connecting;
    cert.marginal_hits = mm.marginal_hits;
    std::size_t rhs = 0;
    for (const auto& z : candidates) {
        rhs += count_joining_hyp(s, xlift, DiskPoint{z.z}, T / 2.0, opts);
        rhs += count_joining_hyp(s, DiskPoint{z.z}, ylift, T / 2.0, opts);
    }
    cert.rhs = rhs;
    cert.violated = cert.lhs > cert.rhs;
    return cert;
}

// canonical octagon anchors for the CLI and tests
inline DiskPoint octagon_center() { return DiskPoint{Complex(0, 0)}; }

inline DiskPoint octagon_vertex(const Genus2Surface& s, int k) {
    double r = std::tanh(s.octagon_circumradius / 2.0);
    return DiskPoint{r * std::polar(1.0, M_PI / 8.0 + k * M_PI / 4.0)};
}

inline DiskPoint octagon_edge_midpoint(const Genus2Surface& s, int k) {
    double r = std::tanh(s.octagon_inradius / 2.0);
    return DiskPoint{r * std::polar(1.0, k * M_PI / 4.0)};
}

}  // namespace blockgeo
