#pragma once

// Exact rational arithmetic helpers shared by the flat-torus and product code.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace blockgeo {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

using RatVec = std::vector<Rat>;
using RatMat = std::vector<std::vector<Rat>>;

inline Int floor_rat(const Rat& r) {
    Int q = numerator(r) / denominator(r);
    if (r < 0 && q * denominator(r) != numerator(r)) --q;
    return q;
}

inline Int ceil_rat(const Rat& r) { return -floor_rat(-r); }

/// Fractional part in [0,1).
inline Rat mod_one(const Rat& r) { return r - Rat(floor_rat(r)); }

inline RatVec mod_one(const RatVec& v) {
    RatVec out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = mod_one(v[i]);
    return out;
}

/// Smallest nonnegative integer m with m*m >= r. Requires r >= 0.
inline Int ceil_sqrt(const Rat& r) {
    if (r <= 0) return 0;
    Int m = 1;
    while (Rat(m * m) < r) m *= 2;
    Int lo = 0, hi = m;  // invariant: lo*lo < r <= hi*hi
    while (hi - lo > 1) {
        Int mid = (lo + hi) / 2;
        if (Rat(mid * mid) >= r)
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

inline Rat dot(const RatVec& a, const RatVec& b) {
    Rat s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

/// q(v) = v^T G v for symmetric G.
inline Rat quad_form(const RatMat& g, const RatVec& v) {
    Rat s = 0;
    const std::size_t n = v.size();
    for (std::size_t i = 0; i < n; ++i) {
        s += g[i][i] * v[i] * v[i];
        for (std::size_t j = i + 1; j < n; ++j) s += 2 * g[i][j] * v[i] * v[j];
    }
    return s;
}

/// Parses "p/q", "p", or a plain decimal like "1.5" / "-0.25".
inline Rat parse_rational(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        Int p(s.substr(0, slash));
        Int q(s.substr(slash + 1));
        if (q == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
        return Rat(p, q);
    }
    auto dot_pos = s.find('.');
    if (dot_pos == std::string::npos) return Rat(Int(s));
    std::string head = s.substr(0, dot_pos);
    std::string tail = s.substr(dot_pos + 1);
    if (tail.find_first_not_of("0123456789") != std::string::npos)
        throw std::invalid_argument("bad rational literal '" + s + "'");
    bool neg = !head.empty() && head[0] == '-';
    if (head == "-" || head.empty()) head += "0";
    Int whole(head);
    Int frac = tail.empty() ? Int(0) : Int(tail);
    Int den = 1;
    for (std::size_t i = 0; i < tail.size(); ++i) den *= 10;
    Rat abs_val = Rat(abs(whole)) + Rat(frac, den);
    return neg ? -abs_val : abs_val;
}

/// Renders p or p/q, matching the file-format contract.
inline std::string format_rational(const Rat& r) {
    std::string s = numerator(r).str();
    if (denominator(r) != 1) s += "/" + denominator(r).str();
    return s;
}

inline double to_double(const Rat& r) { return r.convert_to<double>(); }

}  // namespace blockgeo
