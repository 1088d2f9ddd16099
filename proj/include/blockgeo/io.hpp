#pragma once

// File formats: space description JSON, point literals, CountCurve CSV and
// JSON certificates. All emission is deterministic: stable key order, '.'
// decimal separator, '\n' newlines, rationals rendered p/q.

#include <blockgeo/analysis.hpp>
#include <blockgeo/blocking.hpp>
#include <blockgeo/core.hpp>

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace blockgeo {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// space descriptions

inline Json space_to_json(const Space& sp) {
    if (const auto* t = std::get_if<LatticeTorus>(&sp.v)) {
        Json j;
        j["type"] = "torus";
        j["dim"] = t->dim;
        Json basis = Json::array();
        for (const auto& row : t->basis) {
            Json r = Json::array();
            for (const auto& e : row) r.push_back(format_rational(e));
            basis.push_back(r);
        }
        j["basis"] = basis;
        return j;
    }
    if (const auto* h = std::get_if<Genus2Surface>(&sp.v)) {
        Json j;
        j["type"] = "genus2";
        j["tolerance"] = h->tol_geo;
        return j;
    }
    const auto& p = std::get<ProductSpace>(sp.v);
    Json j;
    j["type"] = "product";
    j["left"] = space_to_json(*p.left);
    j["right"] = space_to_json(*p.right);
    return j;
}

inline Space space_from_json(const Json& j) {
    std::string type = j.contains("type") ? j.at("type").get<std::string>() : "torus";
    if (type == "torus") {
        const auto& basis_j = j.at("basis");
        RatMat basis;
        for (const auto& row : basis_j) {
            RatVec r;
            for (const auto& e : row) r.push_back(parse_rational(e.get<std::string>()));
            basis.push_back(std::move(r));
        }
        if (j.contains("dim") && j.at("dim").get<int>() != static_cast<int>(basis.size()))
            throw std::invalid_argument("dim does not match basis size");
        return make_space(make_torus(basis));
    }
    if (type == "genus2") {
        double tol = j.contains("tolerance") ? j.at("tolerance").get<double>() : 1e-9;
        return make_space(make_genus2(tol));
    }
    if (type == "product")
        return make_product_space(space_from_json(j.at("left")), space_from_json(j.at("right")));
    throw std::invalid_argument("unknown space type '" + type + "'");
}

/// Loads a space from a JSON file, or accepts the literal "genus2".
inline Space load_space(const std::string& arg) {
    if (arg == "genus2") return make_space(make_genus2());
    std::ifstream in(arg);
    if (!in) throw std::runtime_error("cannot open space file '" + arg + "'");
    Json j = Json::parse(in);
    return space_from_json(j);
}

inline std::uint64_t fnv1a64(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

inline std::string space_hash(const Space& sp) {
    std::ostringstream os;
    os << std::hex << fnv1a64(space_to_json(sp).dump());
    return os.str();
}

// ---------------------------------------------------------------------------
// points

namespace detail {

inline DiskPoint parse_disk_point(const Genus2Surface& s, const std::string& tok) {
    if (tok == "c0") return octagon_center();
    if (tok == "c1") {
        // hyperbolic midpoint between the center and vertex v0
        DiskPoint v = octagon_vertex(s, 0);
        double d = hyp_dist(Complex(0, 0), v.z);
        return DiskPoint{hyp_point_along(Complex(0, 0), v.z, d / 2.0)};
    }
    if (tok.size() >= 2 && (tok[0] == 'v' || tok[0] == 'm')) {
        int k = std::stoi(tok.substr(1));
        if (k < 0 || k > 7) throw std::invalid_argument("anchor index out of range: " + tok);
        return tok[0] == 'v' ? octagon_vertex(s, k) : octagon_edge_midpoint(s, k);
    }
    if (tok.rfind("disk:", 0) == 0) {
        auto rest = tok.substr(5);
        auto comma = rest.find(',');
        if (comma == std::string::npos) throw std::invalid_argument("bad disk point: " + tok);
        double re = std::stod(rest.substr(0, comma));
        double im = std::stod(rest.substr(comma + 1));
        Complex z(re, im);
        if (std::abs(z) >= 1.0) throw std::invalid_argument("disk point outside the unit disk");
        return DiskPoint{z};
    }
    throw std::invalid_argument("unknown hyperbolic point '" + tok + "'");
}

inline std::vector<std::string> split_top(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : s) {
        if (c == sep)
            parts.push_back(std::exchange(cur, std::string{}));
        else
            cur += c;
    }
    parts.push_back(cur);
    return parts;
}

}  // namespace detail

/// Parses a point literal for the given space. Torus: comma-separated
/// rationals; genus-2: anchors c0,c1,v0..v7,m0..m7 or disk:re,im; product:
/// left and right literals joined with '|'.
inline Point parse_point(const Space& sp, const std::string& text) {
    if (const auto* t = std::get_if<LatticeTorus>(&sp.v)) {
        auto parts = detail::split_top(text, ',');
        if (static_cast<int>(parts.size()) != t->dim)
            throw std::invalid_argument("point has wrong dimension: " + text);
        RatVec c;
        for (const auto& p : parts) c.push_back(parse_rational(p));
        return make_point(make_torus_point(std::move(c)));
    }
    if (const auto* h = std::get_if<Genus2Surface>(&sp.v))
        return make_point(detail::parse_disk_point(*h, text));
    const auto& pr = std::get<ProductSpace>(sp.v);
    auto bar = text.find('|');
    if (bar == std::string::npos)
        throw std::invalid_argument("product point needs 'left|right': " + text);
    return make_product_point(parse_point(*pr.left, text.substr(0, bar)),
                              parse_point(*pr.right, text.substr(bar + 1)));
}

inline Json point_to_json(const Point& p) {
    if (const auto* t = std::get_if<TorusPoint>(&p.v)) {
        Json arr = Json::array();
        for (const auto& c : t->c) arr.push_back(format_rational(c));
        return arr;
    }
    if (const auto* d = std::get_if<DiskPoint>(&p.v)) {
        Json j;
        j["re"] = d->z.real();
        j["im"] = d->z.imag();
        return j;
    }
    const auto& pp = std::get<ProductPoint>(p.v);
    Json j;
    j["left"] = point_to_json(*pp.left);
    j["right"] = point_to_json(*pp.right);
    return j;
}

// ---------------------------------------------------------------------------
// run manifest

struct RunManifest {
    std::string command_line;
    Json space;
    std::uint64_t seed = 0;
    double tolerance = 1e-9;
    std::string version = "0.1.0";
    // wall time is reported on stderr only; output files stay byte-stable
};

inline Json manifest_to_json(const RunManifest& m) {
    Json j;
    j["command"] = m.command_line;
    j["space"] = m.space;
    j["seed"] = m.seed;
    j["tolerance"] = m.tolerance;
    j["version"] = m.version;
    return j;
}

// ---------------------------------------------------------------------------
// reports

inline std::string count_curve_csv(const CountCurve& curve) {
    std::string out = "T,n_T,m_T\n";
    for (std::size_t i = 0; i < curve.grid.size(); ++i) {
        out += format_rational(curve.grid[i]);
        out += ',';
        out += std::to_string(curve.n[i]);
        out += ',';
        out += std::to_string(curve.m[i]);
        out += '\n';
    }
    return out;
}

inline CountCurve count_curve_from_csv(std::istream& in) {
    CountCurve curve;
    std::string line;
    if (!std::getline(in, line) || line.rfind("T,", 0) != 0)
        throw std::invalid_argument("bad curve CSV header");
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto parts = detail::split_top(line, ',');
        if (parts.size() != 3) throw std::invalid_argument("bad curve CSV row: " + line);
        curve.grid.push_back(parse_rational(parts[0]));
        curve.n.push_back(std::stoull(parts[1]));
        curve.m.push_back(std::stoull(parts[2]));
    }
    return curve;
}

inline Json blocking_certificate_to_json(const BlockingCertificate& cert, const Space& sp,
                                         const RunManifest& manifest) {
    Json j;
    j["manifest"] = manifest_to_json(manifest);
    j["space_hash"] = space_hash(sp);
    j["config"]["x"] = point_to_json(make_point(cert.x));
    j["config"]["y"] = point_to_json(make_point(cert.y));
    Json blockers = Json::array();
    for (const auto& b : cert.blockers) blockers.push_back(point_to_json(make_point(b)));
    j["blockers"] = blockers;
    if (cert.scope == CertificateScope::All)
        j["scope"] = "all";
    else
        j["scope"] = Json{{"T", format_rational(cert.finite_T)}};
    j["certified"] = cert.certified;
    Json wits = Json::array();
    for (const auto& w : cert.witnesses) {
        Json wj;
        Json res = Json::array();
        for (std::size_t i = 0; i < cert.x.c.size(); ++i) res.push_back((w.residue >> i) & 1);
        wj["residue"] = res;
        wj["t"] = format_rational(w.param);
        wj["blocker"] = w.blocker;
        wj["rule"] = w.rule;
        wits.push_back(wj);
    }
    j["witnesses"] = wits;
    return j;
}

inline Json block_report_to_json(const BlockReport& rep, const Space& sp,
                                 const RunManifest& manifest) {
    Json j;
    j["manifest"] = manifest_to_json(manifest);
    j["space_hash"] = space_hash(sp);
    j["config"]["x"] = point_to_json(rep.cfg.x);
    j["config"]["y"] = point_to_json(rep.cfg.y);
    Json blockers = Json::array();
    for (const auto& b : rep.blockers) blockers.push_back(point_to_json(b));
    j["blockers"] = blockers;
    j["T"] = format_rational(rep.T);
    j["connecting_count"] = rep.connecting_count;
    j["blocked"] = rep.blocked;
    Json hits = Json::array();
    for (const auto& h : rep.hits) {
        Json hj;
        hj["segment"] = h.segment;
        hj["blocker"] = h.blocker;
        if (h.param.exact)
            hj["t"] = format_rational(h.param.r);
        else
            hj["t"] = h.param.f;
        hits.push_back(hj);
    }
    j["hits"] = hits;
    j["unblocked_segments"] = rep.unblocked_segments;
    return j;
}

inline Json non_blocking_certificate_to_json(const NonBlockingCertificate& cert, const Space& sp,
                                             const RunManifest& manifest) {
    Json j;
    j["manifest"] = manifest_to_json(manifest);
    j["space_hash"] = space_hash(sp);
    j["config"]["x"] = point_to_json(make_point(cert.x));
    j["config"]["y"] = point_to_json(make_point(cert.y));
    Json cands = Json::array();
    for (const auto& c : cert.candidates) cands.push_back(point_to_json(make_point(c)));
    j["candidates"] = cands;
    j["T"] = cert.T;
    j["lhs_m_T"] = cert.lhs;
    j["rhs_half_budget"] = cert.rhs;
    j["verdict"] = cert.violated ? "violated" : "not-violated";
    j["marginal_hits"] = cert.marginal_hits;
    return j;
}

inline Json growth_fit_to_json(const GrowthFit& fit) {
    Json j;
    j["model"] = fit.model == GrowthModel::Polynomial ? "polynomial" : "exponential";
    j["parameter"] = fit.parameter;
    j["residual"] = fit.residual;
    j["window"] = Json{{"lo", fit.window_lo}, {"hi", fit.window_hi}};
    j["dropped_zero_counts"] = fit.dropped_zero_counts;
    if (!fit.se.empty()) j["standard_errors"] = fit.se;
    return j;
}

inline Json bound_check_to_json(const BoundCheck& c) {
    Json j;
    j["name"] = c.name;
    Json in;
    for (const auto& [k, v] : c.inputs) in[k] = v;
    j["inputs"] = in;
    j["lhs"] = c.lhs;
    j["rhs"] = c.rhs;
    j["satisfied"] = c.satisfied;
    if (!c.notes.empty()) j["notes"] = c.notes;
    return j;
}

inline Json threshold_bound_to_json(const ThresholdBound& tb, const Space& sp,
                                    const RunManifest& manifest) {
    Json j;
    j["manifest"] = manifest_to_json(manifest);
    j["space_hash"] = space_hash(sp);
    j["config"]["x"] = point_to_json(tb.cfg.x);
    j["config"]["y"] = point_to_json(tb.cfg.y);
    j["T"] = format_rational(tb.T);
    j["lower_bound"] = tb.lower;
    j["lower_bound_kind"] = "grid-restricted";
    j["lower_is_blocking"] = tb.lower_is_blocking;
    j["minimal_subset"] = tb.minimal_subset;
    if (tb.upper) j["upper_bound"] = *tb.upper;
    return j;
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << content;
}

inline void write_json_file(const std::string& path, const Json& j) {
    write_text_file(path, j.dump(2) + "\n");
}

}  // namespace blockgeo
