#pragma once

// Space-generic finite blocking verification and exhaustive minimal-blocking
// search over candidate grids.

#include <blockgeo/core.hpp>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace blockgeo {

struct BlockHit {
    std::size_t segment = 0;  // index into the enumerated Gamma_T list
    std::size_t blocker = 0;
    Fraction param;           // strictly interior
};

struct BlockReport {
    Configuration cfg;
    std::vector<Point> blockers;
    Rat T;
    bool blocked = false;
    std::vector<BlockHit> hits;                   // one per blocked segment (first blocker hit)
    std::vector<std::size_t> unblocked_segments;  // indices of offenders
    std::size_t connecting_count = 0;
};

/// Enumerates Gamma_T(x,y) and tests interior passage through each blocker.
inline BlockReport verify_blocking_finite(const Space& sp, const Configuration& cfg,
                                          const std::vector<Point>& blockers, const Rat& T,
                                          const OrbitOptions& opts = {}) {
    for (const auto& b : blockers)
        if (points_equal(b, cfg.x) || points_equal(b, cfg.y))
            throw std::invalid_argument("blocker coincides with a configuration endpoint");
    BlockReport rep;
    rep.cfg = cfg;
    rep.blockers = blockers;
    rep.T = T;
    auto segs = enumerate_joining_any(sp, cfg, T, opts);
    std::size_t idx = 0;
    for (const auto& seg : segs) {
        if (!is_connecting(sp, seg, cfg, opts)) {
            ++idx;
            continue;
        }
        ++rep.connecting_count;
        bool hit = false;
        for (std::size_t b = 0; b < blockers.size() && !hit; ++b) {
            auto fr = passage_fractions(sp, seg, blockers[b], opts);
            if (!fr.empty()) {
                rep.hits.push_back(BlockHit{idx, b, fr.front()});
                hit = true;
            }
        }
        if (!hit) rep.unblocked_segments.push_back(idx);
        ++idx;
    }
    rep.blocked = rep.unblocked_segments.empty();
    return rep;
}

struct ThresholdBound {
    Configuration cfg;
    Rat T;
    // grid-restricted lower bound: smallest subset size that blocks Gamma_T,
    // or max_size+1 when none does; a smaller off-grid set is not excluded.
    std::size_t lower = 0;
    bool lower_is_blocking = false;               // true when a blocking subset was found
    std::vector<std::size_t> minimal_subset;      // candidate indices, lexicographically first
    std::optional<std::size_t> upper;             // certified upper bound, when attached
};

/// Exhaustive search over candidate subsets of size 1..max_size, increasing
/// size then lexicographic; first success wins.
inline ThresholdBound search_min_blocking(const Space& sp, const Configuration& cfg, const Rat& T,
                                          const std::vector<Point>& candidates,
                                          std::size_t max_size, const OrbitOptions& opts = {}) {
    if (max_size > 6) throw std::invalid_argument("max_size capped at 6");
    for (const auto& c : candidates)
        if (points_equal(c, cfg.x) || points_equal(c, cfg.y))
            throw std::invalid_argument("candidate coincides with a configuration endpoint");

    // per-candidate bitmask of blocked connecting segments
    auto segs = enumerate_joining_any(sp, cfg, T, opts);
    std::vector<std::size_t> conn_idx;
    for (std::size_t i = 0; i < segs.size(); ++i)
        if (is_connecting(sp, segs[i], cfg, opts)) conn_idx.push_back(i);
    const std::size_t nseg = conn_idx.size();
    const std::size_t words = (nseg + 63) / 64;
    std::vector<std::vector<std::uint64_t>> blocks(candidates.size(),
                                                   std::vector<std::uint64_t>(words, 0));
    for (std::size_t c = 0; c < candidates.size(); ++c)
        for (std::size_t j = 0; j < nseg; ++j)
            if (!passage_fractions(sp, segs[conn_idx[j]], candidates[c], opts).empty())
                blocks[c][j / 64] |= std::uint64_t(1) << (j % 64);

    std::vector<std::uint64_t> full(words, 0);
    for (std::size_t j = 0; j < nseg; ++j) full[j / 64] |= std::uint64_t(1) << (j % 64);

    ThresholdBound tb;
    tb.cfg = cfg;
    tb.T = T;

    std::size_t budget = 10'000'000;
    std::vector<std::size_t> pick;
    std::vector<std::uint64_t> acc(words);
    auto covered = [&](const std::vector<std::uint64_t>& v) {
        for (std::size_t w = 0; w < words; ++w)
            if (v[w] != full[w]) return false;
        return true;
    };
    std::optional<std::vector<std::size_t>> found;
    auto rec = [&](auto&& self, std::size_t start, std::size_t remaining,
                   std::vector<std::uint64_t> cur) -> void {
        if (found) return;
        if (remaining == 0) {
            if (budget == 0) throw std::runtime_error("subset search budget exceeded");
            --budget;
            if (covered(cur)) found = pick;
            return;
        }
        for (std::size_t c = start; c + remaining <= candidates.size(); ++c) {
            pick.push_back(c);
            std::vector<std::uint64_t> next = cur;
            for (std::size_t w = 0; w < words; ++w) next[w] |= blocks[c][w];
            self(self, c + 1, remaining - 1, std::move(next));
            pick.pop_back();
            if (found) return;
        }
    };
    std::size_t size;
    for (size = 1; size <= max_size && !found; ++size)
        rec(rec, 0, size, std::vector<std::uint64_t>(words, 0));
    if (found) {
        tb.lower = found->size();
        tb.lower_is_blocking = true;
        tb.minimal_subset = *found;
    } else {
        tb.lower = max_size + 1;
        tb.lower_is_blocking = false;
    }
    return tb;
}

}  // namespace blockgeo
