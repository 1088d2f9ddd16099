#include <blockgeo/core.hpp>

#include <doctest.h>

#include <map>
#include <random>
#include <set>
#include <utility>

using namespace blockgeo;

namespace {

Space unit_square() {
    return make_space(make_torus({{Rat(1), Rat(0)}, {Rat(0), Rat(1)}}));
}

Point pt2(const Rat& a, const Rat& b) { return make_point(make_torus_point({a, b})); }

Segment seg2(RatVec start, RatVec disp) {
    Rat l2 = disp[0] * disp[0] + disp[1] * disp[1];
    return Segment{TorusSegment{std::move(start), std::move(disp), l2, {}}};
}

const TorusSegment& as_torus(const Segment& s) { return std::get<TorusSegment>(s.v); }

}  // namespace

TEST_CASE("passage_times on the unit square torus") {
    auto sp = unit_square();
    auto seg = seg2({Rat(0), Rat(0)}, {Rat(3, 2), Rat(0)});
    auto rec = passage_times(sp, seg, pt2(0, 0));
    REQUIRE(rec.times.size() == 1);
    CHECK(rec.times[0] == doctest::Approx(1.0));
    CHECK(rec.fracs[0].r == Rat(2, 3));

    auto rec2 = passage_times(sp, seg, pt2(Rat(1, 2), 0));
    REQUIRE(rec2.times.size() == 1);
    CHECK(rec2.times[0] == doctest::Approx(0.5));

    auto prim = seg2({Rat(0), Rat(0)}, {Rat(1), Rat(0)});
    CHECK(passage_times(sp, prim, pt2(0, 0)).times.empty());
}

TEST_CASE("passage times of one segment through one point differ by >= 2 delta") {
    auto sp = unit_square();
    const double two_delta = 1.0;
    auto seg = seg2({Rat(0), Rat(0)}, {Rat(7, 2), Rat(0)});
    auto rec = passage_times(sp, seg, pt2(Rat(1, 4), 0));
    REQUIRE(rec.times.size() >= 2);
    for (std::size_t i = 1; i < rec.times.size(); ++i)
        CHECK(rec.times[i] - rec.times[i - 1] >= two_delta - 1e-12);
}

TEST_CASE("trim_to_connecting pinned instances") {
    auto sp = unit_square();
    Configuration cfg{pt2(0, 0), pt2(Rat(1, 2), 0)};
    auto trimmed = trim_to_connecting(sp, seg2({Rat(0), Rat(0)}, {Rat(3, 2), Rat(0)}), cfg);
    CHECK(as_torus(trimmed).len2 == Rat(1, 4));
    CHECK(as_torus(trimmed).disp == RatVec{Rat(1, 2), Rat(0)});

    Configuration loop{pt2(0, 0), pt2(0, 0)};
    auto t2 = trim_to_connecting(sp, seg2({Rat(0), Rat(0)}, {Rat(2), Rat(0)}), loop);
    CHECK(as_torus(t2).len2 == Rat(1));

    // idempotence on a connecting segment
    auto conn = seg2({Rat(0), Rat(0)}, {Rat(1, 2), Rat(0)});
    auto t3 = trim_to_connecting(sp, conn, cfg);
    CHECK(as_torus(t3).disp == as_torus(conn).disp);
    CHECK(as_torus(t3).start == as_torus(conn).start);
}

TEST_CASE("split_at_blocker pinned instances") {
    auto sp = unit_square();
    // closed geodesic, blocker at the antipode; tie at exactly T/2 goes to the
    // initial piece
    auto s1 = split_at_blocker(sp, seg2({Rat(0), Rat(0)}, {Rat(1), Rat(0)}),
                               pt2(Rat(1, 2), 0), Rat(1));
    CHECK(as_torus(s1).len2 == Rat(1, 4));
    CHECK(as_torus(s1).start == RatVec{Rat(0), Rat(0)});

    auto s2 = split_at_blocker(sp, seg2({Rat(0), Rat(0)}, {Rat(-3, 4), Rat(0)}),
                               pt2(Rat(3, 4), 0), Rat(3, 4));
    CHECK(as_torus(s2).len2 == Rat(1, 16));

    CHECK_THROWS_AS(split_at_blocker(sp, seg2({Rat(0), Rat(0)}, {Rat(1), Rat(0)}),
                                     pt2(Rat(1, 3), Rat(1, 3)), Rat(1)),
                    std::invalid_argument);
}

TEST_CASE("counter pinned values") {
    auto sp = unit_square();
    Configuration cfg{pt2(0, 0), pt2(Rat(1, 2), 0)};
    CHECK(count_joining(sp, cfg, Rat(3, 2)) == 8);
    CHECK(count_connecting(sp, cfg, Rat(3, 2)) == 6);

    Configuration loop{pt2(0, 0), pt2(0, 0)};
    CHECK(count_joining(sp, loop, Rat(1, 2)) == 0);
    CHECK(count_joining(sp, loop, Rat(1)) == 4);
    CHECK(count_connecting(sp, loop, Rat(1)) == 4);
    CHECK(count_connecting(sp, cfg, Rat(1, 4)) == 0);

    CHECK(count_through(sp, loop, pt2(Rat(1, 2), 0), Rat(1)) == 2);
    CHECK(count_through(sp, loop, pt2(0, Rat(1, 2)), Rat(1)) == 2);
    CHECK(count_through(sp, loop, pt2(Rat(1, 3), Rat(1, 3)), Rat(1)) == 0);
    CHECK_THROWS_AS(count_through(sp, loop, pt2(0, 0), Rat(1)), std::invalid_argument);
}

TEST_CASE("counters swap-symmetric and monotone") {
    auto sp = unit_square();
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> num(0, 7);
    for (int trial = 0; trial < 10; ++trial) {
        Configuration cfg{pt2(Rat(num(rng), 8), Rat(num(rng), 8)),
                          pt2(Rat(num(rng), 8), Rat(num(rng), 8))};
        Configuration swp{cfg.y, cfg.x};
        std::size_t prev_n = 0, prev_m = 0;
        for (int T = 1; T <= 6; ++T) {
            auto n = count_joining(sp, cfg, Rat(T));
            auto m = count_connecting(sp, cfg, Rat(T));
            CHECK(n == count_joining(sp, swp, Rat(T)));
            CHECK(m == count_connecting(sp, swp, Rat(T)));
            CHECK(m <= n);
            CHECK(n >= prev_n);
            CHECK(m >= prev_m);
            prev_n = n;
            prev_m = m;
        }
    }
}

TEST_CASE("trim map lands in the connecting set with bounded fibers") {
    auto sp = unit_square();
    const auto& t = std::get<LatticeTorus>(sp.v);
    Rat delta2 = injectivity_radius2(t);
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<int> num(0, 5);
    for (int trial = 0; trial < 5; ++trial) {
        Configuration cfg{pt2(Rat(num(rng), 6), Rat(num(rng), 6)),
                          pt2(Rat(num(rng), 6), Rat(num(rng), 6))};
        Rat T(8);
        auto joining = enumerate_joining_any(sp, cfg, T);
        std::set<RatVec> connecting;
        for (const auto& s : joining)
            if (is_connecting(sp, s, cfg)) connecting.insert(as_torus(s).disp);
        std::map<RatVec, std::size_t> fiber;
        for (const auto& s : joining) {
            auto img = trim_to_connecting(sp, s, cfg);
            REQUIRE(is_connecting(sp, img, cfg));
            REQUIRE(connecting.count(as_torus(img).disp) == 1);
            ++fiber[as_torus(img).disp];
        }
        // surjectivity and the fiber bound (T/2delta)^2
        Rat bound = T * T / (4 * delta2);
        CHECK(fiber.size() == connecting.size());
        for (const auto& [disp, count] : fiber) CHECK(Rat(count) <= bound);
    }
}

TEST_CASE("split map is injective on the through-z family") {
    auto sp = unit_square();
    std::mt19937_64 rng(23);
    std::uniform_int_distribution<int> num(0, 5);
    for (int trial = 0; trial < 5; ++trial) {
        Configuration cfg{pt2(Rat(num(rng), 6), Rat(num(rng), 6)),
                          pt2(Rat(num(rng), 6), Rat(num(rng), 6))};
        Point z = pt2(Rat(num(rng), 6), Rat(num(rng), 6));
        if (points_equal(z, cfg.x) || points_equal(z, cfg.y)) continue;
        Rat T(8);
        std::set<std::pair<RatVec, RatVec>> images;
        std::size_t domain = 0;
        for (const auto& s : enumerate_joining_any(sp, cfg, T)) {
            if (!is_connecting(sp, s, cfg)) continue;
            if (passage_fractions(sp, s, z).empty()) continue;
            ++domain;
            auto img = split_at_blocker(sp, s, z, T);
            // the split piece fits in the half-length budget
            CHECK(as_torus(img).len2 <= T * T / 4);
            images.insert({as_torus(img).start, as_torus(img).disp});
        }
        CHECK(images.size() == domain);
    }
}

TEST_CASE("count curves are consistent with pointwise counters") {
    auto sp = unit_square();
    Configuration cfg{pt2(0, 0), pt2(Rat(1, 2), 0)};
    std::vector<Rat> grid = {Rat(1, 2), Rat(1), Rat(3, 2), Rat(2), Rat(3)};
    auto curve = compute_count_curve(sp, cfg, grid);
    REQUIRE(curve.grid.size() == grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        CHECK(curve.n[i] == count_joining(sp, cfg, grid[i]));
        CHECK(curve.m[i] == count_connecting(sp, cfg, grid[i]));
        CHECK(curve.m[i] <= curve.n[i]);
        if (i) {
            CHECK(curve.n[i] >= curve.n[i - 1]);
            CHECK(curve.m[i] >= curve.m[i - 1]);
        }
    }
}
