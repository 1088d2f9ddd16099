#include <blockgeo/hyperbolic.hpp>

#include <doctest.h>

#include <cmath>

#include "oracles.hpp"

using namespace blockgeo;

TEST_CASE("surface construction") {
    auto s = make_genus2();
    const double expected_trace = 2.0 * (1.0 + std::sqrt(2.0));
    for (int k = 0; k < 4; ++k) {
        CHECK(s.gens[k].trace() == doctest::Approx(expected_trace).epsilon(1e-12));
        CHECK(std::abs(s.gens[k].trace()) > 2.0);
        // unit determinant |a|^2 - |b|^2 = 1
        double det = std::norm(s.gens[k].a) - std::norm(s.gens[k].b);
        CHECK(det == doctest::Approx(1.0).epsilon(1e-12));
    }
    CHECK(s.gen_translation_length == doctest::Approx(2.0 * std::acosh(1.0 + std::sqrt(2.0))));
    CHECK(s.octagon_inradius == doctest::Approx(std::acosh(1.0 + std::sqrt(2.0))));
    CHECK(s.octagon_circumradius == doctest::Approx(std::acosh(3.0 + 2.0 * std::sqrt(2.0))));
}

TEST_CASE("disk geometry primitives") {
    double t = 1.7;
    Complex z = std::tanh(t / 2.0) * std::polar(1.0, 0.3);
    CHECK(hyp_dist(Complex(0, 0), z) == doctest::Approx(t).epsilon(1e-12));
    Complex mid = hyp_point_along(Complex(0, 0), z, t / 2.0);
    CHECK(hyp_dist(Complex(0, 0), mid) == doctest::Approx(t / 2.0).epsilon(1e-9));
    CHECK(hyp_dist(mid, z) == doctest::Approx(t / 2.0).epsilon(1e-9));
}

TEST_CASE("word reduction") {
    CHECK(free_reduce({0, 4, 1}) == Word{1});
    CHECK(free_reduce({0, 1, 5, 4}) == Word{});
    // the full relator Dehn-reduces to the empty word
    CHECK(dehn_reduce(octagon_relator()).empty());
    CHECK(word_to_string({0, 5, 2}) == "aBc");
    CHECK(word_to_string({}) == "e");
}

TEST_CASE("orbit enumeration basics") {
    auto s = make_genus2();
    auto at2 = enumerate_orbit(s, octagon_center(), octagon_center(), 2.0);
    REQUIRE(at2.size() == 1);
    CHECK(at2[0].word.empty());
    CHECK(at2[0].disp == doctest::Approx(0.0));
    CHECK(count_joining_hyp(s, octagon_center(), octagon_center(), 2.0) == 0);

    // just above the shortest translation: the 8 generators appear
    double sys = 2.0 * std::acosh(1.0 + std::sqrt(2.0));
    CHECK(count_joining_hyp(s, octagon_center(), octagon_center(), sys + 1e-6) == 8);

    CHECK_THROWS_AS(enumerate_orbit(s, octagon_center(), octagon_center(), 13.0),
                    std::invalid_argument);
}

TEST_CASE("orbit counts nested in T") {
    auto s = make_genus2();
    auto big = enumerate_orbit(s, octagon_center(), octagon_vertex(s, 0), 6.0);
    auto small = enumerate_orbit(s, octagon_center(), octagon_vertex(s, 0), 5.0);
    CHECK(small.size() <= big.size());
    std::size_t within = 0;
    for (const auto& e : big)
        if (e.disp <= 5.0) ++within;
    CHECK(within == small.size());
}

TEST_CASE("pruned enumeration equals the unpruned word oracle") {
    auto s = make_genus2();
    struct Probe {
        Complex x, y;
    };
    DiskPoint c1{hyp_point_along(Complex(0, 0), octagon_vertex(s, 0).z,
                                 hyp_dist(Complex(0, 0), octagon_vertex(s, 0).z) / 2.0)};
    Probe probes[] = {{Complex(0, 0), Complex(0, 0)},
                      {Complex(0, 0), c1.z},
                      {c1.z, octagon_edge_midpoint(s, 3).z}};
    for (const auto& p : probes) {
        // the oracle is complete at cap 7 for T <= 6: cap 6 and cap 7 agree
        auto d6 = oracle::hyp_displacements(s, p.x, p.y, 6.0, 6);
        auto d7 = oracle::hyp_displacements(s, p.x, p.y, 6.0, 7);
        REQUIRE(d6.size() == d7.size());
        auto lib = enumerate_orbit(s, DiskPoint{p.x}, DiskPoint{p.y}, 6.0);
        REQUIRE(lib.size() == d7.size());
        for (std::size_t i = 0; i < lib.size(); ++i)
            CHECK(lib[i].disp == doctest::Approx(d7[i]).epsilon(1e-9));
    }
}

TEST_CASE("counts symmetric and rotation-invariant") {
    auto s = make_genus2();
    DiskPoint x = octagon_center();
    DiskPoint y{0.3 * std::polar(1.0, 0.7)};
    CHECK(count_joining_hyp(s, x, y, 5.0) == count_joining_hyp(s, y, x, 5.0));

    // conjugating by the pi/4 rotation permutes the generators: counts at
    // rotated lifts agree
    Complex rot = std::polar(1.0, M_PI / 4.0);
    DiskPoint xr{rot * x.z}, yr{rot * y.z};
    CHECK(count_joining_hyp(s, x, y, 5.0) == count_joining_hyp(s, xr, yr, 5.0));
}

TEST_CASE("systole matches the generator translation length") {
    auto s = make_genus2();
    auto est = systole(s, 6);
    CHECK(est.length == doctest::Approx(2.0 * std::acosh(1.0 + std::sqrt(2.0))).epsilon(1e-12));
    CHECK(est.word_cap == 6);
}

TEST_CASE("connecting counts and the m <= n chain") {
    auto s = make_genus2();
    DiskPoint x = octagon_center();
    DiskPoint y{0.25 * std::polar(1.0, 1.1)};
    auto mm = count_connecting_hyp(s, x, y, 6.0);
    auto n = count_joining_hyp(s, x, y, 6.0);
    CHECK(mm.joining == n);
    CHECK(mm.connecting <= mm.joining);
    CHECK(mm.connecting >= 1);
    // generic configuration: lift collinearity is measure zero
    CHECK(mm.marginal_hits == 0);
}

TEST_CASE("non-blocking certificates") {
    auto s = make_genus2();
    DiskPoint x = octagon_center();
    DiskPoint y{0.2 * std::polar(1.0, 0.4)};
    auto empty = non_blocking_certificate(s, x, y, {}, 4.0);
    CHECK(empty.rhs == 0);
    CHECK(empty.lhs >= 1);
    CHECK(empty.violated);

    std::vector<DiskPoint> cands = {DiskPoint{0.3 * std::polar(1.0, 2.0)},
                                    DiskPoint{0.4 * std::polar(1.0, 4.0)}};
    auto small_t = non_blocking_certificate(s, x, y, cands, 2.0);
    CHECK_FALSE(small_t.violated);

    CHECK_THROWS_AS(non_blocking_certificate(s, x, y, {x}, 4.0), std::invalid_argument);
}

TEST_CASE("octagon anchors") {
    auto s = make_genus2();
    CHECK(in_fundamental_octagon(s, Complex(0, 0)));
    for (int k = 0; k < 8; ++k) {
        CHECK(hyp_dist(Complex(0, 0), octagon_vertex(s, k).z) ==
              doctest::Approx(s.octagon_circumradius).epsilon(1e-12));
        CHECK(hyp_dist(Complex(0, 0), octagon_edge_midpoint(s, k).z) ==
              doctest::Approx(s.octagon_inradius).epsilon(1e-12));
        CHECK(in_fundamental_octagon(s, octagon_edge_midpoint(s, k).z));
    }
    // edge midpoints are pairwise identified by the side pairings
    for (int k = 0; k < 4; ++k) {
        Complex image = s.gens[k].inverse().apply(octagon_edge_midpoint(s, k).z);
        CHECK(std::abs(image - octagon_edge_midpoint(s, (k + 4) % 8).z) < 1e-9);
    }
}
