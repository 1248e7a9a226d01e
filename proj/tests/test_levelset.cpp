#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "helpers.hpp"
#include "lgp/levelset.hpp"
#include "lgp/scenarios.hpp"

using namespace lgp;

TEST_SUITE_BEGIN("levelset");

TEST_CASE("level of a linear profile is a single straight open chain") {
    int n = 32;
    auto r = testutil::square_raster(n);
    auto u = testutil::sample(r.grid, [](Vec2 p) { return p.y; });
    auto curves = extract_levelsets(r.grid, u, {0.5});
    REQUIRE(curves.size() == 1);
    REQUIRE(curves[0].polylines.size() == 1);
    const auto& pl = curves[0].polylines[0];
    CHECK(!pl.closed);
    CHECK(pl.pts.size() == size_t(n));
    for (const auto& p : pl.pts) CHECK(p.y == doctest::Approx(0.5).epsilon(1e-12));
    // endpoints reach within a cell of the left and right walls
    double h = r.grid.h;
    auto ends = {pl.pts.front(), pl.pts.back()};
    for (const auto& e : ends)
        CHECK(std::min(e.x, 1.0 - e.x) <= std::sqrt(2.0) * h);

    auto m = MetricIntegrand::euclidean();
    auto devs = segment_check(m, curves[0]);
    REQUIRE(devs.size() == 1);
    CHECK(devs[0] <= 1e-12);
    CHECK(curves[0].deviation <= 1e-12);
}

TEST_CASE("chord deviation of a circular arc matches the sagitta") {
    // quarter arc from (1,0) to (0,1); farthest point from the chord is the midpoint
    LevelCurve c;
    c.t = 0.0;
    Polyline pl;
    pl.closed = false;
    int N = 200;
    for (int k = 0; k <= N; ++k) {
        double th = 0.5 * M_PI * k / N;
        pl.pts.push_back({std::cos(th), std::sin(th)});
    }
    c.polylines.push_back(pl);
    auto m = MetricIntegrand::euclidean();
    auto devs = segment_check(m, c);
    REQUIRE(devs.size() == 1);
    CHECK(devs[0] == doctest::Approx(1.0 - 1.0 / std::sqrt(2.0)).epsilon(1e-3));
}

TEST_CASE("circular level of a cone is a closed loop with a degenerate chord") {
    int n = 48;
    auto r = testutil::square_raster(n);
    auto u = testutil::sample(r.grid, [](Vec2 p) {
        return std::hypot(p.x - 0.5, p.y - 0.5);
    });
    auto curves = extract_levelsets(r.grid, u, {0.3});
    REQUIRE(curves.size() == 1);
    REQUIRE(curves[0].polylines.size() == 1);
    const auto& pl = curves[0].polylines[0];
    CHECK(pl.closed);
    for (const auto& p : pl.pts)
        CHECK(std::hypot(p.x - 0.5, p.y - 0.5) == doctest::Approx(0.3).epsilon(0.05));
    // deviation is measured against the first-to-last chord, which collapses on loops
    auto m = MetricIntegrand::euclidean();
    auto devs = segment_check(m, curves[0]);
    CHECK(devs[0] >= 0.4);
}

TEST_CASE("levels of a monotone profile come out vertically ordered") {
    auto r = testutil::square_raster(32);
    auto u = testutil::sample(r.grid, [](Vec2 p) { return p.y; });
    auto curves = extract_levelsets(r.grid, u, {0.25, 0.5, 0.75});
    REQUIRE(curves.size() == 3);
    double prev = -1;
    for (const auto& c : curves) {
        REQUIRE(c.polylines.size() == 1);
        double mean = 0;
        for (const auto& p : c.polylines[0].pts) mean += p.y;
        mean /= c.polylines[0].pts.size();
        CHECK(mean > prev);
        prev = mean;
    }
}

TEST_CASE("out of range levels give empty curves") {
    auto r = testutil::square_raster(16);
    auto u = testutil::sample(r.grid, [](Vec2 p) { return p.y; });
    auto curves = extract_levelsets(r.grid, u, {5.0});
    REQUIRE(curves.size() == 1);
    CHECK(curves[0].polylines.empty());
    CHECK(curves[0].deviation == 0.0);
}

TEST_CASE("chord deviation is only defined for the isotropic metrics") {
    LevelCurve c;
    c.t = 0;
    c.polylines.push_back({{{0, 0}, {1, 0}}, false});
    auto m = MetricIntegrand::pnorm(1);
    CHECK_THROWS_AS(segment_check(m, c), Error);
    try {
        segment_check(m, c);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::unsupported);
    }
}

TEST_CASE("smooth profiles produce no hotspots and a small trace mismatch") {
    auto r = testutil::square_raster(32);
    auto u = testutil::sample(r.grid, [](Vec2 p) { return p.y; });
    ScanConfig cfg;
    auto rep = continuity_scan(r.grid, r.faces, u, cfg);
    CHECK(rep.hotspots.empty());
    CHECK(rep.trace_err <= r.grid.h);
    CHECK(rep.hotspot_thresh == doctest::Approx(0.25));  // datum range is 1
}

TEST_CASE("a jump along the midline is flagged as a hotspot band") {
    int n = 32;
    auto r = testutil::square_raster(n);
    auto u = testutil::sample(r.grid, [](Vec2 p) { return p.y >= 0.5 ? 1.0 : 0.0; });
    ScanConfig cfg;
    auto rep = continuity_scan(r.grid, r.faces, u, cfg);
    CHECK(!rep.hotspots.empty());
    for (int cell : rep.hotspots) {
        Vec2 p = r.grid.center(cell);
        CHECK(std::abs(p.y - 0.5) <= 2.5 * r.grid.h);
    }
}

TEST_CASE("exclusion zones silence the trace error near singular contact points") {
    auto s = get_scenario("disk_arc");
    int n = 32;
    auto rr = rasterize_scenario(s, n);
    auto u = make_analytic_u(s, rr.grid, 0.0);
    ScanConfig cfg;
    cfg.exclusion_points = s.exclusion_points;
    auto rep = continuity_scan(rr.grid, rr.faces, u, cfg);
    CHECK(rep.trace_err <= 8.0 / n);

    ScanConfig noexcl;
    auto rep2 = continuity_scan(rr.grid, rr.faces, u, noexcl);
    CHECK(rep2.trace_err >= rep.trace_err);
}

TEST_CASE("a plateau boundary level hugs the flat chord of the two-arc disk") {
    auto s = get_scenario("bm_disk");
    int n = 48;
    auto rr = rasterize_scenario(s, n);
    auto u = make_analytic_u(s, rr.grid, 0.5);
    auto curves = extract_levelsets(rr.grid, u, {0.25});
    REQUIRE(curves.size() == 1);
    REQUIRE(!curves[0].polylines.empty());
    const double yc = -1.0 / std::sqrt(2.0);
    for (const auto& pl : curves[0].polylines)
        for (const auto& p : pl.pts) CHECK(std::abs(p.y - yc) <= 2.0 * rr.grid.h);
}

TEST_SUITE_END();
