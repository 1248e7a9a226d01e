#include <cmath>
#include <cstring>
#include <limits>

#include "doctest.h"
#include "helpers.hpp"
#include "lgp/solver.hpp"

using namespace lgp;

TEST_SUITE_BEGIN("solver");

TEST_CASE("square step problem converges to the known optimum") {
    auto m = MetricIntegrand::euclidean();
    auto r = testutil::square_raster(16);
    SolveConfig cfg;
    cfg.gap_tol = 1e-5;
    cfg.max_iters = 20000;
    auto rep = solve(m, r.grid, r.faces, cfg);
    CHECK(rep.converged);
    // any monotone transport between the two datum plateaus costs exactly 1
    CHECK(rep.primal == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(rep.dual <= rep.primal + 1e-12);
    CHECK(rep.rel_gap <= cfg.gap_tol);
}

TEST_CASE("zero datum is solved immediately") {
    auto m = MetricIntegrand::euclidean();
    auto inside = [](Vec2 p) { return p.x > 0 && p.x < 1 && p.y > 0 && p.y < 1; };
    auto gamma = [](Vec2 p) { return p.y < 1e-9 || p.y > 1 - 1e-9; };
    auto f0 = [](Vec2) { return 0.0; };
    auto r = rasterize(inside, gamma, f0, BBox{0, 0, 1, 1}, 8);
    auto rep = solve(m, r.grid, r.faces, SolveConfig{});
    CHECK(rep.converged);
    CHECK(rep.iters_used == 1);
    // trace holds the initial state and the final iterate
    REQUIRE(rep.trace.size() == 2);
    CHECK(rep.trace.front().iter == 0);
    CHECK(rep.trace.back().iter == 1);
    CHECK(rep.primal == doctest::Approx(0.0));
    CHECK(rep.gap == doctest::Approx(0.0));
    for (double v : rep.u.v) CHECK(v == 0.0);
    for (double v : rep.z.x) CHECK(v == 0.0);
    for (double v : rep.z.y) CHECK(v == 0.0);
}

TEST_CASE("oversized steps are rejected up front") {
    auto m = MetricIntegrand::euclidean();
    auto r = testutil::square_raster(8);
    SolveConfig cfg;
    cfg.tau = r.grid.h;
    cfg.sigma = r.grid.h;  // tau*sigma*8/h^2 = 8 > 1
    CHECK_THROWS_AS(solve(m, r.grid, r.faces, cfg), Error);
    try {
        solve(m, r.grid, r.faces, cfg);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::config);
    }
}

TEST_CASE("repeated runs are bit identical") {
    auto m = MetricIntegrand::euclidean();
    auto r = testutil::square_raster(12);
    SolveConfig cfg;
    cfg.max_iters = 500;
    auto a = solve(m, r.grid, r.faces, cfg);
    auto b = solve(m, r.grid, r.faces, cfg);
    REQUIRE(a.u.v.size() == b.u.v.size());
    CHECK(std::memcmp(a.u.v.data(), b.u.v.data(), a.u.v.size() * sizeof(double)) == 0);
    CHECK(a.iters_used == b.iters_used);
}

TEST_CASE("logged objectives descend up to the tolerance and the gap stays safe") {
    auto m = MetricIntegrand::euclidean();
    auto r = testutil::square_raster(16);
    SolveConfig cfg;
    cfg.max_iters = 4000;
    cfg.log_every = 10;  // the 16-cell square converges in ~50 iterations
    auto rep = solve(m, r.grid, r.faces, cfg);
    REQUIRE(rep.trace.size() > 3);
    // primal at the next logged window stays within gap_tol of the previous one
    for (size_t k = 0; k + 1 < rep.trace.size(); ++k) {
        CHECK(rep.trace[k + 1].primal <= rep.trace[k].primal + cfg.gap_tol);
    }
    for (const auto& t : rep.trace) {
        CHECK(t.gap >= -1e-8 * std::max(1.0, t.primal));
        CHECK((t.iter % cfg.log_every == 0 || t.iter == rep.iters_used));
    }
    CHECK(rep.trace.front().iter == 0);
}

TEST_CASE("two-arc disk datum reaches the chord cost and flattens the middle square") {
    auto m = MetricIntegrand::euclidean();
    const double c = 1.0 / std::sqrt(2.0);
    auto inside = [](Vec2 p) { return norm2(p) < 1.0; };
    auto gamma = [c](Vec2 p) { return std::abs(p.y) > c; };
    auto f = [](Vec2 p) { return p.y > 0 ? 1.0 : 0.0; };
    auto r = rasterize(inside, gamma, f, BBox{-1, -1, 1, 1}, 128);
    SolveConfig cfg;
    cfg.gap_tol = 1e-5;
    cfg.max_iters = 150000;  // the plateau between the chords mixes at a diffusive rate
    auto rep = solve(m, r.grid, r.faces, cfg);
    CHECK(rep.converged);
    CHECK(std::abs(rep.primal - std::sqrt(2.0)) <= 0.03);

    // every minimizer is constant between the two chords
    double sum = 0, sum2 = 0;
    int cnt = 0;
    for (int j = 0; j < r.grid.ny; ++j)
        for (int i = 0; i < r.grid.nx; ++i) {
            if (!r.grid.is_inside(i, j)) continue;
            Vec2 p = r.grid.center(i, j);
            if (std::abs(p.x) >= c || std::abs(p.y) >= c) continue;
            double v = rep.u.at(r.grid.idx(i, j));
            sum += v;
            sum2 += v * v;
            ++cnt;
        }
    REQUIRE(cnt > 0);
    double mean = sum / cnt;
    double sd = std::sqrt(std::max(0.0, sum2 / cnt - mean * mean));
    CHECK(sd <= 0.02);  // datum range is 1
}

TEST_CASE("non-finite state is reported with the failing iteration") {
    auto m = MetricIntegrand::euclidean();
    auto r = testutil::square_raster(8);
    ScalarField u0(r.grid.nx, r.grid.ny, 0.0);
    u0.v[r.grid.idx(3, 3)] = std::numeric_limits<double>::infinity();
    SolveConfig cfg;
    cfg.u0 = &u0;
    try {
        solve(m, r.grid, r.faces, cfg);
        FAIL("expected a numerical error");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::numerical);
        CHECK(std::string(e.what()).find("iteration") != std::string::npos);
    }
}

TEST_SUITE_END();
