#include <cmath>
#include <cstdio>
#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "lgp/anisotropy.hpp"
#include "lgp/grid.hpp"

using namespace lgp;

TEST_SUITE_BEGIN("anisotropy");

TEST_CASE("euclidean gauge values") {
    auto m = MetricIntegrand::euclidean();
    CHECK(eval_phi(m, 0, {3, 4}) == doctest::Approx(5.0).epsilon(1e-14));
    CHECK(eval_polar(m, 0, {3, 4}) == doctest::Approx(5.0).epsilon(1e-14));
    CHECK(eval_phi(m, 0, {0, 0}) == 0.0);
}

TEST_CASE("weighted gauge values and projection") {
    ScalarField a(2, 2, 2.0);
    auto m = MetricIntegrand::weighted(a);
    CHECK(eval_phi(m, 0, {3, 4}) == doctest::Approx(10.0).epsilon(1e-14));
    // polar of a(x)*|xi| is |xi*|/a(x)
    CHECK(eval_polar(m, 0, {0, 2}) == doctest::Approx(1.0).epsilon(1e-14));
    Vec2 p = project_polar_ball(m, 0, {3, 4});
    CHECK(p.x == doctest::Approx(1.2).epsilon(1e-12));
    CHECK(p.y == doctest::Approx(1.6).epsilon(1e-12));
    CHECK(m.lambda == doctest::Approx(2.0));
    CHECK(m.Lambda == doctest::Approx(2.0));
}

TEST_CASE("l1 gauge values and clamp projection") {
    auto m = MetricIntegrand::pnorm(1);
    CHECK(eval_phi(m, 0, {3, -4}) == doctest::Approx(7.0).epsilon(1e-14));
    // polar of l1 is the max norm
    CHECK(eval_polar(m, 0, {1, 1}) == doctest::Approx(1.0).epsilon(1e-14));
    Vec2 p = project_polar_ball(m, 0, {2, -0.5});
    CHECK(p.x == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(p.y == doctest::Approx(-0.5).epsilon(1e-14));
}

TEST_CASE("max-norm gauge values and l1-ball projection") {
    auto m = MetricIntegrand::pnorm(-1);
    CHECK(eval_phi(m, 0, {3, -4}) == doctest::Approx(4.0).epsilon(1e-14));
    // polar of the max norm is l1
    CHECK(eval_polar(m, 0, {1, 1}) == doctest::Approx(2.0).epsilon(1e-14));
    // Euclidean projection of (2, -0.5) onto the l1 unit ball is the vertex (1, 0).
    Vec2 p = project_polar_ball(m, 0, {2, -0.5});
    CHECK(p.x == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(p.y == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("p2 equals euclidean") {
    auto m = MetricIntegrand::pnorm(2);
    CHECK(eval_phi(m, 0, {3, 4}) == doctest::Approx(5.0));
    CHECK(eval_polar(m, 0, {3, 4}) == doctest::Approx(5.0));
}

TEST_CASE("projection lands inside the polar ball, is idempotent and safe at the axis") {
    std::mt19937_64 rng(42);
    ScalarField a(3, 3, 0.0);
    for (auto& w : a.v) w = 0.5 + 2.0 * testutil::rand01(rng);
    const MetricIntegrand kinds[] = {MetricIntegrand::euclidean(), MetricIntegrand::pnorm(1),
                                     MetricIntegrand::pnorm(2), MetricIntegrand::pnorm(-1),
                                     MetricIntegrand::weighted(a)};
    for (const auto& m : kinds) {
        for (int it = 0; it < 500; ++it) {
            int cell = static_cast<int>(rng() % 9);
            Vec2 z{4 * testutil::rand_pm1(rng), 4 * testutil::rand_pm1(rng)};
            Vec2 p = project_polar_ball(m, cell, z);
            CHECK(eval_polar(m, cell, p) <= 1.0);  // exact feasibility after projection
            Vec2 q = project_polar_ball(m, cell, p);
            CHECK(q.x == doctest::Approx(p.x).epsilon(1e-12));
            CHECK(q.y == doctest::Approx(p.y).epsilon(1e-12));
            // projection never moves a feasible point further than the original
            double s = 4 * testutil::rand_pm1(rng);
            double sc = project_polar_axis(m, cell, s);
            CHECK(eval_polar(m, cell, {sc, 0.0}) <= 1.0);
            CHECK(eval_polar(m, cell, {0.0, sc}) <= 1.0);
        }
    }
}

TEST_CASE("projection is nonexpansive") {
    std::mt19937_64 rng(7);
    auto m = MetricIntegrand::pnorm(-1);
    for (int it = 0; it < 200; ++it) {
        Vec2 za{3 * testutil::rand_pm1(rng), 3 * testutil::rand_pm1(rng)};
        Vec2 zb{3 * testutil::rand_pm1(rng), 3 * testutil::rand_pm1(rng)};
        Vec2 pa = project_polar_ball(m, 0, za);
        Vec2 pb = project_polar_ball(m, 0, zb);
        CHECK(norm2(pa - pb) <= norm2(za - zb) + 1e-12);
    }
}

TEST_CASE("duality inequality between gauge and polar") {
    std::mt19937_64 rng(11);
    ScalarField a(2, 2, 1.7);
    const MetricIntegrand kinds[] = {MetricIntegrand::euclidean(), MetricIntegrand::pnorm(1),
                                     MetricIntegrand::pnorm(-1), MetricIntegrand::weighted(a)};
    for (const auto& m : kinds) {
        for (int it = 0; it < 500; ++it) {
            Vec2 xi{testutil::rand_pm1(rng), testutil::rand_pm1(rng)};
            Vec2 xs{testutil::rand_pm1(rng), testutil::rand_pm1(rng)};
            CHECK(dot(xi, xs) <= eval_phi(m, 0, xi) * eval_polar(m, 0, xs) + 1e-12);
        }
    }
}

TEST_CASE("integrand self-check accepts the built-in kinds") {
    auto r = check_integrand(MetricIntegrand::euclidean(), 1000);
    CHECK(r.ok);
    CHECK(r.worst_homogeneity <= 1e-12);
    CHECK(r.worst_lower <= 1e-12);
    CHECK(r.worst_upper <= 1e-12);
    CHECK(r.worst_convexity <= 1e-12);
    CHECK(r.worst_duality <= 1e-12);

    CHECK(check_integrand(MetricIntegrand::pnorm(1), 1000).ok);
    CHECK(check_integrand(MetricIntegrand::pnorm(-1), 1000).ok);
}

TEST_CASE("integrand self-check flags a nonpositive weight") {
    ScalarField a(2, 2, 1.0);
    a.at(3) = -0.5;
    auto m = MetricIntegrand::weighted(a);
    auto r = check_integrand(m, 200);
    CHECK_FALSE(r.ok);
    CHECK(r.min_weight <= 0.0);
}

TEST_CASE("anisotropy spec parsing") {
    auto r = testutil::square_raster(4);
    CHECK(make_anisotropy("euclidean", r.grid).kind == AnisotropyKind::euclidean);
    CHECK(make_anisotropy("p1", r.grid).kind == AnisotropyKind::p1);
    CHECK(make_anisotropy("p2", r.grid).kind == AnisotropyKind::p2);
    CHECK(make_anisotropy("pinf", r.grid).kind == AnisotropyKind::pinf);
    CHECK_THROWS_AS(make_anisotropy("l3", r.grid), Error);

    ScalarField w(r.grid.nx, r.grid.ny, 1.5);
    save_field("/tmp/lgp_test_weight.csv", r.grid, w, false);
    auto m = make_anisotropy("weighted:/tmp/lgp_test_weight.csv", r.grid);
    CHECK(m.kind == AnisotropyKind::weighted);
    CHECK(eval_phi(m, r.grid.idx(2, 2), {1, 0}) == doctest::Approx(1.5));
    std::remove("/tmp/lgp_test_weight.csv");
}

TEST_SUITE_END();
