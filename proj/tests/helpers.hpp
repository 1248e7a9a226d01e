// Shared fixtures for the unit tests: small rasters, field samplers, and a
// deterministic uniform generator (independent of libstdc++ distributions).
#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <random>

#include "lgp/fields.hpp"
#include "lgp/grid.hpp"

namespace testutil {

inline double rand01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double rand_pm1(std::mt19937_64& rng) { return 2.0 * rand01(rng) - 1.0; }

// Unit square, Dirichlet on bottom (f=0) and top (f=1), Neumann on the sides.
inline lgp::Raster square_raster(int n) {
    auto inside = [](lgp::Vec2 p) { return p.x > 0 && p.x < 1 && p.y > 0 && p.y < 1; };
    auto gamma = [](lgp::Vec2 p) { return p.y < 1e-9 || p.y > 1 - 1e-9; };
    auto f = [](lgp::Vec2 p) { return p.y > 0.5 ? 1.0 : 0.0; };
    return lgp::rasterize(inside, gamma, f, lgp::BBox{0, 0, 1, 1}, n);
}

// Unit disk with Dirichlet data everywhere.
inline lgp::Raster disk_raster(int n, const std::function<double(lgp::Vec2)>& f) {
    auto inside = [](lgp::Vec2 p) { return p.x * p.x + p.y * p.y < 1.0; };
    auto gamma = [](lgp::Vec2) { return true; };
    return lgp::rasterize(inside, gamma, f, lgp::BBox{-1, -1, 1, 1}, n);
}

inline lgp::ScalarField sample(const lgp::DomainGrid& g,
                               const std::function<double(lgp::Vec2)>& func) {
    lgp::ScalarField u(g.nx, g.ny, 0.0);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            if (g.is_inside(i, j)) u.at(g.idx(i, j)) = func(g.center(i, j));
    return u;
}

// Random values on inside cells, zero elsewhere.
inline lgp::ScalarField random_field(const lgp::DomainGrid& g, std::mt19937_64& rng) {
    lgp::ScalarField u(g.nx, g.ny, 0.0);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            if (g.is_inside(i, j)) u.at(g.idx(i, j)) = rand_pm1(rng);
    return u;
}

inline double l2(const lgp::ScalarField& u) {
    double s = 0;
    for (double v : u.v) s += v * v;
    return std::sqrt(s);
}

inline double l2(const lgp::VectorField& z) {
    double s = 0;
    for (double v : z.x) s += v * v;
    for (double v : z.y) s += v * v;
    return std::sqrt(s);
}

}  // namespace testutil
