#include "lgp/anisotropy.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "lgp/grid.hpp"

namespace lgp {

namespace {

double rand01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double weight_at(const MetricIntegrand& m, int cell) {
    return m.weight.v[static_cast<size_t>(cell) % m.weight.size()];
}

// Euclidean length without the overflow guards of std::hypot; slot values
// are bounded by a few multiples of 1/h so squaring is safe, and this sits
// in the innermost solver loop.
double len2(double x, double y) { return std::sqrt(x * x + y * y); }

// Shrinks p until the polar gauge is at most 1; projection formulas can land
// a hair outside the ball after rounding and downstream feasibility checks
// use a zero tolerance.
Vec2 pull_inside(const MetricIntegrand& m, int cell, Vec2 p) {
    for (int guard = 0; guard < 64 && eval_polar(m, cell, p) > 1.0; ++guard) {
        p.x *= 1.0 - 4.0 * 0x1.0p-53;
        p.y *= 1.0 - 4.0 * 0x1.0p-53;
    }
    return p;
}

}  // namespace

MetricIntegrand MetricIntegrand::euclidean() {
    MetricIntegrand m;
    m.kind = AnisotropyKind::euclidean;
    return m;
}

MetricIntegrand MetricIntegrand::pnorm(int p) {
    MetricIntegrand m;
    if (p == 1) {
        m.kind = AnisotropyKind::p1;
        m.lambda = 1.0;
        m.Lambda = std::sqrt(2.0);
    } else if (p == 2) {
        m.kind = AnisotropyKind::p2;
    } else if (p < 0) {
        m.kind = AnisotropyKind::pinf;
        m.lambda = 1.0 / std::sqrt(2.0);
        m.Lambda = 1.0;
    } else {
        throw Error(Errc::config, "pnorm supports p = 1, p = 2, or negative for the max norm");
    }
    return m;
}

MetricIntegrand MetricIntegrand::weighted(ScalarField a) {
    MetricIntegrand m;
    m.kind = AnisotropyKind::weighted;
    m.lambda = a.v.empty() ? 1.0 : *std::min_element(a.v.begin(), a.v.end());
    m.Lambda = a.v.empty() ? 1.0 : *std::max_element(a.v.begin(), a.v.end());
    m.weight = std::move(a);
    return m;
}

MetricIntegrand make_anisotropy(const std::string& spec, const DomainGrid& grid) {
    if (spec == "euclidean") return MetricIntegrand::euclidean();
    if (spec == "p1") return MetricIntegrand::pnorm(1);
    if (spec == "p2") return MetricIntegrand::pnorm(2);
    if (spec == "pinf") return MetricIntegrand::pnorm(-1);
    const std::string prefix = "weighted:";
    if (spec.rfind(prefix, 0) == 0) {
        ScalarField a = load_field(spec.substr(prefix.size()), grid);
        for (auto& v : a.v)
            if (!std::isfinite(v)) v = 1.0;
        return MetricIntegrand::weighted(std::move(a));
    }
    throw Error(Errc::lookup, "unknown anisotropy spec '" + spec +
                                  "'; expected euclidean, p1, p2, pinf, or weighted:<csv>");
}

double eval_phi(const MetricIntegrand& m, int cell, Vec2 xi) {
    switch (m.kind) {
        case AnisotropyKind::euclidean:
        case AnisotropyKind::p2:
            return len2(xi.x, xi.y);
        case AnisotropyKind::weighted:
            return weight_at(m, cell) * len2(xi.x, xi.y);
        case AnisotropyKind::p1:
            return std::abs(xi.x) + std::abs(xi.y);
        case AnisotropyKind::pinf:
            return std::max(std::abs(xi.x), std::abs(xi.y));
    }
    return 0.0;
}

double eval_polar(const MetricIntegrand& m, int cell, Vec2 xs) {
    switch (m.kind) {
        case AnisotropyKind::euclidean:
        case AnisotropyKind::p2:
            return len2(xs.x, xs.y);
        case AnisotropyKind::weighted:
            return len2(xs.x, xs.y) / weight_at(m, cell);
        case AnisotropyKind::p1:
            return std::max(std::abs(xs.x), std::abs(xs.y));
        case AnisotropyKind::pinf:
            return std::abs(xs.x) + std::abs(xs.y);
    }
    return 0.0;
}

Vec2 project_polar_ball(const MetricIntegrand& m, int cell, Vec2 z) {
    if (eval_polar(m, cell, z) <= 1.0) return z;
    switch (m.kind) {
        case AnisotropyKind::euclidean:
        case AnisotropyKind::p2: {
            double r = len2(z.x, z.y);
            return pull_inside(m, cell, {z.x / r, z.y / r});
        }
        case AnisotropyKind::weighted: {
            double a = weight_at(m, cell);
            double r = len2(z.x, z.y);
            return pull_inside(m, cell, {a * z.x / r, a * z.y / r});
        }
        case AnisotropyKind::p1:
            return {std::clamp(z.x, -1.0, 1.0), std::clamp(z.y, -1.0, 1.0)};
        case AnisotropyKind::pinf: {
            // Euclidean projection onto the l1 unit ball by soft thresholding.
            double ax = std::abs(z.x), ay = std::abs(z.y);
            double hi = std::max(ax, ay), lo = std::min(ax, ay);
            double th = (hi + lo - 1.0) / 2.0;
            Vec2 p;
            if (th >= lo) {
                // the smaller coordinate is thresholded away entirely
                p = ax >= ay ? Vec2{std::copysign(1.0, z.x), 0.0}
                             : Vec2{0.0, std::copysign(1.0, z.y)};
            } else {
                p = {std::copysign(ax - th, z.x), std::copysign(ay - th, z.y)};
            }
            return pull_inside(m, cell, p);
        }
    }
    return z;
}

double project_polar_axis(const MetricIntegrand& m, int cell, double s) {
    double bound = m.kind == AnisotropyKind::weighted ? weight_at(m, cell) : 1.0;
    return std::clamp(s, -bound, bound);
}

IntegrandCheck check_integrand(const MetricIntegrand& m, int samples, uint64_t seed) {
    IntegrandCheck r;
    std::mt19937_64 rng(seed);
    int ncells = m.kind == AnisotropyKind::weighted ? static_cast<int>(m.weight.size()) : 1;
    if (m.kind == AnisotropyKind::weighted && !m.weight.v.empty())
        r.min_weight = *std::min_element(m.weight.v.begin(), m.weight.v.end());
    for (int k = 0; k < samples; ++k) {
        int cell = ncells > 1 ? static_cast<int>(rng() % ncells) : 0;
        Vec2 xi{4 * rand01(rng) - 2, 4 * rand01(rng) - 2};
        Vec2 eta{4 * rand01(rng) - 2, 4 * rand01(rng) - 2};
        Vec2 xs{4 * rand01(rng) - 2, 4 * rand01(rng) - 2};
        double t = 2 * rand01(rng);
        double pxi = eval_phi(m, cell, xi);
        r.worst_homogeneity = std::max(
            r.worst_homogeneity, std::abs(eval_phi(m, cell, {t * xi.x, t * xi.y}) - t * pxi));
        double nx = len2(xi.x, xi.y);
        r.worst_lower = std::max(r.worst_lower, m.lambda * nx - pxi);
        r.worst_upper = std::max(r.worst_upper, pxi - m.Lambda * nx);
        Vec2 mid = 0.5 * (xi + eta);
        r.worst_convexity = std::max(
            r.worst_convexity,
            eval_phi(m, cell, mid) - 0.5 * (pxi + eval_phi(m, cell, eta)));
        r.worst_duality =
            std::max(r.worst_duality, dot(xi, xs) - eval_polar(m, cell, xs) * pxi);
    }
    r.worst_lower = std::max(r.worst_lower, 0.0);
    r.worst_upper = std::max(r.worst_upper, 0.0);
    r.worst_convexity = std::max(r.worst_convexity, 0.0);
    r.worst_duality = std::max(r.worst_duality, 0.0);
    r.ok = r.min_weight > 0 && r.worst_homogeneity <= 1e-9 && r.worst_lower <= 1e-9 &&
           r.worst_upper <= 1e-9 && r.worst_convexity <= 1e-9 && r.worst_duality <= 1e-9;
    return r;
}

}  // namespace lgp
