// Metric integrands phi(x, xi): positively 1-homogeneous convex gauges with
// ellipticity bounds lambda*|xi| <= phi(x, xi) <= Lambda*|xi|, their polar
// gauges, and Euclidean projection onto the polar unit ball.
#pragma once

#include <cstdint>
#include <string>

#include "lgp/core.hpp"
#include "lgp/fields.hpp"

namespace lgp {

struct DomainGrid;

enum class AnisotropyKind { euclidean, weighted, p1, p2, pinf };

struct MetricIntegrand {
    AnisotropyKind kind = AnisotropyKind::euclidean;
    ScalarField weight;  // per-cell a(x) > 0, used only by the weighted kind
    double lambda = 1.0;
    double Lambda = 1.0;

    static MetricIntegrand euclidean();
    static MetricIntegrand pnorm(int p);  // p in {1, 2}; p < 0 selects the max norm
    static MetricIntegrand weighted(ScalarField a);
};

// Parses "euclidean", "p1", "p2", "pinf", or "weighted:<csv path>"; the
// weighted field must match the grid dimensions.
MetricIntegrand make_anisotropy(const std::string& spec, const DomainGrid& grid);

double eval_phi(const MetricIntegrand& m, int cell, Vec2 xi);
double eval_polar(const MetricIntegrand& m, int cell, Vec2 xistar);
Vec2 project_polar_ball(const MetricIntegrand& m, int cell, Vec2 z);

// Projection of an axis-aligned singleton slot s*e_axis onto the polar ball;
// the bound depends only on the cell, not the axis, for all supported kinds.
double project_polar_axis(const MetricIntegrand& m, int cell, double s);

struct IntegrandCheck {
    double worst_homogeneity = 0.0;  // |phi(t*xi) - t*phi(xi)|
    double worst_lower = 0.0;        // max(0, lambda*|xi| - phi(xi))
    double worst_upper = 0.0;        // max(0, phi(xi) - Lambda*|xi|)
    double worst_convexity = 0.0;    // midpoint convexity violation
    double worst_duality = 0.0;      // max(0, <xi*,xi> - polar(xi*)*phi(xi))
    double min_weight = 1.0;         // weighted kind only, else 1
    bool ok = false;
};

IntegrandCheck check_integrand(const MetricIntegrand& m, int samples, uint64_t seed = 1234);

}  // namespace lgp
