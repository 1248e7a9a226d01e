// Built-in problem instances: domain, Dirichlet part, datum, and (when known)
// closed-form minimizers, a certifying dual field, and the objective value.
#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lgp/anisotropy.hpp"
#include "lgp/core.hpp"
#include "lgp/fields.hpp"
#include "lgp/grid.hpp"

namespace lgp {

struct Scenario {
    std::string name;
    std::string description;
    std::function<bool(Vec2)> inside;
    std::function<bool(Vec2)> gamma;   // evaluated at boundary face centers
    std::function<double(Vec2)> f;
    AnisotropyKind kind = AnisotropyKind::euclidean;
    BBox bbox;

    bool has_analytic = false;  // closed-form u and z available
    bool has_family = false;    // analytic_u is a one-parameter family
    double optimum = 0.0;
    bool has_optimum = false;

    // Known discontinuity / trace-defect locations (fan centers, ends of the
    // Dirichlet part); continuity checks exclude neighborhoods of these.
    std::vector<Vec2> exclusion_points;
    std::string notes;

    // Closed forms; only valid when has_analytic. The family parameter is
    // ignored by scenarios with a unique minimizer.
    std::function<double(double, Vec2)> analytic_u;
    std::function<Vec2(Vec2)> analytic_z;
    // Globally continuous stream function of analytic_z (z = (-psi_y, psi_x)).
    std::function<double(Vec2)> stream_psi;
    // Optional lattice-aware override used for slot construction: kink lines
    // of the stream that run between cell boundaries must be moved outward to
    // the nearest cell boundary, else slots at jump faces cannot saturate.
    std::function<double(const DomainGrid&, Vec2)> stream_psi_h;
};

const Scenario& get_scenario(const std::string& name);  // Errc::lookup on miss
std::vector<std::string> scenario_names();

Raster rasterize_scenario(const Scenario& s, int n);

// Metric integrand matching the scenario's anisotropy kind.
MetricIntegrand scenario_metric(const Scenario& s, const DomainGrid& grid);

// Pointwise closed forms with argument validation (family parameter must lie
// in [0,1]; scenarios without closed forms throw Errc::unsupported).
double eval_analytic_u(const Scenario& s, double lambda, Vec2 p);
Vec2 eval_analytic_z(const Scenario& s, Vec2 p);

// Cell-center samples of a family member.
ScalarField make_analytic_u(const Scenario& s, const DomainGrid& grid, double lambda);

// Slotwise dual field from corner differences of the stream function, so the
// discrete divergence telescopes to zero; each slot group is then projected
// onto the polar ball as a safety clamp.
VectorField make_analytic_z(const Scenario& s, const MetricIntegrand& m, const DomainGrid& grid,
                            const std::vector<BoundaryFace>& faces);

// Chord test along the Dirichlet part: for each sample, the midpoint of the
// chord between the boundary points at arc distance +/-step must lie strictly
// inside the domain. Sufficient condition only; a fail flag is not a
// disproof. Samples whose chord partners are further than 4*step apart
// (seams between Dirichlet components) are reported as skipped.
struct BarrierSample {
    Vec2 pos;
    enum { pass, fail, skipped } status = pass;
};
std::vector<BarrierSample> barrier_diagnostic_2d(const Scenario& s, double step, int n = 128);

}  // namespace lgp
