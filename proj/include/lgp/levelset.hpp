// Superlevel-set boundary extraction (marching squares over cell centers),
// straightness measurement of level curves, and a jump-continuity scan of
// the boundary trace.
#pragma once

#include <vector>

#include "lgp/anisotropy.hpp"
#include "lgp/fields.hpp"
#include "lgp/grid.hpp"

namespace lgp {

struct Polyline {
    std::vector<Vec2> pts;
    bool closed = false;
};

struct LevelCurve {
    double t = 0;
    std::vector<Polyline> polylines;
    std::vector<double> deviations;  // filled by segment_check, per polyline
    double deviation = 0;            // max of deviations, 0 when there are none
};

// Marching squares on {u >= t} over 2x2 stencils of inside cell centers
// (stencils touching outside cells are skipped). Crossings are linearly
// interpolated; ambiguous saddles are split by the stencil average.
// Polylines are chained deterministically: open chains first, then loops,
// both in row-major order of their starting edge.
std::vector<LevelCurve> extract_levelsets(const DomainGrid& grid, const ScalarField& u,
                                          const std::vector<double>& levels);

// Maximum distance from each polyline's vertices to the chord joining its
// endpoints. Meaningful when level sets of minimizers are straight segments,
// which holds for the euclidean metric; other kinds throw Errc::unsupported.
std::vector<double> segment_check(const MetricIntegrand& m, LevelCurve& curve);

struct ScanConfig {
    std::vector<Vec2> exclusion_points;  // known discontinuity locations
    double exclusion_radius = 0.0;       // 0 selects 4h
    double hotspot_fraction = 0.25;      // of the inside range of u
};

struct ContinuityReport {
    ScalarField osc;            // 3x3 neighborhood oscillation, inside cells
    double trace_err = 0;       // max |u - f| over gamma faces outside exclusions
    double hotspot_thresh = 0;  // absolute oscillation threshold used
    std::vector<int> hotspots;  // inside cells with osc above the threshold
};

ContinuityReport continuity_scan(const DomainGrid& grid, const std::vector<BoundaryFace>& faces,
                                 const ScalarField& u, const ScanConfig& cfg);

}  // namespace lgp
