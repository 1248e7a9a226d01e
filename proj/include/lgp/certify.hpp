// Certificate checks: given a candidate minimizer u and a dual field z,
// measure how far (u, z) is from satisfying the optimality system
//   div z = 0,  z . grad(u) = phi(grad u),  polar(z) <= 1,
//   z_nu in sign(f - u) * phi(nu) on the Dirichlet part,  z_nu = 0 elsewhere.
#pragma once

#include <functional>
#include <vector>

#include "lgp/anisotropy.hpp"
#include "lgp/fields.hpp"
#include "lgp/grid.hpp"
#include "lgp/operators.hpp"

namespace lgp {

struct Tolerances {
    double feas = 1e-12;
    double div = 0.05;
    double pair = 0.05;
    double sign = 0.1;
    // Fraction of the Dirichlet datum range below which a boundary mismatch
    // |f - u| is treated as attained rather than jumped.
    double jump_fraction = 0.05;

    // Defaults for analytic certificate fields sampled on a grid of spacing h.
    static Tolerances grid_default(double h);
    // Defaults for solver output that reached the given relative gap.
    static Tolerances solver_default(double gap_tol, double h);
};

struct CalibrationReport {
    double r_div = 0;      // max |div z| over interior cells
    double r_feas = 0;     // max(0, max polar(z) - 1) over all live slot groups
    double r_pair = 0;     // relative aggregate pairing defect
    double r_sign = 0;     // worst boundary sign condition defect on jumped faces
    double r_neumann = 0;  // worst |z_nu| on Neumann faces (0 by construction)
    double primal = 0;
    double dual = 0;
    double gap = 0;
    int jumped_faces = 0;  // gamma faces where |f - u| exceeded the jump threshold
    bool pass = false;
    Tolerances tols;
};

CalibrationReport verify_calibration(const MetricIntegrand& m, const DomainGrid& grid,
                                     const std::vector<BoundaryFace>& faces,
                                     const ScalarField& u, const VectorField& z,
                                     const Tolerances& tols);

// One dual field certifying several candidate minimizers at once.
std::vector<CalibrationReport> cross_certify(const MetricIntegrand& m, const DomainGrid& grid,
                                             const std::vector<BoundaryFace>& faces,
                                             const VectorField& z,
                                             const std::vector<const ScalarField*>& us,
                                             const Tolerances& tols);

// Re-runs verification after enlarging the Dirichlet part: faces whose center
// satisfies gamma_prime keep their datum if already Dirichlet and otherwise
// take the trace of u itself. Every original Dirichlet face must lie in the
// enlarged part (Errc::precondition otherwise). Returns the new report plus
// the largest residual drift against the original report.
struct ExtendReport {
    CalibrationReport base;
    CalibrationReport extended;
    double drift = 0;
};
ExtendReport extend_gamma_check(const MetricIntegrand& m, const DomainGrid& grid,
                                const std::vector<BoundaryFace>& faces, const ScalarField& u,
                                const VectorField& z,
                                const std::function<bool(Vec2)>& gamma_prime,
                                const Tolerances& tols);

}  // namespace lgp
