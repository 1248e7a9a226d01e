// Forward-difference gradient with Dirichlet ghost values, its exact negative
// adjoint divergence, and the primal/dual objective values built from them.
#pragma once

#include <utility>
#include <vector>

#include "lgp/anisotropy.hpp"
#include "lgp/fields.hpp"
#include "lgp/grid.hpp"

namespace lgp {

// Edge liveness, precomputed once per (grid, faces) pair. The x-slot of cell
// p covers the edge between p and p + e_x; the y-slot the edge to p + e_y.
// An edge is interior when both cells are inside, gamma when it carries a
// Dirichlet face, and dead otherwise (Neumann faces and far-outside edges).
struct Stencil {
    enum : uint8_t { dead = 0, interior = 1, gamma = 2 };

    const DomainGrid* grid = nullptr;
    std::vector<uint8_t> live_x, live_y; // per-cell tag for the anchored edge
    std::vector<double> fx, fy;          // Dirichlet datum per gamma edge
    std::vector<int> inside_cells;       // row-major list of inside cells
    std::vector<int> interior_cells;     // inside cells with all 4 neighbors inside

    Stencil() = default;
    Stencil(const DomainGrid& g, const std::vector<BoundaryFace>& faces);
};

// Gradient slots of u. Interior edge: forward difference. Gamma edge anchored
// at an inside cell (east/north face): (f - u)/h, or with f_on = false the
// edge is treated as Neumann (slot 0). Gamma edge anchored at a ghost cell
// (west/south face of inside cell c): (u_c - f)/h. Dead slots are 0.
GradField grad(const Stencil& st, const ScalarField& u, bool f_on = true);

// Linear part of grad (datum f frozen to 0, gamma edges stay live).
GradField grad_linear(const Stencil& st, const ScalarField& u);

// Divergence adjoint to grad_linear: <grad_linear(u), z> = -<u, div_adjoint(z)>
// exactly, both sums over all slots / inside cells without the h^2 weight.
ScalarField div_adjoint(const Stencil& st, const VectorField& z);

// Integral of phi over the gradient slots: sum over inside cells of
// h^2 * phi(x_c, (gx, gy)) plus, for each ghost-anchored gamma slot s,
// h^2 * phi(x_c, s * e_axis) with c the adjacent inside cell.
double primal_objective(const MetricIntegrand& m, const Stencil& st, const ScalarField& u,
                        bool f_on = true);

// Boundary revenue sum over gamma faces of h * f * z_nu, where z_nu is the
// outward normal component of z read from the face's slot.
double dual_objective(const Stencil& st, const VectorField& z);

// Per-inside-cell densities of the pairing z . grad(u) and of phi(grad(u)),
// over the per-cell slot group only (ghost-anchored slots are boundary terms
// and enter the aggregates, not the cellwise densities).
std::pair<ScalarField, ScalarField> pairing_density(const MetricIntegrand& m, const Stencil& st,
                                                    const ScalarField& u, const VectorField& z);

// Upper bound sqrt(8)/h on the operator norm of grad_linear.
double op_norm_bound(const DomainGrid& grid);

}  // namespace lgp
