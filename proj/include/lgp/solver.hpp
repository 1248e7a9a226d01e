// Primal-dual (Chambolle-Pock) solver for the relaxed least gradient
// functional: minimize over u the total phi-variation plus the boundary
// penalty integral of phi(x, nu) * |u - f| over the Dirichlet part.
#pragma once

#include <cstdint>
#include <vector>

#include "lgp/anisotropy.hpp"
#include "lgp/fields.hpp"
#include "lgp/grid.hpp"
#include "lgp/operators.hpp"

namespace lgp {

struct SolveConfig {
    int max_iters = 20000;
    double gap_tol = 1e-5;      // stop when (primal - dual)/max(1, |primal|) <= gap_tol
    double theta = 1.0;         // extrapolation weight
    double tau = 0.0;           // primal step; 0 selects h/sqrt(8)
    double sigma = 0.0;         // dual step; 0 selects h/sqrt(8)
    int log_every = 100;        // trace cadence in iterations
    std::uint64_t seed = 0;     // reserved for randomized warm starts; runs stay deterministic
    const ScalarField* u0 = nullptr;  // optional warm start, defaults to 0
};

struct TraceEntry {
    int iter = 0;
    double primal = 0;
    double dual = 0;
    double gap = 0;
};

struct SolveReport {
    ScalarField u;
    VectorField z;
    std::vector<TraceEntry> trace;
    bool converged = false;
    int iters_used = 0;
    double primal = 0;
    double dual = 0;
    double gap = 0;
    double rel_gap = 0;
};

// Runs the iteration from u = u0 (or 0), z = 0. Throws Errc::config when
// tau * sigma exceeds 1 / op_norm_bound^2 and Errc::numerical (with the
// iteration index in the message) if an iterate stops being finite.
SolveReport solve(const MetricIntegrand& m, const DomainGrid& grid,
                  const std::vector<BoundaryFace>& faces, const SolveConfig& cfg);

}  // namespace lgp
