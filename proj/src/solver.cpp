#include "lgp/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace lgp {

namespace {

// Objective checks are scheduled: every iteration would double the cost of
// the loop, so the gap is measured at iteration 1, every check_every
// iterations, at trace points, and at the final iteration.
constexpr int kCheckEvery = 10;

}  // namespace

SolveReport solve(const MetricIntegrand& m, const DomainGrid& grid,
                  const std::vector<BoundaryFace>& faces, const SolveConfig& cfg) {
    if (cfg.max_iters < 0) throw Error(Errc::config, "max_iters must be nonnegative");
    if (cfg.gap_tol < 0) throw Error(Errc::config, "gap_tol must be nonnegative");
    if (cfg.log_every < 1) throw Error(Errc::config, "log_every must be positive");

    double L = op_norm_bound(grid);
    double tau = cfg.tau > 0 ? cfg.tau : 1.0 / L;
    double sigma = cfg.sigma > 0 ? cfg.sigma : 1.0 / L;
    if (tau * sigma * L * L > 1.0 + 1e-12)
        throw Error(Errc::config, "tau * sigma exceeds the step stability bound 1/L^2");

    Stencil st(grid, faces);
    size_t ncells = static_cast<size_t>(grid.nx) * grid.ny;
    double h2 = grid.h * grid.h;

    // Datum range. Clamping any candidate into [fmin, fmax] never increases a
    // gradient slot, so some minimizer lives in that box and the dual value
    // corrected by the worst box member is a true lower bound even while the
    // iterate's divergence has not vanished yet.
    double fmin = 0, fmax = 0;
    bool have_datum = false;
    for (const auto& fc : faces) {
        if (fc.kind != FaceKind::gamma) continue;
        if (!have_datum) { fmin = fmax = fc.f_value; have_datum = true; }
        fmin = std::min(fmin, fc.f_value);
        fmax = std::max(fmax, fc.f_value);
    }

    SolveReport rep;
    if (cfg.u0) {
        if (cfg.u0->nx != grid.nx || cfg.u0->ny != grid.ny)
            throw Error(Errc::config, "warm start dimensions do not match the grid");
        rep.u = *cfg.u0;
    } else {
        rep.u = ScalarField(grid.nx, grid.ny, 0.0);
    }
    rep.z = VectorField(grid.nx, grid.ny, 0.0);
    ScalarField ubar = rep.u;

    // The dual trace keeps the best lower bound seen so far; every certified
    // value stays valid, so the maximum is still a valid bound.
    double best_dual = -std::numeric_limits<double>::infinity();

    auto measure = [&](int iter, const ScalarField& d) {
        rep.primal = primal_objective(m, st, rep.u, true);
        double corr = 0;
        for (int c : st.inside_cells) {
            double dc = d.v[static_cast<size_t>(c)];
            corr += (dc >= 0 ? fmax : fmin) * dc;
        }
        double bound = dual_objective(st, rep.z) - h2 * corr;
        if (!std::isfinite(rep.primal) || !std::isfinite(bound))
            throw Error(Errc::numerical,
                        "objective became non-finite at iteration " + std::to_string(iter));
        best_dual = std::max(best_dual, bound);
        rep.dual = best_dual;
        rep.gap = rep.primal - rep.dual;
        rep.rel_gap = rep.gap / std::max(1.0, std::abs(rep.primal));
        return TraceEntry{iter, rep.primal, rep.dual, rep.gap};
    };

    {
        ScalarField d0 = div_adjoint(st, rep.z);
        rep.trace.push_back(measure(0, d0));
    }

    for (int k = 1; k <= cfg.max_iters; ++k) {
        // dual ascent with projection onto the polar unit ball, slot group
        // by slot group
        GradField g = grad(st, ubar, true);
        for (size_t p = 0; p < ncells; ++p) {
            bool lx = st.live_x[p] != Stencil::dead;
            bool ly = st.live_y[p] != Stencil::dead;
            if (!lx && !ly) continue;
            int c = static_cast<int>(p);
            if (grid.is_inside(c)) {
                double zx = rep.z.x[p] + sigma * g.x[p];
                double zy = rep.z.y[p] + sigma * g.y[p];
                if (lx && ly) {
                    Vec2 w = project_polar_ball(m, c, {zx, zy});
                    rep.z.x[p] = w.x;
                    rep.z.y[p] = w.y;
                } else if (lx) {
                    rep.z.x[p] = project_polar_axis(m, c, zx);
                } else {
                    rep.z.y[p] = project_polar_axis(m, c, zy);
                }
            } else {
                // ghost-anchored boundary slots project against the bound of
                // the adjacent inside cell
                if (lx)
                    rep.z.x[p] = project_polar_axis(m, c + 1,
                                                    rep.z.x[p] + sigma * g.x[p]);
                if (ly)
                    rep.z.y[p] = project_polar_axis(m, c + grid.nx,
                                                    rep.z.y[p] + sigma * g.y[p]);
            }
        }

        // primal descent and extrapolation
        ScalarField d = div_adjoint(st, rep.z);
        for (int c : st.inside_cells) {
            size_t p = static_cast<size_t>(c);
            double unew = rep.u.v[p] + tau * d.v[p];
            ubar.v[p] = unew + cfg.theta * (unew - rep.u.v[p]);
            rep.u.v[p] = unew;
        }

        rep.iters_used = k;
        bool log_point = k % cfg.log_every == 0;
        bool check_point = k == 1 || k % kCheckEvery == 0 || log_point || k == cfg.max_iters;
        if (!check_point) continue;

        TraceEntry e = measure(k, d);
        bool conv = rep.rel_gap <= cfg.gap_tol;
        if (log_point || conv || k == cfg.max_iters) rep.trace.push_back(e);
        if (conv) {
            rep.converged = true;
            break;
        }
    }
    return rep;
}

}  // namespace lgp
