#include "lgp/certify.hpp"

#include <algorithm>
#include <cmath>

namespace lgp {

Tolerances Tolerances::grid_default(double h) {
    Tolerances t;
    t.feas = 1e-12;
    t.div = 5.0 * h;
    // capped so a zero dual field (pairing residual 1) never passes on coarse grids
    t.pair = std::min(0.9, 5.0 * std::sqrt(h));
    t.sign = 0.1;
    t.jump_fraction = 0.05;
    return t;
}

Tolerances Tolerances::solver_default(double gap_tol, double h) {
    Tolerances t;
    t.feas = 0.0;
    t.div = 10.0 * gap_tol / h;
    t.pair = 10.0 * gap_tol;
    t.sign = 0.1;
    t.jump_fraction = 0.05;
    return t;
}

namespace {

// Outward normal component of z at a boundary face; west/south faces read the
// ghost-anchored slot with reversed orientation.
double face_normal_component(const VectorField& z, const BoundaryFace& fc) {
    switch (fc.dir) {
        case FaceDir::xp: return z.x[static_cast<size_t>(fc.cell)];
        case FaceDir::xm: return -z.x[static_cast<size_t>(fc.ghost)];
        case FaceDir::yp: return z.y[static_cast<size_t>(fc.cell)];
        case FaceDir::ym: return -z.y[static_cast<size_t>(fc.ghost)];
    }
    return 0.0;
}

}  // namespace

CalibrationReport verify_calibration(const MetricIntegrand& m, const DomainGrid& grid,
                                     const std::vector<BoundaryFace>& faces,
                                     const ScalarField& u, const VectorField& z,
                                     const Tolerances& tols) {
    CalibrationReport rep;
    rep.tols = tols;
    Stencil st(grid, faces);

    rep.primal = primal_objective(m, st, u, true);
    rep.dual = dual_objective(st, z);
    rep.gap = rep.primal - rep.dual;

    GradField g = grad(st, u, true);
    double h2 = grid.h * grid.h;
    double pair_sum = 0;
    for (size_t p = 0; p < g.size(); ++p)
        pair_sum += h2 * (g.x[p] * z.x[p] + g.y[p] * z.y[p]);
    rep.r_pair = std::abs(pair_sum - rep.primal) / std::max(1.0, rep.primal);

    ScalarField dv = div_adjoint(st, z);
    for (int c : st.interior_cells)
        rep.r_div = std::max(rep.r_div, std::abs(dv.at(c)));

    // feasibility over every live slot group; dead slots carry no dual mass
    double worst_polar = 0;
    for (int j = 0; j < grid.ny; ++j)
        for (int i = 0; i < grid.nx; ++i) {
            int c = grid.idx(i, j);
            size_t p = static_cast<size_t>(c);
            bool lx = st.live_x[p] != Stencil::dead;
            bool ly = st.live_y[p] != Stencil::dead;
            if (!lx && !ly) continue;
            if (grid.is_inside(c)) {
                Vec2 w{lx ? z.x[p] : 0.0, ly ? z.y[p] : 0.0};
                worst_polar = std::max(worst_polar, eval_polar(m, c, w));
            } else {
                if (lx)
                    worst_polar =
                        std::max(worst_polar, eval_polar(m, c + 1, {z.x[p], 0.0}));
                if (ly)
                    worst_polar =
                        std::max(worst_polar, eval_polar(m, c + grid.nx, {0.0, z.y[p]}));
            }
        }
    rep.r_feas = std::max(0.0, worst_polar - 1.0);

    double fmin = 0, fmax = 0;
    bool any_gamma = false;
    for (const auto& fc : faces) {
        if (fc.kind != FaceKind::gamma) continue;
        if (!any_gamma) {
            fmin = fmax = fc.f_value;
            any_gamma = true;
        } else {
            fmin = std::min(fmin, fc.f_value);
            fmax = std::max(fmax, fc.f_value);
        }
    }
    double thresh = tols.jump_fraction * (fmax - fmin);
    for (const auto& fc : faces) {
        if (fc.kind != FaceKind::gamma) continue;
        double d = fc.f_value - u.at(fc.cell);
        if (std::abs(d) <= thresh) continue;
        ++rep.jumped_faces;
        double zn = face_normal_component(z, fc);
        double phin = eval_phi(m, fc.cell, fc.normal);
        double sgn = d > 0 ? 1.0 : -1.0;
        rep.r_sign = std::max(rep.r_sign, std::abs(zn * sgn - phin));
    }

    rep.r_neumann = 0.0;
    rep.pass = rep.r_feas <= tols.feas && rep.r_div <= tols.div && rep.r_pair <= tols.pair &&
               rep.r_sign <= tols.sign;
    return rep;
}

std::vector<CalibrationReport> cross_certify(const MetricIntegrand& m, const DomainGrid& grid,
                                             const std::vector<BoundaryFace>& faces,
                                             const VectorField& z,
                                             const std::vector<const ScalarField*>& us,
                                             const Tolerances& tols) {
    std::vector<CalibrationReport> reps;
    reps.reserve(us.size());
    for (const ScalarField* u : us)
        reps.push_back(verify_calibration(m, grid, faces, *u, z, tols));
    return reps;
}

ExtendReport extend_gamma_check(const MetricIntegrand& m, const DomainGrid& grid,
                                const std::vector<BoundaryFace>& faces, const ScalarField& u,
                                const VectorField& z,
                                const std::function<bool(Vec2)>& gamma_prime,
                                const Tolerances& tols) {
    for (const auto& fc : faces)
        if (fc.kind == FaceKind::gamma && !gamma_prime(fc.center))
            throw Error(Errc::precondition,
                        "the enlarged Dirichlet part must contain every original face");

    std::vector<BoundaryFace> extended = faces;
    for (auto& fc : extended) {
        if (fc.kind == FaceKind::gamma || !gamma_prime(fc.center)) continue;
        fc.kind = FaceKind::gamma;
        fc.f_value = u.at(fc.cell);  // the candidate's own trace
    }

    ExtendReport rep;
    rep.base = verify_calibration(m, grid, faces, u, z, tols);
    rep.extended = verify_calibration(m, grid, extended, u, z, tols);
    rep.drift = std::max({std::abs(rep.extended.r_div - rep.base.r_div),
                          std::abs(rep.extended.r_feas - rep.base.r_feas),
                          std::abs(rep.extended.r_pair - rep.base.r_pair),
                          std::abs(rep.extended.r_sign - rep.base.r_sign),
                          std::abs(rep.extended.r_neumann - rep.base.r_neumann)});
    return rep;
}

}  // namespace lgp
