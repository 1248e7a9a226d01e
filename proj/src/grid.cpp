#include "lgp/grid.hpp"

#include <cmath>

namespace lgp {

Raster rasterize(const std::function<bool(Vec2)>& inside,
                 const std::function<bool(Vec2)>& gamma,
                 const std::function<double(Vec2)>& f,
                 const BBox& bbox,
                 int n) {
    if (n < 1) throw Error(Errc::config, "grid resolution must be at least 1");
    double w = bbox.x1 - bbox.x0;
    double hgt = bbox.y1 - bbox.y0;
    if (!(w > 0) || !(hgt > 0)) throw Error(Errc::config, "bbox must have positive extent");

    double h = w / n;
    int cols = n;
    int rows = static_cast<int>(std::ceil(hgt / h - 1e-9));

    Raster r;
    DomainGrid& g = r.grid;
    g.h = h;
    g.nx = cols + 2;
    g.ny = rows + 2;
    g.origin = {bbox.x0 - h, bbox.y0 - h};
    g.inside.assign(static_cast<size_t>(g.nx) * g.ny, 0);
    for (int j = 1; j <= rows; ++j)
        for (int i = 1; i <= cols; ++i)
            if (inside(g.center(i, j))) {
                g.inside[static_cast<size_t>(g.idx(i, j))] = 1;
                ++g.inside_count;
            }

    auto add_face = [&](int i, int j, int gi, int gj, FaceDir dir, Vec2 normal) {
        BoundaryFace fc;
        fc.cell = g.idx(i, j);
        fc.ghost = g.idx(gi, gj);
        fc.dir = dir;
        fc.normal = normal;
        Vec2 c = g.center(i, j);
        fc.center = {c.x + 0.5 * h * normal.x, c.y + 0.5 * h * normal.y};
        fc.length = h;
        fc.kind = gamma(fc.center) ? FaceKind::gamma : FaceKind::neumann;
        if (fc.kind == FaceKind::gamma) fc.f_value = f(fc.center);
        r.faces.push_back(fc);
    };

    for (int j = 1; j <= rows; ++j)
        for (int i = 1; i <= cols; ++i) {
            if (!g.is_inside(i, j)) continue;
            if (!g.is_inside(i - 1, j)) add_face(i, j, i - 1, j, FaceDir::xm, {-1, 0});
            if (!g.is_inside(i + 1, j)) add_face(i, j, i + 1, j, FaceDir::xp, {1, 0});
            if (!g.is_inside(i, j - 1)) add_face(i, j, i, j - 1, FaceDir::ym, {0, -1});
            if (!g.is_inside(i, j + 1)) add_face(i, j, i, j + 1, FaceDir::yp, {0, 1});
        }
    return r;
}

}  // namespace lgp
