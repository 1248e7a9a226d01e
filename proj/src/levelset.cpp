#include "lgp/levelset.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>

namespace lgp {

namespace {

// A node is a lattice edge between two adjacent inside cell centers that the
// level crosses. Keys order nodes row-major (j, then i, then axis), which
// fixes the chaining order.
long long node_key(int axis, int i, int j, int nx) {
    return (static_cast<long long>(j) * nx + i) * 2 + axis;
}

struct NodeInfo {
    Vec2 pt;
    int seg[2] = {-1, -1};
    int degree = 0;
};

struct Segment {
    long long a, b;
    bool used = false;
};

// Crossing on the edge from value va at pa to vb at pb; the caller guarantees
// the superlevel states differ, so va != vb.
Vec2 crossing(Vec2 pa, Vec2 pb, double va, double vb, double t) {
    double s = (t - va) / (vb - va);
    return {pa.x + s * (pb.x - pa.x), pa.y + s * (pb.y - pa.y)};
}

LevelCurve extract_one(const DomainGrid& g, const ScalarField& u, double t) {
    LevelCurve curve;
    curve.t = t;

    std::map<long long, NodeInfo> nodes;
    std::vector<Segment> segs;

    auto add_node = [&](int axis, int i, int j) -> long long {
        long long key = node_key(axis, i, j, g.nx);
        auto it = nodes.find(key);
        if (it == nodes.end()) {
            int ca = g.idx(i, j);
            int cb = axis == 0 ? g.idx(i + 1, j) : g.idx(i, j + 1);
            NodeInfo info;
            info.pt = crossing(g.center(ca), g.center(cb), u.v[ca], u.v[cb], t);
            nodes.emplace(key, info);
        }
        return key;
    };
    auto add_seg = [&](long long a, long long b) {
        int id = static_cast<int>(segs.size());
        segs.push_back({a, b, false});
        for (long long k : {a, b}) {
            NodeInfo& info = nodes.at(k);
            info.seg[info.degree++] = id;
        }
    };

    for (int j = 1; j + 2 < g.ny; ++j) {
        for (int i = 1; i + 2 < g.nx; ++i) {
            if (!g.is_inside(i, j) || !g.is_inside(i + 1, j) ||
                !g.is_inside(i, j + 1) || !g.is_inside(i + 1, j + 1))
                continue;
            double va = u.v[g.idx(i, j)], vb = u.v[g.idx(i + 1, j)];
            double vc = u.v[g.idx(i + 1, j + 1)], vd = u.v[g.idx(i, j + 1)];
            int mask = (va >= t) | (vb >= t) << 1 | (vc >= t) << 2 | (vd >= t) << 3;
            if (mask == 0 || mask == 15) continue;

            auto B = [&] { return add_node(0, i, j); };
            auto T = [&] { return add_node(0, i, j + 1); };
            auto L = [&] { return add_node(1, i, j); };
            auto R = [&] { return add_node(1, i + 1, j); };

            switch (mask) {
                case 1: case 14: add_seg(L(), B()); break;
                case 2: case 13: add_seg(B(), R()); break;
                case 3: case 12: add_seg(L(), R()); break;
                case 4: case 11: add_seg(R(), T()); break;
                case 6: case 9:  add_seg(B(), T()); break;
                case 7: case 8:  add_seg(L(), T()); break;
                case 5: case 10: {
                    // saddle: the stencil average decides which diagonal the
                    // superlevel set connects
                    bool center_hi = (va + vb + vc + vd) * 0.25 >= t;
                    bool corners_ac = mask == 5;
                    if (center_hi == corners_ac) {
                        add_seg(B(), R());
                        add_seg(T(), L());
                    } else {
                        add_seg(L(), B());
                        add_seg(R(), T());
                    }
                    break;
                }
                default: break;
            }
        }
    }

    auto walk = [&](long long start, bool closed) {
        Polyline pl;
        pl.closed = closed;
        pl.pts.push_back(nodes.at(start).pt);
        long long cur = start;
        for (;;) {
            NodeInfo& info = nodes.at(cur);
            int next_seg = -1;
            for (int k = 0; k < info.degree; ++k)
                if (!segs[info.seg[k]].used) { next_seg = info.seg[k]; break; }
            if (next_seg < 0) break;
            segs[next_seg].used = true;
            long long nxt = segs[next_seg].a == cur ? segs[next_seg].b : segs[next_seg].a;
            if (closed && nxt == start) break;
            pl.pts.push_back(nodes.at(nxt).pt);
            cur = nxt;
        }
        curve.polylines.push_back(std::move(pl));
    };

    // open chains start at degree-one nodes, then the remaining segments are
    // loops; std::map iteration makes both scans row-major
    for (const auto& [key, info] : nodes)
        if (info.degree == 1 && !segs[info.seg[0]].used) walk(key, false);
    for (const auto& [key, info] : nodes) {
        bool pending = false;
        for (int k = 0; k < info.degree; ++k) pending |= !segs[info.seg[k]].used;
        if (pending) walk(key, true);
    }
    return curve;
}

double point_chord_distance(Vec2 p, Vec2 a, Vec2 b) {
    Vec2 ab = b - a;
    double l2 = ab.norm2();
    Vec2 d = p - a;
    if (l2 > 0) {
        double s = std::clamp(dot(d, ab) / l2, 0.0, 1.0);
        d = p - Vec2{a.x + s * ab.x, a.y + s * ab.y};
    }
    return norm2(d);
}

}  // namespace

std::vector<LevelCurve> extract_levelsets(const DomainGrid& grid, const ScalarField& u,
                                          const std::vector<double>& levels) {
    std::vector<LevelCurve> out;
    out.reserve(levels.size());
    for (double t : levels) out.push_back(extract_one(grid, u, t));
    return out;
}

std::vector<double> segment_check(const MetricIntegrand& m, LevelCurve& curve) {
    if (m.kind != AnisotropyKind::euclidean && m.kind != AnisotropyKind::p2)
        throw Error(Errc::unsupported,
                    "chord deviation is meaningful only for the isotropic metric");
    curve.deviations.clear();
    curve.deviations.reserve(curve.polylines.size());
    for (const auto& pl : curve.polylines) {
        double dev = 0;
        if (pl.pts.size() >= 2) {
            Vec2 a = pl.pts.front(), b = pl.pts.back();
            for (const auto& p : pl.pts) dev = std::max(dev, point_chord_distance(p, a, b));
        }
        curve.deviations.push_back(dev);
    }
    curve.deviation = 0;
    for (double d : curve.deviations) curve.deviation = std::max(curve.deviation, d);
    return curve.deviations;
}

ContinuityReport continuity_scan(const DomainGrid& grid, const std::vector<BoundaryFace>& faces,
                                 const ScalarField& u, const ScanConfig& cfg) {
    ContinuityReport rep;
    rep.osc = ScalarField(grid.nx, grid.ny, 0.0);

    for (int j = 1; j + 1 < grid.ny; ++j) {
        for (int i = 1; i + 1 < grid.nx; ++i) {
            if (!grid.is_inside(i, j)) continue;
            double lo = u.v[grid.idx(i, j)], hi = lo;
            for (int dj = -1; dj <= 1; ++dj)
                for (int di = -1; di <= 1; ++di) {
                    if (!grid.is_inside(i + di, j + dj)) continue;
                    double v = u.v[grid.idx(i + di, j + dj)];
                    lo = std::min(lo, v);
                    hi = std::max(hi, v);
                }
            rep.osc.v[grid.idx(i, j)] = hi - lo;
        }
    }

    double radius = cfg.exclusion_radius > 0 ? cfg.exclusion_radius : 4.0 * grid.h;
    double fmin = 0, fmax = 0;
    bool have_datum = false;
    // length-weighted mean of |u - f| over the non-excluded datum faces; a
    // max would never decay under refinement because the mismatch just
    // outside an O(h) exclusion disk is O(1) at every resolution
    double werr = 0, wlen = 0;
    for (const auto& fc : faces) {
        if (fc.kind != FaceKind::gamma) continue;
        if (!have_datum) { fmin = fmax = fc.f_value; have_datum = true; }
        fmin = std::min(fmin, fc.f_value);
        fmax = std::max(fmax, fc.f_value);

        bool excluded = false;
        for (const auto& q : cfg.exclusion_points) {
            Vec2 d = fc.center - q;
            if (norm2(d) < radius) { excluded = true; break; }
        }
        if (excluded) continue;
        werr += fc.length * std::abs(u.v[fc.cell] - fc.f_value);
        wlen += fc.length;
    }
    rep.trace_err = wlen > 0 ? werr / wlen : 0.0;

    rep.hotspot_thresh = cfg.hotspot_fraction * (fmax - fmin);
    for (int j = 1; j + 1 < grid.ny; ++j)
        for (int i = 1; i + 1 < grid.nx; ++i) {
            int c = grid.idx(i, j);
            if (grid.is_inside(i, j) && rep.osc.v[c] > rep.hotspot_thresh)
                rep.hotspots.push_back(c);
        }
    return rep;
}

}  // namespace lgp
