// Cell-centered rasterization of a 2D domain with tagged boundary faces.
#pragma once

#include <functional>
#include <string>
#include <vector>

#include "lgp/core.hpp"
#include "lgp/fields.hpp"

namespace lgp {

// Outward direction of a boundary face, seen from the inside cell.
enum class FaceDir { xp, xm, yp, ym };

enum class FaceKind { gamma, neumann };

struct BoundaryFace {
    int cell = 0;       // padded-rectangle index of the inside cell
    int ghost = 0;      // index of the outside neighbor across the face
    FaceDir dir = FaceDir::xp;
    Vec2 normal;        // unit outward normal
    Vec2 center;        // midpoint of the face
    double length = 0;  // equals the grid spacing h
    FaceKind kind = FaceKind::neumann;
    double f_value = 0; // Dirichlet datum at the face center (gamma faces)
};

// Padded cell rectangle: the bbox is covered by square cells of size
// h = bbox width / n and surrounded by one ring of outside cells so every
// boundary face has an in-array ghost neighbor.
struct DomainGrid {
    int nx = 0;
    int ny = 0;
    double h = 0.0;
    Vec2 origin;                 // lower-left corner of cell (0, 0)
    std::vector<uint8_t> inside; // 1 for cells whose center satisfies the predicate
    int inside_count = 0;

    int idx(int i, int j) const { return i + nx * j; }
    bool in_rect(int i, int j) const { return i >= 0 && j >= 0 && i < nx && j < ny; }
    bool is_inside(int i, int j) const {
        return in_rect(i, j) && inside[static_cast<size_t>(idx(i, j))] != 0;
    }
    bool is_inside(int p) const { return inside[static_cast<size_t>(p)] != 0; }
    Vec2 center(int i, int j) const {
        return {origin.x + (i + 0.5) * h, origin.y + (j + 0.5) * h};
    }
    Vec2 center(int p) const { return center(p % nx, p / nx); }
};

struct Raster {
    DomainGrid grid;
    std::vector<BoundaryFace> faces;
};

// Builds the grid at n cells across the bbox width and tags each boundary
// face as Dirichlet (gamma predicate true at the face center) or Neumann,
// sampling the datum f at gamma face centers.
Raster rasterize(const std::function<bool(Vec2)>& inside,
                 const std::function<bool(Vec2)>& gamma,
                 const std::function<double(Vec2)>& f,
                 const BBox& bbox,
                 int n);

// CSV layout: one comment header "# nx ny h x0 y0", then ny rows of nx values
// starting at the bottom row (j = 0). Values use enough digits to round-trip
// exactly; cells carrying no value are written as nan.
void save_field(const std::string& path, const DomainGrid& grid, const ScalarField& u,
                bool mask_outside = true);
ScalarField load_field(const std::string& path, const DomainGrid& grid);

// Reads just the header of a field CSV.
struct FieldHeader {
    int nx = 0;
    int ny = 0;
    double h = 0;
    double x0 = 0;
    double y0 = 0;
};
FieldHeader peek_field_header(const std::string& path);

// 8-bit binary PGM with a linear [min, max] -> [0, 255] map over inside
// cells; constant or empty fields map to 0. Rows are written top-down.
void save_pgm(const std::string& path, const DomainGrid& grid, const ScalarField& u);

}  // namespace lgp
