// Dense per-cell storage over the padded grid rectangle.
#pragma once

#include <vector>

#include "lgp/core.hpp"

namespace lgp {

// One value per cell of the padded rectangle, row-major (index = i + nx*j).
struct ScalarField {
    int nx = 0;
    int ny = 0;
    std::vector<double> v;

    ScalarField() = default;
    ScalarField(int nx_, int ny_, double fill = 0.0)
        : nx(nx_), ny(ny_), v(static_cast<size_t>(nx_) * ny_, fill) {}

    double& at(int p) { return v[static_cast<size_t>(p)]; }
    double at(int p) const { return v[static_cast<size_t>(p)]; }
    size_t size() const { return v.size(); }
};

// Staggered edge values. x[p] sits on the edge between cell p and its east
// neighbor, y[p] on the edge between p and its north neighbor. Entries exist
// for every cell of the padded rectangle so boundary edges anchored at ghost
// cells (west/south Dirichlet faces) have a slot.
struct VectorField {
    int nx = 0;
    int ny = 0;
    std::vector<double> x;
    std::vector<double> y;

    VectorField() = default;
    VectorField(int nx_, int ny_, double fill = 0.0)
        : nx(nx_),
          ny(ny_),
          x(static_cast<size_t>(nx_) * ny_, fill),
          y(static_cast<size_t>(nx_) * ny_, fill) {}

    size_t size() const { return x.size(); }
};

// Forward-difference gradient slots; same staggered layout as VectorField.
using GradField = VectorField;

}  // namespace lgp
