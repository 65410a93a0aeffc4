#pragma once

#include <vector>

#include "toric/linalg.hpp"
#include "toric/polygon.hpp"

namespace toric {

// Local model at a polygon vertex: the unimodular change of lattice basis that
// sends the two edges leaving the vertex to the coordinate axes.
struct VertexChart {
    Vec2i vertex;
    Mat2i L;                       // exponent map: nu' = L (nu - vertex)
    Mat2i L_inv;                   // columns are the primitive edge directions
    std::vector<Vec2i> exponents;  // transformed lattice points, in CoefficientSet order
};

using Atlas = std::vector<VertexChart>;

Atlas build_atlas(const Polygon& poly);

// Fiber coordinates transform by the inverse transpose of the exponent map.
Vec2 chart_coords(const VertexChart& chart, Vec2 t_original);
Vec2 original_coords(const VertexChart& chart, Vec2 t_chart);

// Chart whose coordinates of t are most negative (ties go to the lowest
// index).  Fails with NoCoveringChart if every chart leaves a positive
// component, which cannot happen for a valid polygon.
size_t select_chart(const Atlas& atlas, Vec2 t_original);

}  // namespace toric
