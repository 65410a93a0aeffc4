#pragma once

#include <cstdint>
#include <vector>

#include "toric/charts.hpp"
#include "toric/coefficients.hpp"
#include "toric/curvature.hpp"
#include "toric/polygon.hpp"

namespace toric {

enum class Exec { serial, parallel };

// One integration node: a moment-plane cell center pushed to fiber
// coordinates through the gradient of the boundary potential.
struct QuadratureNode {
    Vec2 x;
    Vec2 t;              // original fiber coordinates
    std::uint32_t chart = 0;
    Vec2 t_chart;
    double static_weight = 0;  // h^2 det D^2 U0(x); metric factor applied per call
};

struct QuadratureScheme {
    Polygon poly;
    double h = 0;
    double b = 2;
    Atlas atlas;
    std::vector<QuadratureNode> nodes;
};

// Cell-centered grid (h Z + h/2)^2 clipped to the interior (margin 1e-9 from
// every edge, where the pushforward would blow up).  The coefficient argument
// is accepted for interface stability; node layout and chart assignment
// depend only on the polygon, h, and b.
QuadratureScheme build_scheme(const Polygon& poly, const CoefficientSet& coeffs, double h,
                              double b);

// k/60, capped so the node count stays near or below 2e5.
double default_spacing(const Polygon& poly);

// Sum of static_weight * det(metric) * f over nodes: the plane integral of
// f against the metric volume.  Chunked ordered reduction; bit-identical
// results for any thread count and for both execution modes.
double integrate(const QuadratureScheme& scheme, const CoefficientSet& coeffs,
                 const std::vector<double>& f, Exec exec = Exec::parallel,
                 double truncation = 1e-15);

// Metric-weighted mean of the scalar curvature.  Coefficients are normalized
// internally so the result is exactly invariant under affine twists.
double average_scalar(const QuadratureScheme& scheme, const CoefficientSet& coeffs,
                      Exec exec = Exec::parallel, double truncation = 1e-15);

// Quarter of the total-curvature integral minus (p - 6); the magnitude is an
// integration error indicator, near zero for an accurate scheme.
double chern_weil_check(const QuadratureScheme& scheme, const CoefficientSet& coeffs,
                        Exec exec = Exec::parallel, double truncation = 1e-15);

// Full curvature decomposition at every node.
std::vector<CurvatureSample> sample_all(const QuadratureScheme& scheme,
                                        const CoefficientSet& coeffs,
                                        const ExtremalAffine& target,
                                        Exec exec = Exec::parallel, double truncation = 1e-15);

}  // namespace toric
