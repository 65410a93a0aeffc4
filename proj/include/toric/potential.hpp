#pragma once

#include <array>
#include <vector>

#include "toric/charts.hpp"
#include "toric/coefficients.hpp"
#include "toric/linalg.hpp"

namespace toric {

// Derivatives of the log-partition potential at one point of a vertex chart.
// Symmetric tensor components are stored in lexicographic index order:
//   d3 = {111, 112, 122, 222},  d4 = {1111, 1112, 1122, 1222, 2222}.
struct PotentialJet {
    Vec2 t;               // chart coordinates of the evaluation point
    double log_partition = 0;
    Vec2 d1;
    Sym2 d2;
    Sym2 d2_inv;
    std::array<double, 4> d3{};
    std::array<double, 5> d4{};
    Vec2 x;               // moment image, in original coordinates
};

// Normalized exponential weights of the lattice points at t (chart frame).
// Fills p (indexed like the coefficient set; truncated terms are exactly 0)
// and returns the log partition value; optionally also the weight covariance,
// which is the metric in chart coordinates.
double eval_weights(const CoefficientSet& coeffs, const VertexChart& chart, Vec2 t_chart,
                    double truncation, std::vector<double>& p, Sym2* covariance = nullptr);

// Full fourth-order jet via central moments and cumulants of the weights.
// weights_out, when given, receives the normalized weights (as eval_weights).
PotentialJet eval_jet(const CoefficientSet& coeffs, const VertexChart& chart, Vec2 t_chart,
                      double truncation, std::vector<double>* weights_out = nullptr);

Vec2 moment_map(const PotentialJet& jet);

// Weight of one lattice point divided by its coefficient; these sum against
// the coefficients to 1 and concentrate at the vertex deep in the chart.
double basis_function(const CoefficientSet& coeffs, const VertexChart& chart, Vec2 t_chart,
                      Vec2i exponent);

}  // namespace toric
