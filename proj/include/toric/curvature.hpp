#pragma once

#include <array>

#include "toric/charts.hpp"
#include "toric/coefficients.hpp"
#include "toric/linalg.hpp"
#include "toric/polygon.hpp"
#include "toric/potential.hpp"

namespace toric {

// Fourth-order curvature tensor with pair symmetries (ab)<->(ba), (cd)<->(dc),
// (ab)<->(cd); six independent components, chart frame.
struct FTensor {
    double f1111 = 0;
    double f1112 = 0;
    double f1122 = 0;
    double f1212 = 0;
    double f1222 = 0;
    double f2222 = 0;
};

// F_abcd = phi_abcd - phi_abe phi_cdf phi^{ef}
FTensor f_tensor(const PotentialJet& jet);

double scalar_curvature(const FTensor& f, const PotentialJet& jet);

// Trace-free part of the Ricci curvature, chart frame; exactly phi-trace-free.
Sym2 trace_free_ricci(const FTensor& f, const PotentialJet& jet, double S);

// Curvature of the 2-dimensional metric along the torus-invariant directions.
double gauss_curvature(const FTensor& f, const PotentialJet& jet);

// Orthogonal projection of F onto the joint kernel of its two metric
// contractions; tensor components in chart frame, FTensor component order.
struct WeylComponent {
    std::array<double, 6> tensor{};
    double norm = 0;
};
WeylComponent weyl_component(const FTensor& f, const PotentialJet& jet, double S, double K,
                             const Sym2& rho);

// |Riem|^2 = S^2/3 + (S - 6K)^2/24 + |w|^2 + |rho|^2
double riem_norm_sq(double S, double K, double rho_norm, double w_norm);

// All pointwise curvature quantities at one jet, plus the deviation of S from
// the target affine function evaluated at the moment image.
struct CurvatureSample {
    Vec2 x;
    double S = 0;
    double K = 0;
    Sym2 rho;
    double rho_norm = 0;
    double w_norm = 0;
    double riem_sq = 0;
    double s_hat = 0;
};
CurvatureSample curvature_sample(const PotentialJet& jet, const ExtremalAffine& target);

// S Rho_ab plus the trace-free Hessian of S; the Hessian comes from central
// finite differences along the original coordinate axes (so every chart sees
// the same stencil values), then is rotated into the chart frame.
struct BachResult {
    Sym2 tensor;
    double norm = 0;
};
BachResult bach_tensor(const CoefficientSet& coeffs, const VertexChart& chart, Vec2 t_chart,
                       double fd_step = 1e-3);

}  // namespace toric
