#pragma once

#include <functional>
#include <vector>

#include "toric/coefficients.hpp"
#include "toric/quadrature.hpp"

namespace toric {

enum class StopReason { none, converged, eta_converged, plateau, max_iter, diverged };

const char* stop_reason_name(StopReason reason);

struct HistoryRow {
    int outer = 0;
    int inner_total = 0;      // T applications spent in this row's inner loop
    double l2_error = 0;      // rescaled L2 deviation of S from the target affine
    double max_ratio_dev = 0; // last inner statistic max|a_new/a_old - 1|
    double eta_max = 0;
};

struct IterationState {
    CoefficientSet coeffs;           // always normalized
    std::vector<double> epsilon;     // correction coefficients, aligned with exponents
    std::vector<double> eta;         // last computed error coefficients
    int inner_step = 0;              // cumulative T applications
    int outer_step = 0;
    std::vector<HistoryRow> history;
    StopReason stop = StopReason::none;
};

struct SolverOptions {
    Exec exec = Exec::parallel;
    double truncation = 1e-15;
    // orbit-average coefficients after every T application (and the error
    // coefficients) when set; must preserve the lattice
    const std::vector<AffineMapZ>* symmetry = nullptr;
    int inner_cap = 400;  // safety valve; a capped inner loop proceeds, visible in history
    std::function<void(const IterationState&)> on_outer;  // after each appended row
};

struct StopRule {
    double eta_tol = 0;         // <= 0 selects 1e-7 * (1 + boundary mass / area)
    double plateau_rel = 1e-7;  // |l2_n - l2_{n-window}| / l2_n threshold
    int plateau_window = 10;
    int outer_cap = 5000;
    // Divergence is judged in two phases.  Switching the correction on throws
    // the iterate well off the balanced state before it contracts (the hexagon
    // run peaks near 40x its starting error), so while the error still sits
    // above its first-row value only l2 > transient_ceiling * start aborts.
    // Once the error has dipped below its starting value the run is
    // contracting, and l2 > diverge_factor * (min l2 so far) aborts.
    double diverge_factor = 10;
    double transient_ceiling = 1000;
};

// Integrals of the basis functions against the metric volume, aligned with
// the exponent list.  The coefficient-weighted sum reproduces the polygon
// area up to quadrature error.
std::vector<double> i_integrals(const QuadratureScheme& scheme, const CoefficientSet& coeffs,
                                Exec exec = Exec::parallel, double truncation = 1e-15);

struct TMapResult {
    CoefficientSet coeffs;     // normalize((1 + epsilon) / I)
    double max_ratio_dev = 0;  // max |new/old - 1| over coefficients
};

// One application of the corrected fixed-point map.  epsilon may be empty
// (treated as all zero); every entry must keep 1 + epsilon positive.
TMapResult t_map(const QuadratureScheme& scheme, const CoefficientSet& coeffs,
                 const std::vector<double>& epsilon, Exec exec = Exec::parallel,
                 double truncation = 1e-15);

// Iterates the plain map until max|a_new/a_old - 1| < tol.  Never throws on
// slow convergence: the best state comes back with stop = max_iter.  The
// single history row holds the final diagnostics.
IterationState balance(const QuadratureScheme& scheme, const CoefficientSet& start,
                       double tol, int max_iter, const SolverOptions& options = {});

// Moments of the scalar-curvature deviation against the basis functions;
// all zero exactly at a critical point of the discrete problem.
std::vector<double> error_coefficients(const QuadratureScheme& scheme,
                                       const CoefficientSet& coeffs,
                                       Exec exec = Exec::parallel, double truncation = 1e-15);

// Correction-coefficient outer loop around the inner fixed-point iteration:
// inner runs to tolerance c_prime, then epsilon moves by c times the error
// coefficients.  One history row per outer step.  Stops on the rule's first
// hit (eta_converged / plateau / max_iter) or flags divergence; the returned
// state always carries the last consistent coefficients for checkpointing.
IterationState refine(const QuadratureScheme& scheme, IterationState state, double c,
                      double c_prime, const StopRule& rule = {},
                      const SolverOptions& options = {});

struct ErrorMeasures {
    double lambda = 0;  // metric-average scalar curvature used for rescaling
    double l2 = 0;      // sqrt(average Shat^2) / lambda
    double err_max = 0, err_min = 0;            // extremes of Shat / lambda
    double norm_err_max = 0, norm_err_min = 0;  // extremes of Shat / |Riem|
    double coeff_max = 0, coeff_min = 0;        // extremes of (1 + epsilon) / I
};

// Quality report over the quadrature nodes.  The coefficient extremes are
// taken in the raw fixed-point gauge (1 + epsilon) / I, not the normalized
// one; epsilon may be empty for a plain balanced state.
ErrorMeasures error_measures(const QuadratureScheme& scheme, const CoefficientSet& coeffs,
                             const std::vector<double>& epsilon = {},
                             Exec exec = Exec::parallel, double truncation = 1e-15);

}  // namespace toric
