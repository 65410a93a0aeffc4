#pragma once

#include <vector>

#include "toric/coefficients.hpp"
#include "toric/linalg.hpp"

namespace toric {

// Phase-space point of the reduced geodesic flow.  t and p live in the
// original fiber coordinates; J holds the torus momenta, which are conserved
// exactly and enter the Hamiltonian as a potential term.
struct GeodesicState {
    Vec2 t;
    Vec2 p;
    Vec2 J;
    double H = 0;
    double time = 0;
};

// One classical fourth-order step of H = (1/2) phi^{ab}(t)(p_a p_b + J_a J_b).
// Every stage evaluation re-selects the covering vertex chart, so trajectories
// cross chart boundaries freely; the stored H is recomputed from (t, p, J).
// Fails with StepRejected when the energy moves by more than 1e-6 relative
// across the step (or a stage evaluation degenerates); halve dt and retry.
GeodesicState geodesic_step(const CoefficientSet& coeffs, const GeodesicState& state, double dt,
                            double truncation = 1e-15);

// One sampled trajectory row: fiber position, moment image, running energy.
struct TraceSample {
    double time = 0;
    Vec2 t;
    Vec2 x;
    double H = 0;
};

// Integrates `steps` nominal steps of size dt from the initial state, emitting
// a row at step 0, every sample_every-th step, and the final step.  A rejected
// step is retried as two half steps, recursively up to max_halvings deep, and
// the rejection propagates once the budget is exhausted.
std::vector<TraceSample> trace(const CoefficientSet& coeffs, const GeodesicState& initial,
                               int steps, double dt, int sample_every = 1, int max_halvings = 12,
                               double truncation = 1e-15);

}  // namespace toric
