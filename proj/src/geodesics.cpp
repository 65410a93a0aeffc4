#include "toric/geodesics.hpp"

#include <cmath>

#include "toric/charts.hpp"
#include "toric/errors.hpp"
#include "toric/potential.hpp"

namespace toric {

namespace {

struct FlowEval {
    Vec2 t_dot;
    Vec2 p_dot;
    double H = 0;
    Vec2 x;
};

// Hamilton's equations in the original frame.  The jet arrives in chart
// coordinates; gradients pull back through rows of L_inv.
FlowEval flow(const CoefficientSet& coeffs, const Atlas& atlas, Vec2 t, Vec2 p, Vec2 J,
              double truncation) {
    const VertexChart& chart = atlas[select_chart(atlas, t)];
    PotentialJet jet = eval_jet(coeffs, chart, chart_coords(chart, t), truncation);

    Sym2 g = congruence(chart.L_inv, jet.d2);
    Sym2 g_inv = g.inverse();
    const double li[2][2] = {
        {static_cast<double>(chart.L_inv.m[0][0]), static_cast<double>(chart.L_inv.m[0][1])},
        {static_cast<double>(chart.L_inv.m[1][0]), static_cast<double>(chart.L_inv.m[1][1])}};
    // d3[a][b][c] in original coordinates; chart storage is indexed by the
    // number of second-axis derivatives
    double d3[2][2][2];
    for (int a = 0; a < 2; ++a)
        for (int b = a; b < 2; ++b)
            for (int c = b; c < 2; ++c) {
                double acc = 0;
                for (int i = 0; i < 2; ++i)
                    for (int j = 0; j < 2; ++j)
                        for (int k = 0; k < 2; ++k)
                            acc += li[a][i] * li[b][j] * li[c][k] * jet.d3[i + j + k];
                d3[a][b][c] = d3[a][c][b] = d3[b][a][c] = acc;
                d3[b][c][a] = d3[c][a][b] = d3[c][b][a] = acc;
            }

    const Vec2 q = g_inv.apply(p);
    const Vec2 r = g_inv.apply(J);
    const double qq[2] = {q.x, q.y};
    const double rr[2] = {r.x, r.y};
    FlowEval out;
    out.t_dot = q;
    // p_dot_a = (1/2)(q_i q_j + r_i r_j) d_a g_ij, from the inverse-matrix rule
    for (int a = 0; a < 2; ++a) {
        double acc = 0;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) acc += (qq[i] * qq[j] + rr[i] * rr[j]) * d3[a][i][j];
        (a == 0 ? out.p_dot.x : out.p_dot.y) = 0.5 * acc;
    }
    out.H = 0.5 * (p.dot(q) + J.dot(r));
    out.x = jet.x;
    return out;
}

GeodesicState step_with_atlas(const CoefficientSet& coeffs, const Atlas& atlas,
                              const GeodesicState& state, double dt, double truncation) {
    FlowEval k1, k2, k3, k4, end;
    try {
        k1 = flow(coeffs, atlas, state.t, state.p, state.J, truncation);
        k2 = flow(coeffs, atlas, state.t + k1.t_dot * (dt / 2), state.p + k1.p_dot * (dt / 2),
                  state.J, truncation);
        k3 = flow(coeffs, atlas, state.t + k2.t_dot * (dt / 2), state.p + k2.p_dot * (dt / 2),
                  state.J, truncation);
        k4 = flow(coeffs, atlas, state.t + k3.t_dot * dt, state.p + k3.p_dot * dt, state.J,
                  truncation);
    } catch (const Error& e) {
        if (e.code() == ErrorCode::SingularSystem || e.code() == ErrorCode::NonFiniteResult)
            fail(ErrorCode::StepRejected, "stage evaluation left the metric's domain");
        throw;
    }

    GeodesicState next = state;
    next.t = state.t + (k1.t_dot + (k2.t_dot + k3.t_dot) * 2.0 + k4.t_dot) * (dt / 6);
    next.p = state.p + (k1.p_dot + (k2.p_dot + k3.p_dot) * 2.0 + k4.p_dot) * (dt / 6);
    next.time = state.time + dt;

    double h_end;
    try {
        h_end = flow(coeffs, atlas, next.t, next.p, next.J, truncation).H;
    } catch (const Error& e) {
        if (e.code() == ErrorCode::SingularSystem || e.code() == ErrorCode::NonFiniteResult)
            fail(ErrorCode::StepRejected, "step left the metric's domain");
        throw;
    }
    if (!std::isfinite(h_end) ||
        std::abs(h_end - k1.H) > 1e-6 * std::max(std::abs(k1.H), 1e-300))
        fail(ErrorCode::StepRejected, "energy jumped across the step");
    next.H = h_end;
    return next;
}

// covers [state.time, state.time + dt], splitting on rejection
GeodesicState step_interval(const CoefficientSet& coeffs, const Atlas& atlas,
                            const GeodesicState& state, double dt, int halvings_left,
                            double truncation) {
    try {
        return step_with_atlas(coeffs, atlas, state, dt, truncation);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::StepRejected || halvings_left <= 0) throw;
    }
    GeodesicState mid =
        step_interval(coeffs, atlas, state, dt / 2, halvings_left - 1, truncation);
    return step_interval(coeffs, atlas, mid, dt / 2, halvings_left - 1, truncation);
}

}  // namespace

GeodesicState geodesic_step(const CoefficientSet& coeffs, const GeodesicState& state, double dt,
                            double truncation) {
    Atlas atlas = build_atlas(coeffs.polygon());
    return step_with_atlas(coeffs, atlas, state, dt, truncation);
}

std::vector<TraceSample> trace(const CoefficientSet& coeffs, const GeodesicState& initial,
                               int steps, double dt, int sample_every, int max_halvings,
                               double truncation) {
    if (steps < 0) fail(ErrorCode::ConfigError, "negative step count");
    if (dt == 0.0 || !std::isfinite(dt)) fail(ErrorCode::ConfigError, "step size must be nonzero");
    if (sample_every < 1) fail(ErrorCode::ConfigError, "sampling interval must be positive");
    if (max_halvings < 0) fail(ErrorCode::ConfigError, "negative halving budget");

    Atlas atlas = build_atlas(coeffs.polygon());
    GeodesicState state = initial;
    {
        FlowEval start = flow(coeffs, atlas, state.t, state.p, state.J, truncation);
        state.H = start.H;
    }

    std::vector<TraceSample> rows;
    rows.reserve(static_cast<size_t>(steps / sample_every) + 2);
    auto emit = [&](const GeodesicState& s) {
        FlowEval at = flow(coeffs, atlas, s.t, s.p, s.J, truncation);
        rows.push_back(TraceSample{s.time, s.t, at.x, s.H});
    };
    emit(state);
    for (int k = 1; k <= steps; ++k) {
        state = step_interval(coeffs, atlas, state, dt, max_halvings, truncation);
        if (k % sample_every == 0 || k == steps) emit(state);
    }
    return rows;
}

}  // namespace toric
