#include "toric/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "toric/curvature.hpp"
#include "toric/errors.hpp"
#include "toric/potential.hpp"

namespace toric {

namespace {

constexpr size_t kChunk = 1024;  // same ordered-reduction granularity as integrate()

double max_abs(const std::vector<double>& v) {
    double worst = 0;
    for (double x : v) worst = std::max(worst, std::abs(x));
    return worst;
}

void check_epsilon(const CoefficientSet& coeffs, const std::vector<double>& epsilon) {
    if (!epsilon.empty() && epsilon.size() != coeffs.size())
        fail(ErrorCode::ConfigError, "correction vector length does not match coefficients");
    for (double e : epsilon)
        if (!(1.0 + e > 0.0))
            fail(ErrorCode::InvalidCorrection, "correction coefficient at or below -1");
}

// Accumulates node sums of weight * detg * p over chunks in a fixed order,
// so results are identical for both execution modes and any thread count.
// `extra` receives per-node (weight*detg, S, shat) sums when requested.
struct EtaPassResult {
    std::vector<double> eta;  // divided by the coefficients at the end
    double l2 = 0;
    double lambda = 0;
    double eta_max = 0;
};

std::vector<double> basis_sums(const QuadratureScheme& scheme, const CoefficientSet& coeffs,
                               Exec exec, double truncation) {
    const size_t n = scheme.nodes.size();
    const size_t m = coeffs.size();
    const size_t nchunks = (n + kChunk - 1) / kChunk;
    std::vector<double> partial(nchunks * m, 0.0);

    auto run_chunk = [&](size_t c) {
        std::vector<double> p;
        Sym2 cov;
        double* acc = partial.data() + c * m;
        const size_t hi = std::min(n, (c + 1) * kChunk);
        for (size_t i = c * kChunk; i < hi; ++i) {
            const QuadratureNode& node = scheme.nodes[i];
            eval_weights(coeffs, scheme.atlas[node.chart], node.t_chart, truncation, p, &cov);
            const double w = node.static_weight * cov.det();
            for (size_t mu = 0; mu < m; ++mu) acc[mu] += w * p[mu];
        }
    };

    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
        for (long long c = 0; c < static_cast<long long>(nchunks); ++c)
            run_chunk(static_cast<size_t>(c));
    } else {
        for (size_t c = 0; c < nchunks; ++c) run_chunk(c);
    }

    std::vector<double> sums(m, 0.0);
    for (size_t c = 0; c < nchunks; ++c)
        for (size_t mu = 0; mu < m; ++mu) sums[mu] += partial[c * m + mu];
    return sums;
}

EtaPassResult eta_pass(const QuadratureScheme& scheme, const CoefficientSet& coeffs, Exec exec,
                       double truncation) {
    const ExtremalAffine target = extremal_affine(scheme.poly);
    const size_t n = scheme.nodes.size();
    const size_t m = coeffs.size();
    const size_t nchunks = (n + kChunk - 1) / kChunk;
    const size_t stride = m + 3;  // eta sums + (measure, S, shat^2) rows
    std::vector<double> partial(nchunks * stride, 0.0);

    auto run_chunk = [&](size_t c) {
        std::vector<double> p;
        double* acc = partial.data() + c * stride;
        const size_t hi = std::min(n, (c + 1) * kChunk);
        for (size_t i = c * kChunk; i < hi; ++i) {
            const QuadratureNode& node = scheme.nodes[i];
            PotentialJet jet =
                eval_jet(coeffs, scheme.atlas[node.chart], node.t_chart, truncation, &p);
            const double w = node.static_weight * jet.d2.det();
            const double s = scalar_curvature(f_tensor(jet), jet);
            const double shat = s - target(jet.x);
            const double ws = w * shat;
            for (size_t mu = 0; mu < m; ++mu) acc[mu] += ws * p[mu];
            acc[m] += w;
            acc[m + 1] += w * s;
            acc[m + 2] += ws * shat;
        }
    };

    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
        for (long long c = 0; c < static_cast<long long>(nchunks); ++c)
            run_chunk(static_cast<size_t>(c));
    } else {
        for (size_t c = 0; c < nchunks; ++c) run_chunk(c);
    }

    EtaPassResult result;
    result.eta.assign(m, 0.0);
    double mass = 0, s_int = 0, dev_int = 0;
    for (size_t c = 0; c < nchunks; ++c) {
        const double* acc = partial.data() + c * stride;
        for (size_t mu = 0; mu < m; ++mu) result.eta[mu] += acc[mu];
        mass += acc[m];
        s_int += acc[m + 1];
        dev_int += acc[m + 2];
    }
    if (!(mass > 0) || !std::isfinite(mass))
        fail(ErrorCode::NonPositiveIntegral, "metric volume is not positive");
    for (size_t mu = 0; mu < m; ++mu) {
        result.eta[mu] /= coeffs.value(mu);
        if (!std::isfinite(result.eta[mu]))
            fail(ErrorCode::NonFiniteResult, "error coefficient is not finite");
    }
    result.lambda = s_int / mass;
    result.l2 = std::sqrt(dev_int / mass) / result.lambda;
    result.eta_max = max_abs(result.eta);
    return result;
}

std::vector<double> orbit_mean(const std::vector<double>& v,
                               const std::vector<std::vector<size_t>>& orbits) {
    std::vector<double> out = v;
    for (const auto& orbit : orbits) {
        double mean = 0;
        for (size_t i : orbit) mean += v[i];
        mean /= static_cast<double>(orbit.size());
        for (size_t i : orbit) out[i] = mean;
    }
    return out;
}

double ratio_deviation(const CoefficientSet& next, const CoefficientSet& prev) {
    double worst = 0;
    for (size_t i = 0; i < next.size(); ++i)
        worst = std::max(worst, std::abs(next.value(i) / prev.value(i) - 1.0));
    return worst;
}

// One corrected-map application with optional orbit averaging; returns the
// averaged coefficients and the deviation statistic against `coeffs`.
TMapResult apply_map(const QuadratureScheme& scheme, const CoefficientSet& coeffs,
                     const std::vector<double>& epsilon,
                     const std::vector<std::vector<size_t>>* orbits, Exec exec,
                     double truncation) {
    TMapResult r = t_map(scheme, coeffs, epsilon, exec, truncation);
    if (orbits) {
        r.coeffs = apply_symmetry_average(r.coeffs, *orbits);
        r.max_ratio_dev = ratio_deviation(r.coeffs, coeffs);
    }
    return r;
}

double default_eta_tol(const Polygon& poly) {
    const double lambda =
        static_cast<double>(boundary_lattice_mass(poly)) / poly.area();
    return 1e-7 * (1.0 + lambda);
}

}  // namespace

const char* stop_reason_name(StopReason reason) {
    switch (reason) {
        case StopReason::none: return "none";
        case StopReason::converged: return "converged";
        case StopReason::eta_converged: return "eta_converged";
        case StopReason::plateau: return "plateau";
        case StopReason::max_iter: return "max_iter";
        case StopReason::diverged: return "diverged";
    }
    return "unknown";
}

std::vector<double> i_integrals(const QuadratureScheme& scheme, const CoefficientSet& coeffs,
                                Exec exec, double truncation) {
    std::vector<double> sums = basis_sums(scheme, coeffs, exec, truncation);
    for (size_t mu = 0; mu < sums.size(); ++mu) {
        sums[mu] /= coeffs.value(mu);
        if (!(sums[mu] > 0) || !std::isfinite(sums[mu]))
            fail(ErrorCode::NonPositiveIntegral, "basis-function integral is not positive");
    }
    return sums;
}

TMapResult t_map(const QuadratureScheme& scheme, const CoefficientSet& coeffs,
                 const std::vector<double>& epsilon, Exec exec, double truncation) {
    check_epsilon(coeffs, epsilon);
    // The map acts on normalized sets; projecting first makes the output
    // exactly independent of the input's affine gauge (the quadrature grid is
    // not translation-invariant, so skipping this would leak grid error).
    const CoefficientSet in =
        coeffs.is_normalized() ? coeffs : normalize(coeffs);
    std::vector<double> I = i_integrals(scheme, in, exec, truncation);
    std::vector<double> logs(I.size());
    for (size_t mu = 0; mu < I.size(); ++mu) {
        const double corr = epsilon.empty() ? 0.0 : std::log1p(epsilon[mu]);
        logs[mu] = corr - std::log(I[mu]);
    }
    TMapResult result{normalize(CoefficientSet::from_log_values(scheme.poly, logs)), 0.0};
    result.max_ratio_dev = ratio_deviation(result.coeffs, in);
    return result;
}

IterationState balance(const QuadratureScheme& scheme, const CoefficientSet& start, double tol,
                       int max_iter, const SolverOptions& options) {
    if (!(tol > 0)) fail(ErrorCode::ConfigError, "balance tolerance must be positive");
    if (max_iter < 1) fail(ErrorCode::ConfigError, "balance needs at least one iteration");

    std::vector<std::vector<size_t>> orbits;
    const std::vector<std::vector<size_t>>* orbits_ptr = nullptr;
    if (options.symmetry) {
        orbits = lattice_orbits(scheme.poly, *options.symmetry);
        orbits_ptr = &orbits;
    }

    CoefficientSet coeffs = start.is_normalized() ? start : normalize(start);
    if (orbits_ptr) coeffs = apply_symmetry_average(coeffs, orbits);

    const std::vector<double> no_correction;
    double dev = std::numeric_limits<double>::infinity();
    int applied = 0;
    bool converged = false;
    while (applied < max_iter) {
        TMapResult r =
            apply_map(scheme, coeffs, no_correction, orbits_ptr, options.exec, options.truncation);
        coeffs = std::move(r.coeffs);
        dev = r.max_ratio_dev;
        ++applied;
        if (dev < tol) {
            converged = true;
            break;
        }
    }

    EtaPassResult ep = eta_pass(scheme, coeffs, options.exec, options.truncation);
    if (orbits_ptr) {
        ep.eta = orbit_mean(ep.eta, orbits);
        ep.eta_max = max_abs(ep.eta);
    }

    IterationState state{std::move(coeffs),
                         std::vector<double>(start.size(), 0.0),
                         std::move(ep.eta),
                         applied,
                         0,
                         {HistoryRow{0, applied, ep.l2, dev, ep.eta_max}},
                         converged ? StopReason::converged : StopReason::max_iter};
    if (options.on_outer) options.on_outer(state);
    return state;
}

std::vector<double> error_coefficients(const QuadratureScheme& scheme,
                                       const CoefficientSet& coeffs, Exec exec,
                                       double truncation) {
    return eta_pass(scheme, coeffs, exec, truncation).eta;
}

IterationState refine(const QuadratureScheme& scheme, IterationState state, double c,
                      double c_prime, const StopRule& rule, const SolverOptions& options) {
    if (!(c_prime > 0)) fail(ErrorCode::ConfigError, "inner tolerance must be positive");
    if (!(c != 0.0) || !std::isfinite(c))
        fail(ErrorCode::ConfigError, "correction step must be nonzero and finite");
    if (rule.plateau_window < 1 || rule.outer_cap < 0 || !(rule.diverge_factor > 0) ||
        !(rule.transient_ceiling > 0))
        fail(ErrorCode::ConfigError, "malformed stop rule");

    std::vector<std::vector<size_t>> orbits;
    const std::vector<std::vector<size_t>>* orbits_ptr = nullptr;
    if (options.symmetry) {
        orbits = lattice_orbits(scheme.poly, *options.symmetry);
        orbits_ptr = &orbits;
    }

    state.stop = StopReason::none;
    // keep already-normalized coefficients bit-identical so a resumed run
    // retraces the uninterrupted trajectory exactly
    if (!state.coeffs.is_normalized()) state.coeffs = normalize(state.coeffs);
    if (state.epsilon.empty()) state.epsilon.assign(state.coeffs.size(), 0.0);
    check_epsilon(state.coeffs, state.epsilon);

    const double eta_tol = rule.eta_tol > 0 ? rule.eta_tol : default_eta_tol(scheme.poly);

    // Divergence bookkeeping, replayed from history so a resumed run judges
    // growth exactly like an uninterrupted one.  The first row's error (the
    // balanced state) is the reference scale; the minimum-anchored test only
    // arms once some later row has improved on it, because the correction
    // switch-on legitimately overshoots before the trajectory contracts.
    double l2_start = std::numeric_limits<double>::quiet_NaN();
    double min_l2 = std::numeric_limits<double>::infinity();
    bool contracting = false;
    for (const HistoryRow& row : state.history) {
        if (row.outer < 1) continue;
        if (std::isnan(l2_start)) l2_start = row.l2_error;
        else if (row.l2_error < l2_start) contracting = true;
        min_l2 = std::min(min_l2, row.l2_error);
    }

    while (true) {
        if (state.outer_step >= rule.outer_cap) {
            state.stop = StopReason::max_iter;
            break;
        }

        int inner = 0;
        double dev = 0;
        do {
            TMapResult r = apply_map(scheme, state.coeffs, state.epsilon, orbits_ptr,
                                     options.exec, options.truncation);
            state.coeffs = std::move(r.coeffs);
            dev = r.max_ratio_dev;
            ++inner;
            ++state.inner_step;
        } while (dev >= c_prime && inner < options.inner_cap);

        EtaPassResult ep = eta_pass(scheme, state.coeffs, options.exec, options.truncation);
        if (orbits_ptr) {
            ep.eta = orbit_mean(ep.eta, orbits);
            ep.eta_max = max_abs(ep.eta);
        }
        state.eta = ep.eta;

        ++state.outer_step;
        state.history.push_back(HistoryRow{state.outer_step, inner, ep.l2, dev, ep.eta_max});
        if (options.on_outer) options.on_outer(state);

        if (ep.eta_max < eta_tol) {
            state.stop = StopReason::eta_converged;
            break;
        }
        const size_t window = static_cast<size_t>(rule.plateau_window);
        if (state.history.size() > window + 2) {
            const double now = state.history.back().l2_error;
            const double then = state.history[state.history.size() - 1 - window].l2_error;
            if (std::abs(now - then) / now < rule.plateau_rel) {
                state.stop = StopReason::plateau;
                break;
            }
        }
        const bool first_row = std::isnan(l2_start);
        if (first_row) l2_start = ep.l2;
        else if (ep.l2 < l2_start) contracting = true;
        if (!std::isfinite(ep.l2) ||
            (contracting && ep.l2 > rule.diverge_factor * min_l2) ||
            (!contracting && !first_row && ep.l2 > rule.transient_ceiling * l2_start)) {
            state.stop = StopReason::diverged;
            break;
        }
        min_l2 = std::min(min_l2, ep.l2);

        // pending correction for the next outer step; a cap-stopped state
        // carries it so a resumed call continues the exact trajectory
        bool admissible = true;
        for (size_t mu = 0; mu < state.epsilon.size(); ++mu)
            if (!(1.0 + state.epsilon[mu] + c * state.eta[mu] > 0)) admissible = false;
        if (!admissible) {
            // the update would leave the positive cone; stop on the last
            // admissible state so the checkpoint stays resumable
            state.stop = StopReason::diverged;
            break;
        }
        for (size_t mu = 0; mu < state.epsilon.size(); ++mu)
            state.epsilon[mu] += c * state.eta[mu];
    }
    return state;
}

ErrorMeasures error_measures(const QuadratureScheme& scheme, const CoefficientSet& raw_coeffs,
                             const std::vector<double>& epsilon, Exec exec, double truncation) {
    check_epsilon(raw_coeffs, epsilon);
    // keep already-normalized input bit-identical so the report agrees with
    // the iteration history to the last digit
    const CoefficientSet coeffs = raw_coeffs.is_normalized() ? raw_coeffs : normalize(raw_coeffs);

    EtaPassResult ep = eta_pass(scheme, coeffs, exec, truncation);
    ErrorMeasures em;
    em.lambda = ep.lambda;
    em.l2 = ep.l2;

    const ExtremalAffine target = extremal_affine(scheme.poly);
    std::vector<CurvatureSample> samples =
        sample_all(scheme, coeffs, target, exec, truncation);
    double err_max = -std::numeric_limits<double>::infinity();
    double err_min = std::numeric_limits<double>::infinity();
    double norm_max = -std::numeric_limits<double>::infinity();
    double norm_min = std::numeric_limits<double>::infinity();
    for (const CurvatureSample& s : samples) {
        const double err = s.s_hat / em.lambda;
        err_max = std::max(err_max, err);
        err_min = std::min(err_min, err);
        const double norm_err = s.s_hat / std::sqrt(s.riem_sq);
        norm_max = std::max(norm_max, norm_err);
        norm_min = std::min(norm_min, norm_err);
    }
    em.err_max = err_max;
    em.err_min = err_min;
    em.norm_err_max = norm_max;
    em.norm_err_min = norm_min;

    std::vector<double> I = i_integrals(scheme, coeffs, exec, truncation);
    double cmax = -std::numeric_limits<double>::infinity();
    double cmin = std::numeric_limits<double>::infinity();
    for (size_t mu = 0; mu < I.size(); ++mu) {
        const double value = (epsilon.empty() ? 1.0 : 1.0 + epsilon[mu]) / I[mu];
        cmax = std::max(cmax, value);
        cmin = std::min(cmin, value);
    }
    em.coeff_max = cmax;
    em.coeff_min = cmin;
    return em;
}

}  // namespace toric
