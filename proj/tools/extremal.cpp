#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "toric/coefficients.hpp"
#include "toric/curvature.hpp"
#include "toric/errors.hpp"
#include "toric/geodesics.hpp"
#include "toric/io.hpp"
#include "toric/polygon.hpp"
#include "toric/potential.hpp"
#include "toric/quadrature.hpp"
#include "toric/solver.hpp"

namespace fs = std::filesystem;
using namespace toric;

namespace {

struct RunConfig {
    std::string polygon = "hexagon";
    int k_scale = 0;  // 0 keeps the polygon's own bounding size
    double h = 0;     // 0 selects the automatic spacing
    double b = 2.0;
    double c = 0.75;
    double c_prime = 8e-4;
    double eta_tol = 0;  // 0 selects the scheme-derived tolerance
    int outer_cap = 5000;
    double truncation = 1e-15;
    bool symmetry = true;
    double fd_step = 1e-3;
    int threads = 0;
    std::string out = ".";
    std::string resume;
    int checkpoint_every = 200;
};

Polygon resolve_polygon(const RunConfig& cfg) {
    Polygon poly = [&] {
        std::error_code ec;
        if (fs::is_regular_file(cfg.polygon, ec)) return load_polygon(cfg.polygon);
        if (cfg.polygon == "triangle") return triangle_polygon(1);
        if (cfg.polygon == "square") return square_polygon(1);
        return Polygon::preset(cfg.polygon);
    }();
    if (cfg.k_scale > 0 && cfg.k_scale != poly.k()) poly = scale_to_k(poly, cfg.k_scale);
    return poly;
}

double spacing_for(const RunConfig& cfg, const Polygon& poly) {
    return cfg.h > 0 ? cfg.h : default_spacing(poly);
}

void apply_threads(const RunConfig& cfg) {
#ifdef _OPENMP
    if (cfg.threads > 0) omp_set_num_threads(cfg.threads);
#else
    (void)cfg;
#endif
}

// Curvature quantities scale inversely with the metric, so dividing the node
// extremes by the average scalar curvature reports them for the rescaled
// metric whose average is 1.
nlohmann::ordered_json make_summary(const RunConfig& cfg, const char* command, const Polygon& poly,
                                    const QuadratureScheme& scheme, const IterationState& state) {
    ErrorMeasures m = error_measures(scheme, state.coeffs, state.epsilon, Exec::parallel,
                                     cfg.truncation);
    std::vector<CurvatureSample> samples =
        sample_all(scheme, state.coeffs, extremal_affine(poly), Exec::parallel, cfg.truncation);
    double riem_max = 0, riem_min = std::numeric_limits<double>::infinity();
    double gauss_max = -std::numeric_limits<double>::infinity();
    double gauss_min = std::numeric_limits<double>::infinity();
    double weyl_max = 0, ricci_max = 0;
    for (const CurvatureSample& s : samples) {
        double riem = std::sqrt(s.riem_sq);
        riem_max = std::max(riem_max, riem);
        riem_min = std::min(riem_min, riem);
        gauss_max = std::max(gauss_max, s.K);
        gauss_min = std::min(gauss_min, s.K);
        weyl_max = std::max(weyl_max, s.w_norm);
        ricci_max = std::max(ricci_max, s.rho_norm);
    }

    nlohmann::ordered_json j;
    j["command"] = command;
    j["polygon"] = cfg.polygon;
    j["k"] = poly.k();
    j["h"] = scheme.h;
    j["b"] = scheme.b;
    j["nodes"] = scheme.nodes.size();
    j["c"] = cfg.c;
    j["c_prime"] = cfg.c_prime;
    j["symmetry"] = cfg.symmetry;
    j["stop"] = stop_reason_name(state.stop);
    j["outer_steps"] = state.outer_step;
    j["inner_steps"] = state.inner_step;
    j["eta_max"] = state.history.empty() ? 0.0 : state.history.back().eta_max;
    j["lambda"] = m.lambda;
    j["l2_error"] = m.l2;
    j["coeff_max"] = m.coeff_max;
    j["coeff_min"] = m.coeff_min;
    j["err_max"] = m.err_max;
    j["err_min"] = m.err_min;
    j["norm_err_max"] = m.norm_err_max;
    j["norm_err_min"] = m.norm_err_min;
    j["riem_max"] = riem_max / m.lambda;
    j["riem_min"] = riem_min / m.lambda;
    j["gauss_max"] = gauss_max / m.lambda;
    j["gauss_min"] = gauss_min / m.lambda;
    j["weyl_max"] = weyl_max / m.lambda;
    j["ricci_max"] = ricci_max / m.lambda;
    return j;
}

void write_run_artifacts(const RunConfig& cfg, const char* command, const Polygon& poly,
                         const QuadratureScheme& scheme, const IterationState& state) {
    fs::create_directories(cfg.out);
    fs::path dir(cfg.out);
    save_checkpoint(state, dir / "coefficients.csv");
    save_iteration_log(state.history, dir / "iterations.csv");
    save_text(make_summary(cfg, command, poly, scheme, state).dump(2) + "\n", dir / "summary.json");
}

int cmd_validate(const RunConfig& cfg) {
    Polygon poly = resolve_polygon(cfg);
    int failures = 0;
    auto check = [&failures](const char* name, double value, double limit) {
        bool ok = std::isfinite(value) && std::abs(value) <= limit;
        std::printf("  %-26s %12.4e  limit %.1e  %s\n", name, value, limit, ok ? "pass" : "FAIL");
        if (!ok) ++failures;
    };

    try {
        double h = spacing_for(cfg, poly);
        CoefficientSet ones = CoefficientSet::ones(poly);
        QuadratureScheme scheme = build_scheme(poly, ones, h, cfg.b);
        std::printf("polygon %s  k=%d  h=%g  nodes %zu  charts %zu\n", cfg.polygon.c_str(),
                    poly.k(), h, scheme.nodes.size(), scheme.atlas.size());

        std::vector<double> unit(scheme.nodes.size(), 1.0);
        double area = integrate(scheme, ones, unit, Exec::parallel, cfg.truncation);
        check("area relative error", area / poly.area() - 1.0, 1e-4);
        check("total-curvature residual", chern_weil_check(scheme, ones, Exec::parallel, cfg.truncation),
              1e-3);

        size_t covered = 0;
        for (const QuadratureNode& node : scheme.nodes)
            if (std::max(node.t_chart.x, node.t_chart.y) <= 1e-9) ++covered;
        bool cover_ok = covered == scheme.nodes.size();
        std::printf("  %-26s %zu/%zu  %s\n", "chart cover", covered, scheme.nodes.size(),
                    cover_ok ? "pass" : "FAIL");
        if (!cover_ok) ++failures;

        // models with closed-form constant scalar curvature; the sampled
        // deviation is a pure evaluation-pipeline regression, independent of
        // the polygon under validation
        struct Model {
            const char* name;
            Polygon poly;
            CoefficientSet coeffs;
        };
        Polygon sq = square_polygon(2);
        Polygon tri = triangle_polygon(3);
        Model models[] = {{"square S-A residual", sq, binomial_coefficients(sq)},
                          {"triangle S-A residual", tri, multinomial_coefficients(tri)}};
        for (const Model& model : models) {
            QuadratureScheme ms = build_scheme(model.poly, model.coeffs, 0.1, cfg.b);
            ExtremalAffine target = extremal_affine(model.poly);
            std::vector<CurvatureSample> samples =
                sample_all(ms, model.coeffs, target, Exec::parallel, cfg.truncation);
            double worst = 0;
            for (const CurvatureSample& s : samples) worst = std::max(worst, std::abs(s.s_hat));
            check(model.name, worst / target(model.poly.centroid()), 1e-8);
        }
    } catch (const Error& e) {
        std::fprintf(stderr, "validation aborted: %s\n", e.what());
        ++failures;
    }

    std::printf("validate: %s\n", failures ? "FAIL" : "PASS");
    return failures ? 2 : 0;
}

SolverOptions make_options(const RunConfig& cfg, const std::vector<AffineMapZ>* group,
                           const fs::path& checkpoint_path) {
    SolverOptions opts;
    opts.truncation = cfg.truncation;
    opts.symmetry = group;
    opts.on_outer = [&cfg, checkpoint_path](const IterationState& s) {
        const HistoryRow& row = s.history.back();
        if (row.outer % 50 == 0 || s.stop != StopReason::none) {
            std::printf("outer %5d  inner %6d  l2 %.6e  dev %.3e  eta_max %.3e\n", row.outer,
                        s.inner_step, row.l2_error, row.max_ratio_dev, row.eta_max);
            std::fflush(stdout);
        }
        if (cfg.checkpoint_every > 0 && row.outer > 0 && row.outer % cfg.checkpoint_every == 0)
            save_checkpoint(s, checkpoint_path);
    };
    return opts;
}

int cmd_balance(const RunConfig& cfg, double tol, int max_iter) {
    Polygon poly = resolve_polygon(cfg);
    CoefficientSet start = cfg.resume.empty() ? CoefficientSet::ones(poly)
                                              : load_checkpoint(poly, cfg.resume).coeffs;
    QuadratureScheme scheme = build_scheme(poly, start, spacing_for(cfg, poly), cfg.b);
    std::vector<AffineMapZ> group;
    if (cfg.symmetry) group = lattice_symmetries(poly);
    fs::create_directories(cfg.out);
    SolverOptions opts = make_options(cfg, cfg.symmetry ? &group : nullptr,
                                      fs::path(cfg.out) / "coefficients.csv");

    IterationState state = balance(scheme, start, tol, max_iter, opts);
    write_run_artifacts(cfg, "balance", poly, scheme, state);
    std::printf("balance: %s after %d iterations, l2 %.6e\n", stop_reason_name(state.stop),
                state.inner_step, state.history.back().l2_error);
    return 0;
}

int cmd_refine(const RunConfig& cfg) {
    Polygon poly = resolve_polygon(cfg);
    IterationState state =
        cfg.resume.empty()
            ? IterationState{CoefficientSet::ones(poly), {}, {}, 0, 0, {}, StopReason::none}
            : load_checkpoint(poly, cfg.resume);
    QuadratureScheme scheme = build_scheme(poly, state.coeffs, spacing_for(cfg, poly), cfg.b);
    std::vector<AffineMapZ> group;
    if (cfg.symmetry) group = lattice_symmetries(poly);
    fs::create_directories(cfg.out);
    SolverOptions opts = make_options(cfg, cfg.symmetry ? &group : nullptr,
                                      fs::path(cfg.out) / "coefficients.csv");

    StopRule rule;
    rule.eta_tol = cfg.eta_tol;
    rule.outer_cap = cfg.outer_cap;
    state = refine(scheme, std::move(state), cfg.c, cfg.c_prime, rule, opts);
    write_run_artifacts(cfg, "refine", poly, scheme, state);
    std::printf("refine: %s after %d outer / %d inner steps, l2 %.6e, eta_max %.3e\n",
                stop_reason_name(state.stop), state.outer_step, state.inner_step,
                state.history.back().l2_error, state.history.back().eta_max);
    return state.stop == StopReason::diverged ? 4 : 0;
}

int cmd_report(const RunConfig& cfg, const std::string& coeffs_file) {
    Polygon poly = resolve_polygon(cfg);
    CoefficientSet coeffs = load_coefficients(poly, coeffs_file);
    QuadratureScheme scheme = build_scheme(poly, coeffs, spacing_for(cfg, poly), cfg.b);
    ExtremalAffine target = extremal_affine(poly);

    const double nan = std::numeric_limits<double>::quiet_NaN();
    size_t n = scheme.nodes.size();
    std::vector<ReportRow> rows(n);
    std::vector<char> failed(n, 0);

#pragma omp parallel for schedule(static)
    for (long long idx = 0; idx < static_cast<long long>(n); ++idx) {
        const QuadratureNode& node = scheme.nodes[idx];
        ReportRow row;
        row.x = node.x;
        row.S = row.Shat = row.K = row.rho_norm = row.w_norm = row.riem_norm = row.bach_norm = nan;
        try {
            // Inverting the moment map at x means minimizing the convex
            // function phi(t) - <x,t>, whose gradient is the moment residual.
            // Newton steps with backtracking on that objective converge from
            // any seed; the boundary-potential pushforward is a good one.
            // extended-value: a trial point whose weights degenerate reads as
            // +inf and the line search simply backs off
            auto objective = [&](Vec2 t, size_t* ci_out, PotentialJet* jet_out) {
                try {
                    size_t ci = select_chart(scheme.atlas, t);
                    const VertexChart& chart = scheme.atlas[ci];
                    PotentialJet jet =
                        eval_jet(coeffs, chart, chart_coords(chart, t), cfg.truncation);
                    *ci_out = ci;
                    *jet_out = jet;
                    // chart log-partition is the potential minus <vertex, t>
                    return jet.log_partition + (chart.vertex.x - node.x.x) * t.x +
                           (chart.vertex.y - node.x.y) * t.y;
                } catch (const Error&) {
                    return std::numeric_limits<double>::infinity();
                }
            };

            Vec2 t = node.t;
            size_t ci = 0;
            PotentialJet jet;
            double fval = objective(t, &ci, &jet);
            if (std::isinf(fval)) {  // a bad seed fails outright
                failed[idx] = 1;
                rows[idx] = row;
                continue;
            }
            bool converged = false;
            for (int it = 0; it < 50 && !converged; ++it) {
                Vec2 residual = node.x - jet.x;
                if (residual.max_abs() <= 1e-12) {
                    converged = true;
                    break;
                }
                const VertexChart& chart = scheme.atlas[ci];
                Sym2 metric = congruence(chart.L_inv, jet.d2);
                Vec2 step = metric.inverse().apply(residual);
                double slope = -(residual.x * step.x + residual.y * step.y);  // < 0
                double alpha = 1.0;
                bool moved = false;
                // near the solution the predicted decrease sinks below the
                // resolution of fval itself; the slack keeps full Newton
                // steps acceptable there instead of deadlocking the search
                double slack = 1e-13 * (std::abs(fval) + 1.0);
                for (; alpha > 1e-9; alpha *= 0.5) {
                    size_t ci_try = 0;
                    PotentialJet jet_try;
                    double f_try = objective(t + step * alpha, &ci_try, &jet_try);
                    if (std::isfinite(f_try) && f_try <= fval + 1e-4 * alpha * slope + slack) {
                        t = t + step * alpha;
                        ci = ci_try;
                        jet = jet_try;
                        fval = f_try;
                        moved = true;
                        break;
                    }
                }
                if (!moved) break;
            }
            if (converged) {
                const VertexChart& chart = scheme.atlas[ci];
                CurvatureSample s = curvature_sample(jet, target);
                BachResult bach = bach_tensor(coeffs, chart, chart_coords(chart, t), cfg.fd_step);
                row.S = s.S;
                row.Shat = s.s_hat;
                row.K = s.K;
                row.rho_norm = s.rho_norm;
                row.w_norm = s.w_norm;
                row.riem_norm = std::sqrt(s.riem_sq);
                row.bach_norm = bach.norm;
            } else {
                failed[idx] = 1;
            }
        } catch (const Error&) {
            failed[idx] = 1;
        }
        rows[idx] = row;
    }

    size_t bad = 0;
    for (char f : failed) bad += f;
    if (static_cast<double>(bad) > 1e-3 * static_cast<double>(n))
        fail(ErrorCode::NewtonFailed, std::to_string(bad) + " of " + std::to_string(n) +
                                          " grid points failed to invert the moment map");

    fs::create_directories(cfg.out);
    save_report(rows, fs::path(cfg.out) / "report.csv");
    std::printf("report: %zu grid points, %zu marked unresolved\n", n, bad);
    return 0;
}

int cmd_geodesic(const RunConfig& cfg, const std::string& coeffs_file,
                 const std::vector<double>& t0, const std::vector<double>& p0,
                 const std::vector<double>& j0, double dt, int steps, int sample_every,
                 int max_halvings) {
    Polygon poly = resolve_polygon(cfg);
    CoefficientSet coeffs =
        coeffs_file.empty() ? CoefficientSet::ones(poly) : load_coefficients(poly, coeffs_file);

    GeodesicState initial;
    initial.t = {t0[0], t0[1]};
    initial.p = {p0[0], p0[1]};
    initial.J = {j0[0], j0[1]};
    std::vector<TraceSample> samples =
        trace(coeffs, initial, steps, dt, sample_every, max_halvings, cfg.truncation);

    fs::create_directories(cfg.out);
    save_trace(samples, fs::path(cfg.out) / "trace.csv");
    double drift = std::abs(samples.back().H - samples.front().H);
    std::printf("geodesic: %d steps of dt=%g, energy %.12e, drift %.3e\n", steps, dt,
                samples.front().H, drift);
    return 0;
}

int cmd_convergence(const RunConfig& cfg, const std::vector<int>& k_list) {
    Polygon base = [&] {
        std::error_code ec;
        if (fs::is_regular_file(cfg.polygon, ec)) return load_polygon(cfg.polygon);
        if (cfg.polygon == "triangle") return triangle_polygon(1);
        if (cfg.polygon == "square") return square_polygon(1);
        return Polygon::preset(cfg.polygon);
    }();

    fs::create_directories(cfg.out);
    std::vector<std::pair<int, double>> table;
    int failures = 0;
    for (int k : k_list) {
        try {
            Polygon poly = scale_to_k(base, k);
            double h = cfg.h > 0 ? cfg.h : default_spacing(poly);
            CoefficientSet start = CoefficientSet::ones(poly);
            QuadratureScheme scheme = build_scheme(poly, start, h, cfg.b);
            std::vector<AffineMapZ> group;
            if (cfg.symmetry) group = lattice_symmetries(poly);
            fs::path checkpoint = fs::path(cfg.out) / ("k" + std::to_string(k) + "_coefficients.csv");
            SolverOptions opts = make_options(cfg, cfg.symmetry ? &group : nullptr, checkpoint);

            StopRule rule;
            rule.eta_tol = cfg.eta_tol;
            rule.outer_cap = cfg.outer_cap;
            IterationState state = refine(
                scheme, IterationState{std::move(start), {}, {}, 0, 0, {}, StopReason::none},
                cfg.c, cfg.c_prime, rule, opts);
            save_checkpoint(state, checkpoint);
            if (state.stop == StopReason::diverged) {
                std::fprintf(stderr, "k=%d: diverged, omitted from the table\n", k);
                ++failures;
            } else {
                double l2 = state.history.back().l2_error;
                table.emplace_back(k, l2);
                std::printf("k=%2d  nodes %6zu  %-13s l2 %.6e\n", k, scheme.nodes.size(),
                            stop_reason_name(state.stop), l2);
                std::fflush(stdout);
            }
        } catch (const Error& e) {
            std::fprintf(stderr, "k=%d failed: %s\n", k, e.what());
            ++failures;
        }
        save_convergence(table, fs::path(cfg.out) / "convergence.csv");
    }
    return failures ? 1 : 0;
}

int exit_code_for(const Error& e) {
    switch (e.code()) {
        case ErrorCode::Diverged: return 4;
        case ErrorCode::ConfigError:
        case ErrorCode::UnknownPreset:
        case ErrorCode::IoError:
        case ErrorCode::NotConvex:
        case ErrorCode::NotDelzant:
        case ErrorCode::NotCounterclockwise:
        case ErrorCode::ExceedsBoundingSquare:
        case ErrorCode::EmptyGrid: return 3;
        default: return 1;
    }
}

}  // namespace

int main(int argc, char** argv) {
    RunConfig cfg;
    double balance_tol = 1e-10;
    int balance_max_iter = 20000;
    std::string coeffs_file;
    std::vector<int> k_list = {4, 6, 8, 10};
    std::vector<double> t0 = {0.0, 0.0};
    std::vector<double> p0 = {0.2, -0.1};
    std::vector<double> j0 = {0.8, 0.5};
    double dt = 1e-3;
    int steps = 10000;
    int sample_every = 10;
    int max_halvings = 12;

    CLI::App app{"balanced and refined approximations of extremal toric surface metrics"};
    app.require_subcommand(1);

    // the spacing flag owns the name "h", so help is long-form only
    app.set_help_flag("--help", "print help and exit");

    auto add_common = [&cfg](CLI::App* sub) {
        sub->set_help_flag("--help", "print help and exit");
        sub->add_option("--polygon", cfg.polygon, "preset name or polygon JSON file")
            ->capture_default_str();
        sub->add_option("--k-scale", cfg.k_scale,
                        "rescale the polygon to this bounding size (vertices must stay integral)");
        sub->add_option("--h", cfg.h, "moment-plane grid spacing (0 = automatic)");
        sub->add_option("--b", cfg.b, "boundary potential weight")->capture_default_str();
        sub->add_option("--truncation", cfg.truncation, "relative weight cutoff")
            ->capture_default_str();
        sub->add_option("--threads", cfg.threads, "worker threads (0 = runtime default)");
        sub->add_option("--out", cfg.out, "output directory")->capture_default_str();
        return sub;
    };
    auto add_solver = [&cfg](CLI::App* sub) {
        sub->add_flag("--symmetry,!--no-symmetry", cfg.symmetry,
                      "average coefficient orbits under the polygon's lattice symmetries");
        sub->add_option("--resume", cfg.resume, "coefficient checkpoint to continue from");
        sub->add_option("--checkpoint-every", cfg.checkpoint_every,
                        "outer steps between checkpoint rewrites (0 = only at the end)")
            ->capture_default_str();
        return sub;
    };

    add_common(app.add_subcommand("validate", "check quadrature quality and exact reference models"));

    CLI::App* bal = add_solver(add_common(
        app.add_subcommand("balance", "iterate the fixed-point map to the balanced metric")));
    bal->add_option("--tol", balance_tol, "stop when max |a_new/a_old - 1| falls below this")
        ->capture_default_str();
    bal->add_option("--max-iter", balance_max_iter, "iteration cap")->capture_default_str();

    CLI::App* ref = add_solver(add_common(
        app.add_subcommand("refine", "correction-coefficient loop toward the extremal metric")));
    ref->add_option("--c", cfg.c, "outer correction step factor")->capture_default_str();
    ref->add_option("--c-prime", cfg.c_prime, "inner fixed-point tolerance")->capture_default_str();
    ref->add_option("--eta-tol", cfg.eta_tol, "stop when max |eta| falls below this (0 = automatic)");
    ref->add_option("--outer-cap", cfg.outer_cap, "outer step cap")->capture_default_str();

    CLI::App* rep = add_common(
        app.add_subcommand("report", "curvature decomposition on a uniform moment-plane grid"));
    rep->add_option("--coeffs", coeffs_file, "coefficient CSV to evaluate")->required();
    rep->add_option("--fd-step", cfg.fd_step, "finite-difference step for the Bach tensor")
        ->capture_default_str();

    CLI::App* geo =
        add_common(app.add_subcommand("geodesic", "Hamiltonian trace through the torus fibration"));
    geo->add_option("--coeffs", coeffs_file, "coefficient CSV (default: all-ones metric)");
    geo->add_option("--t0", t0, "initial fiber point")->expected(2);
    geo->add_option("--p0", p0, "initial momentum")->expected(2);
    geo->add_option("--j0", j0, "conserved angular momenta")->expected(2);
    geo->add_option("--dt", dt, "time step")->capture_default_str();
    geo->add_option("--steps", steps, "step count")->capture_default_str();
    geo->add_option("--sample-every", sample_every, "rows kept per steps")->capture_default_str();
    geo->add_option("--max-halvings", max_halvings, "recursive step splits before giving up")
        ->capture_default_str();

    CLI::App* conv = add_solver(add_common(
        app.add_subcommand("convergence", "refine across a ladder of polygon scales")));
    conv->add_option("--k-list", k_list, "bounding sizes to sweep")->capture_default_str();
    conv->add_option("--c", cfg.c, "outer correction step factor")->capture_default_str();
    conv->add_option("--c-prime", cfg.c_prime, "inner fixed-point tolerance")->capture_default_str();
    conv->add_option("--eta-tol", cfg.eta_tol, "stop when max |eta| falls below this (0 = automatic)");
    conv->add_option("--outer-cap", cfg.outer_cap, "outer step cap")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 3;
    }

    apply_threads(cfg);
    try {
        if (app.got_subcommand("validate")) return cmd_validate(cfg);
        if (app.got_subcommand("balance")) return cmd_balance(cfg, balance_tol, balance_max_iter);
        if (app.got_subcommand("refine")) return cmd_refine(cfg);
        if (app.got_subcommand("report")) return cmd_report(cfg, coeffs_file);
        if (app.got_subcommand("geodesic"))
            return cmd_geodesic(cfg, coeffs_file, t0, p0, j0, dt, steps, sample_every, max_halvings);
        if (app.got_subcommand("convergence")) return cmd_convergence(cfg, k_list);
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 3;
}
