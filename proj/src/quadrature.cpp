#include "toric/quadrature.hpp"

#include <cmath>

#include "toric/errors.hpp"
#include "toric/potential.hpp"

namespace toric {

namespace {

constexpr size_t kChunk = 1024;

double chunked_sum(const std::vector<double>& partial) {
    double total = 0;
    for (double v : partial) total += v;
    return total;
}

}  // namespace

QuadratureScheme build_scheme(const Polygon& poly, const CoefficientSet& coeffs, double h,
                              double b) {
    (void)coeffs;
    if (!(h > 0) || !std::isfinite(h)) fail(ErrorCode::ConfigError, "grid spacing must be positive");
    if (!(b >= 1)) fail(ErrorCode::ConfigError, "boundary potential weight must be at least 1");

    QuadratureScheme scheme{poly, h, b, build_atlas(poly), {}};

    const double k = static_cast<double>(poly.k());
    const long long cells = static_cast<long long>(std::floor(k / h)) + 1;
    constexpr double margin = 1e-9;

    for (long long i = 0; i < cells; ++i) {
        const double x1 = h * static_cast<double>(i) + h / 2;
        if (x1 >= k) break;
        for (long long j = 0; j < cells; ++j) {
            const double x2 = h * static_cast<double>(j) + h / 2;
            if (x2 >= k) break;
            Vec2 x{x1, x2};
            bool inside = true;
            for (const Edge& e : poly.edges()) {
                if (e.inward_normal.to_double().dot(x) - static_cast<double>(e.support) <=
                    margin) {
                    inside = false;
                    break;
                }
            }
            if (!inside) continue;

            GuilleminJet u0 = guillemin(poly, b, x);
            QuadratureNode node;
            node.x = x;
            node.t = u0.gradient;
            node.chart = static_cast<std::uint32_t>(select_chart(scheme.atlas, node.t));
            node.t_chart = chart_coords(scheme.atlas[node.chart], node.t);
            node.static_weight = h * h * u0.hessian.det();
            scheme.nodes.push_back(node);
        }
    }
    if (scheme.nodes.empty()) fail(ErrorCode::EmptyGrid, "no grid cell centers inside the polygon");
    return scheme;
}

double default_spacing(const Polygon& poly) {
    double h = static_cast<double>(poly.k()) / 60.0;
    double estimated = poly.area() / (h * h);
    if (estimated > 2e5) h = std::sqrt(poly.area() / 2e5);
    return h;
}

double integrate(const QuadratureScheme& scheme, const CoefficientSet& coeffs,
                 const std::vector<double>& f, Exec exec, double truncation) {
    const size_t n = scheme.nodes.size();
    if (f.size() != n) fail(ErrorCode::ConfigError, "integrand length does not match node count");

    const size_t nchunks = (n + kChunk - 1) / kChunk;
    std::vector<double> partial(nchunks, 0.0);

    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
        for (long long c = 0; c < static_cast<long long>(nchunks); ++c) {
            std::vector<double> p;
            Sym2 cov;
            double acc = 0;
            const size_t hi = std::min(n, (static_cast<size_t>(c) + 1) * kChunk);
            for (size_t i = static_cast<size_t>(c) * kChunk; i < hi; ++i) {
                const QuadratureNode& node = scheme.nodes[i];
                eval_weights(coeffs, scheme.atlas[node.chart], node.t_chart, truncation, p, &cov);
                acc += node.static_weight * cov.det() * f[i];
            }
            partial[static_cast<size_t>(c)] = acc;
        }
    } else {
        std::vector<double> p;
        Sym2 cov;
        for (size_t c = 0; c < nchunks; ++c) {
            double acc = 0;
            const size_t hi = std::min(n, (c + 1) * kChunk);
            for (size_t i = c * kChunk; i < hi; ++i) {
                const QuadratureNode& node = scheme.nodes[i];
                eval_weights(coeffs, scheme.atlas[node.chart], node.t_chart, truncation, p, &cov);
                acc += node.static_weight * cov.det() * f[i];
            }
            partial[c] = acc;
        }
    }
    double total = chunked_sum(partial);
    if (!std::isfinite(total)) fail(ErrorCode::NonFiniteResult, "integral is not finite");
    return total;
}

std::vector<CurvatureSample> sample_all(const QuadratureScheme& scheme,
                                        const CoefficientSet& coeffs,
                                        const ExtremalAffine& target, Exec exec,
                                        double truncation) {
    const size_t n = scheme.nodes.size();
    std::vector<CurvatureSample> samples(n);

    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
        for (long long i = 0; i < static_cast<long long>(n); ++i) {
            const QuadratureNode& node = scheme.nodes[static_cast<size_t>(i)];
            PotentialJet jet =
                eval_jet(coeffs, scheme.atlas[node.chart], node.t_chart, truncation);
            samples[static_cast<size_t>(i)] = curvature_sample(jet, target);
        }
    } else {
        for (size_t i = 0; i < n; ++i) {
            const QuadratureNode& node = scheme.nodes[i];
            PotentialJet jet =
                eval_jet(coeffs, scheme.atlas[node.chart], node.t_chart, truncation);
            samples[i] = curvature_sample(jet, target);
        }
    }
    return samples;
}

double average_scalar(const QuadratureScheme& scheme, const CoefficientSet& coeffs, Exec exec,
                      double truncation) {
    CoefficientSet nc = normalize(coeffs);
    auto samples = sample_all(scheme, nc, extremal_affine(scheme.poly), exec, truncation);
    std::vector<double> s_values(samples.size()), ones(samples.size(), 1.0);
    for (size_t i = 0; i < samples.size(); ++i) s_values[i] = samples[i].S;
    double volume = integrate(scheme, nc, ones, exec, truncation);
    if (!(volume > 0)) fail(ErrorCode::NonPositiveIntegral, "metric volume is not positive");
    return integrate(scheme, nc, s_values, exec, truncation) / volume;
}

double chern_weil_check(const QuadratureScheme& scheme, const CoefficientSet& coeffs, Exec exec,
                        double truncation) {
    CoefficientSet nc = normalize(coeffs);
    auto samples = sample_all(scheme, nc, extremal_affine(scheme.poly), exec, truncation);
    std::vector<double> values(samples.size());
    for (size_t i = 0; i < samples.size(); ++i)
        values[i] = samples[i].riem_sq - samples[i].S * samples[i].S;
    double total = integrate(scheme, nc, values, exec, truncation);
    return total / 4.0 - (static_cast<double>(scheme.poly.vertex_count()) - 6.0);
}

}  // namespace toric
