#include "toric/potential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "toric/errors.hpp"

namespace toric {

double eval_weights(const CoefficientSet& coeffs, const VertexChart& chart, Vec2 t_chart,
                    double truncation, std::vector<double>& p, Sym2* covariance) {
    const size_t n = coeffs.size();
    p.resize(n);

    double top = -std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < n; ++i) {
        const Vec2i nu = chart.exponents[i];
        p[i] = std::log(coeffs.value(i)) + nu.x * t_chart.x + nu.y * t_chart.y;
        top = std::max(top, p[i]);
    }

    double total = 0;
    for (size_t i = 0; i < n; ++i) {
        double w = std::exp(p[i] - top);
        if (w < truncation) w = 0;
        p[i] = w;
        total += w;
    }
    if (!(total > 0) || !std::isfinite(total))
        fail(ErrorCode::NonFiniteResult, "partition sum is not positive and finite");

    const double inv_total = 1.0 / total;
    for (size_t i = 0; i < n; ++i) p[i] *= inv_total;

    if (covariance) {
        double m1 = 0, m2 = 0;
        for (size_t i = 0; i < n; ++i) {
            m1 += p[i] * chart.exponents[i].x;
            m2 += p[i] * chart.exponents[i].y;
        }
        Sym2 cov;
        for (size_t i = 0; i < n; ++i) {
            const double c1 = chart.exponents[i].x - m1;
            const double c2 = chart.exponents[i].y - m2;
            cov.s11 += p[i] * c1 * c1;
            cov.s12 += p[i] * c1 * c2;
            cov.s22 += p[i] * c2 * c2;
        }
        *covariance = cov;
    }
    return top + std::log(total);
}

PotentialJet eval_jet(const CoefficientSet& coeffs, const VertexChart& chart, Vec2 t_chart,
                      double truncation, std::vector<double>* weights_out) {
    const size_t n = coeffs.size();
    static thread_local std::vector<double> scratch;
    std::vector<double>& p = weights_out ? *weights_out : scratch;
    const double log_partition = eval_weights(coeffs, chart, t_chart, truncation, p, nullptr);

    double m1 = 0, m2 = 0;
    for (size_t i = 0; i < n; ++i) {
        m1 += p[i] * chart.exponents[i].x;
        m2 += p[i] * chart.exponents[i].y;
    }

    Sym2 cov;
    double t111 = 0, t112 = 0, t122 = 0, t222 = 0;
    double q1111 = 0, q1112 = 0, q1122 = 0, q1222 = 0, q2222 = 0;
    for (size_t i = 0; i < n; ++i) {
        const double w = p[i];
        if (w == 0) continue;
        const double c1 = chart.exponents[i].x - m1;
        const double c2 = chart.exponents[i].y - m2;
        const double c11 = c1 * c1, c22 = c2 * c2, c12 = c1 * c2;
        cov.s11 += w * c11;
        cov.s12 += w * c12;
        cov.s22 += w * c22;
        t111 += w * c11 * c1;
        t112 += w * c11 * c2;
        t122 += w * c1 * c22;
        t222 += w * c22 * c2;
        q1111 += w * c11 * c11;
        q1112 += w * c11 * c12;
        q1122 += w * c11 * c22;
        q1222 += w * c12 * c22;
        q2222 += w * c22 * c22;
    }

    PotentialJet jet;
    jet.t = t_chart;
    jet.log_partition = log_partition;
    jet.d1 = {m1, m2};
    jet.d2 = cov;
    jet.d2_inv = cov.inverse();
    jet.d3 = {t111, t112, t122, t222};
    // fourth cumulants: subtract the three Gaussian pairings
    jet.d4 = {q1111 - 3 * cov.s11 * cov.s11,
              q1112 - 3 * cov.s11 * cov.s12,
              q1122 - cov.s11 * cov.s22 - 2 * cov.s12 * cov.s12,
              q1222 - 3 * cov.s22 * cov.s12,
              q2222 - 3 * cov.s22 * cov.s22};
    jet.x = chart.L_inv.apply(jet.d1) + chart.vertex.to_double();
    if (!std::isfinite(jet.x.x) || !std::isfinite(jet.x.y))
        fail(ErrorCode::NonFiniteResult, "moment image is not finite");
    return jet;
}

Vec2 moment_map(const PotentialJet& jet) { return jet.x; }

double basis_function(const CoefficientSet& coeffs, const VertexChart& chart, Vec2 t_chart,
                      Vec2i exponent) {
    const size_t idx = coeffs.index_of(exponent);
    static thread_local std::vector<double> p;
    eval_weights(coeffs, chart, t_chart, 0.0, p, nullptr);
    return p[idx] / coeffs.value(idx);
}

}  // namespace toric
