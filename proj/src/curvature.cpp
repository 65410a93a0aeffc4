#include "toric/curvature.hpp"

#include <cmath>

#include "toric/errors.hpp"

namespace toric {

namespace {

double pair_quadratic(const Sym2& h, double u1, double u2, double v1, double v2) {
    return u1 * h.s11 * v1 + (u1 * v2 + u2 * v1) * h.s12 + u2 * h.s22 * v2;
}

struct Full4 {
    double v[2][2][2][2];
};

Full4 expand6(const std::array<double, 6>& f) {
    Full4 t;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int c = 0; c < 2; ++c)
                for (int d = 0; d < 2; ++d) {
                    switch (a + b + c + d) {
                        case 0: t.v[a][b][c][d] = f[0]; break;
                        case 1: t.v[a][b][c][d] = f[1]; break;
                        case 2: t.v[a][b][c][d] = (a == b) ? f[2] : f[3]; break;
                        case 3: t.v[a][b][c][d] = f[4]; break;
                        default: t.v[a][b][c][d] = f[5]; break;
                    }
                }
    return t;
}

std::array<double, 6> compress(const Full4& t) {
    return {t.v[0][0][0][0], t.v[0][0][0][1], t.v[0][0][1][1],
            t.v[0][1][0][1], t.v[0][1][1][1], t.v[1][1][1][1]};
}

// new_{ijkl} = sum_{abcd} t_{abcd} m[a][i] m[b][j] m[c][k] m[d][l]
Full4 transform(const Full4& t, const double m[2][2]) {
    Full4 s1, s2, s3, s4;
    for (int i = 0; i < 2; ++i)
        for (int b = 0; b < 2; ++b)
            for (int c = 0; c < 2; ++c)
                for (int d = 0; d < 2; ++d)
                    s1.v[i][b][c][d] = t.v[0][b][c][d] * m[0][i] + t.v[1][b][c][d] * m[1][i];
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int c = 0; c < 2; ++c)
                for (int d = 0; d < 2; ++d)
                    s2.v[i][j][c][d] = s1.v[i][0][c][d] * m[0][j] + s1.v[i][1][c][d] * m[1][j];
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int d = 0; d < 2; ++d)
                    s3.v[i][j][k][d] = s2.v[i][j][0][d] * m[0][k] + s2.v[i][j][1][d] * m[1][k];
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l)
                    s4.v[i][j][k][l] = s3.v[i][j][k][0] * m[0][l] + s3.v[i][j][k][1] * m[1][l];
    return s4;
}

}  // namespace

FTensor f_tensor(const PotentialJet& jet) {
    const auto& t3 = jet.d3;
    const auto& k4 = jet.d4;
    const Sym2& h = jet.d2_inv;

    // pair vectors u_ab = (phi_ab1, phi_ab2)
    FTensor f;
    f.f1111 = k4[0] - pair_quadratic(h, t3[0], t3[1], t3[0], t3[1]);
    f.f1112 = k4[1] - pair_quadratic(h, t3[0], t3[1], t3[1], t3[2]);
    f.f1122 = k4[2] - pair_quadratic(h, t3[0], t3[1], t3[2], t3[3]);
    f.f1212 = k4[2] - pair_quadratic(h, t3[1], t3[2], t3[1], t3[2]);
    f.f1222 = k4[3] - pair_quadratic(h, t3[1], t3[2], t3[2], t3[3]);
    f.f2222 = k4[4] - pair_quadratic(h, t3[2], t3[3], t3[2], t3[3]);
    return f;
}

double scalar_curvature(const FTensor& f, const PotentialJet& jet) {
    const Sym2& h = jet.d2_inv;
    double cross = f.f1111 * h.s11 * h.s11 + f.f2222 * h.s22 * h.s22 +
                   4 * f.f1112 * h.s11 * h.s12 + 4 * f.f1222 * h.s12 * h.s22 +
                   2 * f.f1122 * h.s12 * h.s12 +
                   2 * f.f1212 * (h.s11 * h.s22 + h.s12 * h.s12);
    return -cross;
}

Sym2 trace_free_ricci(const FTensor& f, const PotentialJet& jet, double S) {
    (void)S;  // the trace-free combination needs only the parallel contraction
    const Sym2& h = jet.d2_inv;
    double parallel = f.f1111 * h.s11 * h.s11 + f.f2222 * h.s22 * h.s22 +
                      2 * f.f1122 * h.s11 * h.s22 + 4 * f.f1112 * h.s11 * h.s12 +
                      4 * f.f1222 * h.s12 * h.s22 + 4 * f.f1212 * h.s12 * h.s12;
    Sym2 c1{f.f1111 * h.s11 + 2 * f.f1112 * h.s12 + f.f1122 * h.s22,
            f.f1112 * h.s11 + 2 * f.f1212 * h.s12 + f.f1222 * h.s22,
            f.f1122 * h.s11 + 2 * f.f1222 * h.s12 + f.f2222 * h.s22};
    return jet.d2 * (0.5 * parallel) - c1;
}

double gauss_curvature(const FTensor& f, const PotentialJet& jet) {
    return (f.f1122 - f.f1212) / jet.d2.det();
}

WeylComponent weyl_component(const FTensor& f, const PotentialJet& jet, double S, double K,
                             const Sym2& rho) {
    (void)S;
    (void)K;
    (void)rho;  // the projection is orthogonal to the span these parametrize

    // orthonormal frame via the Cholesky factor of the metric
    Chol2 r = cholesky(jet.d2);
    const double q[2][2] = {{1.0 / r.r11, -r.r21 / (r.r11 * r.r22)}, {0.0, 1.0 / r.r22}};

    Full4 hat = transform(
        expand6({f.f1111, f.f1112, f.f1122, f.f1212, f.f1222, f.f2222}), q);
    std::array<double, 6> fh = compress(hat);

    // inner products against the two orthogonal kernel generators
    // w1 = (-1, 0, 1, 1, 0, -1), w2 = (0, 1, 0, 0, -1, 0), both of norm^2 8
    // under component multiplicities (1, 4, 2, 4, 4, 1)
    double c1 = -fh[0] + 2 * fh[2] + 4 * fh[3] - fh[5];
    double c2 = 4 * (fh[1] - fh[4]);

    std::array<double, 6> w_hat = {-c1 / 8, c2 / 8, c1 / 8, c1 / 8, -c2 / 8, -c1 / 8};

    const double rt[2][2] = {{r.r11, r.r21}, {0.0, r.r22}};
    WeylComponent w;
    w.tensor = compress(transform(expand6(w_hat), rt));
    w.norm = std::sqrt((c1 * c1 + c2 * c2) / 8.0);
    return w;
}

double riem_norm_sq(double S, double K, double rho_norm, double w_norm) {
    double sk = S - 6 * K;
    return S * S / 3.0 + sk * sk / 24.0 + w_norm * w_norm + rho_norm * rho_norm;
}

CurvatureSample curvature_sample(const PotentialJet& jet, const ExtremalAffine& target) {
    FTensor f = f_tensor(jet);
    CurvatureSample s;
    s.x = jet.x;
    s.S = scalar_curvature(f, jet);
    s.K = gauss_curvature(f, jet);
    s.rho = trace_free_ricci(f, jet, s.S);
    s.rho_norm = std::sqrt(sym2_inner(s.rho, s.rho, jet.d2_inv));
    s.w_norm = weyl_component(f, jet, s.S, s.K, s.rho).norm;
    s.riem_sq = riem_norm_sq(s.S, s.K, s.rho_norm, s.w_norm);
    s.s_hat = s.S - target(s.x);
    return s;
}

BachResult bach_tensor(const CoefficientSet& coeffs, const VertexChart& chart, Vec2 t_chart,
                       double fd_step) {
    if (!(fd_step > 0) || !std::isfinite(fd_step))
        fail(ErrorCode::ConfigError, "finite-difference step must be positive");

    const Vec2 t0 = original_coords(chart, t_chart);
    auto s_at = [&](double dx, double dy) {
        Vec2 tc = chart_coords(chart, Vec2{t0.x + dx, t0.y + dy});
        if (std::max(tc.x, tc.y) > 1.0)
            fail(ErrorCode::StepTooLarge, "difference stencil leaves the chart validity region");
        PotentialJet jet = eval_jet(coeffs, chart, tc, 0.0);
        return scalar_curvature(f_tensor(jet), jet);
    };

    const double h = fd_step;
    const double s00 = s_at(0, 0);
    // fourth-order five-point lines on each axis, second-order corners mixed
    double s11 = (-s_at(2 * h, 0) + 16 * s_at(h, 0) - 30 * s00 + 16 * s_at(-h, 0) -
                  s_at(-2 * h, 0)) /
                 (12 * h * h);
    double s22 = (-s_at(0, 2 * h) + 16 * s_at(0, h) - 30 * s00 + 16 * s_at(0, -h) -
                  s_at(0, -2 * h)) /
                 (12 * h * h);
    double s12 = (s_at(h, h) - s_at(h, -h) - s_at(-h, h) + s_at(-h, -h)) / (4 * h * h);

    Sym2 hess = congruence(chart.L, Sym2{s11, s12, s22});

    PotentialJet jet = eval_jet(coeffs, chart, t_chart, 0.0);
    FTensor f = f_tensor(jet);
    double S = scalar_curvature(f, jet);
    Sym2 rho = trace_free_ricci(f, jet, S);

    double trace = hess.s11 * jet.d2_inv.s11 + 2 * hess.s12 * jet.d2_inv.s12 +
                   hess.s22 * jet.d2_inv.s22;
    Sym2 b = rho * S + hess - jet.d2 * (0.5 * trace);

    BachResult result;
    result.tensor = b;
    result.norm = std::sqrt(sym2_inner(b, b, jet.d2_inv));
    if (!std::isfinite(result.norm))
        fail(ErrorCode::NonFiniteResult, "bach norm is not finite");
    return result;
}

}  // namespace toric
