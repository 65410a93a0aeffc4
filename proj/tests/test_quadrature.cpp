#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <omp.h>

#include <cmath>
#include <vector>

#include "toric/coefficients.hpp"
#include "toric/polygon.hpp"
#include "toric/quadrature.hpp"

using namespace toric;

TEST_CASE("unit square scheme layout") {
    Polygon sq = square_polygon(1);
    CoefficientSet ones = CoefficientSet::ones(sq);
    QuadratureScheme scheme = build_scheme(sq, ones, 0.5, 2.0);

    REQUIRE(scheme.nodes.size() == 4);
    // x-major enumeration
    CHECK(scheme.nodes[0].x.x == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(scheme.nodes[0].x.y == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(scheme.nodes[1].x.y == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(scheme.nodes[3].x.x == doctest::Approx(0.75).epsilon(1e-15));

    CHECK(scheme.nodes[0].chart == 0);
    CHECK(scheme.nodes[1].chart == 3);
    CHECK(scheme.nodes[2].chart == 1);
    CHECK(scheme.nodes[3].chart == 2);

    // symmetric corners share the static weight; t = gradient of the boundary potential
    for (const auto& node : scheme.nodes) {
        CHECK(node.static_weight == doctest::Approx(scheme.nodes[0].static_weight).epsilon(1e-12));
        CHECK(std::max(node.t_chart.x, node.t_chart.y) <= 1e-9);
        Vec2 grad = guillemin(sq, 2.0, node.x).gradient;
        CHECK(node.t.x == grad.x);
        CHECK(node.t.y == grad.y);
    }
}

TEST_CASE("hexagon scheme pinned values") {
    Polygon hex = Polygon::preset("hexagon");
    CoefficientSet ones = CoefficientSet::ones(hex);
    QuadratureScheme scheme = build_scheme(hex, ones, 0.1, 2.0);

    REQUIRE(scheme.nodes.size() == 2670);
    long long chart_sum = 0;
    double weight_sum = 0;
    for (const auto& node : scheme.nodes) {
        chart_sum += node.chart;
        weight_sum += node.static_weight;
        CHECK(std::max(node.t_chart.x, node.t_chart.y) <= 1e-9);
    }
    CHECK(chart_sum == 6647);  // regression pin; cone-wall ties are implementation-stable
    CHECK(weight_sum == doctest::Approx(828.319128196281).epsilon(1e-9));

    CHECK(scheme.nodes.front().x.x == doctest::Approx(0.05).epsilon(1e-12));
    CHECK(scheme.nodes.front().x.y == doctest::Approx(0.05).epsilon(1e-12));
    CHECK(scheme.nodes.front().chart == 0);
    CHECK(scheme.nodes.back().x.x == doctest::Approx(5.95).epsilon(1e-12));
    CHECK(scheme.nodes.back().chart == 3);

    // rebuilding gives the identical node set
    QuadratureScheme again = build_scheme(hex, ones, 0.1, 2.0);
    REQUIRE(again.nodes.size() == scheme.nodes.size());
    for (size_t i = 0; i < scheme.nodes.size(); i += 97) {
        CHECK(again.nodes[i].x.x == scheme.nodes[i].x.x);
        CHECK(again.nodes[i].t.y == scheme.nodes[i].t.y);
        CHECK(again.nodes[i].chart == scheme.nodes[i].chart);
    }
}

TEST_CASE("pentagon scheme pinned values") {
    Polygon pent = Polygon::preset("pentagon");
    CoefficientSet ones = CoefficientSet::ones(pent);
    QuadratureScheme scheme = build_scheme(pent, ones, 2.0 / 60.0, 2.0);
    CHECK(scheme.nodes.size() == 3135);
    long long chart_sum = 0;
    for (const auto& node : scheme.nodes) chart_sum += node.chart;
    CHECK(chart_sum == 3346);  // regression pin
}

TEST_CASE("default spacing") {
    CHECK(default_spacing(Polygon::preset("hexagon")) == doctest::Approx(0.1).epsilon(1e-15));
    CHECK(default_spacing(Polygon::preset("pentagon")) ==
          doctest::Approx(2.0 / 60.0).epsilon(1e-15));
    CHECK(default_spacing(square_polygon(1)) == doctest::Approx(1.0 / 60.0).epsilon(1e-15));
}

TEST_CASE("empty grid") {
    Polygon sq = square_polygon(1);
    CoefficientSet ones = CoefficientSet::ones(sq);
    try {
        build_scheme(sq, ones, 5.0, 2.0);
        FAIL_CHECK("expected an error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::EmptyGrid);
    }
}

TEST_CASE("area integrals") {
    // hexagon at default spacing
    Polygon hex = Polygon::preset("hexagon");
    CoefficientSet hones = CoefficientSet::ones(hex);
    QuadratureScheme hs = build_scheme(hex, hones, 0.1, 2.0);
    std::vector<double> f(hs.nodes.size(), 1.0);
    double area = integrate(hs, hones, f);
    CHECK(std::abs(area - 27.0) / 27.0 <= 1e-4);

    // unit square to 1e-5
    Polygon sq = square_polygon(1);
    CoefficientSet sones = binomial_coefficients(sq);
    QuadratureScheme ss = build_scheme(sq, sones, 0.005, 2.0);
    std::vector<double> fs(ss.nodes.size(), 1.0);
    CHECK(std::abs(integrate(ss, sones, fs) - 1.0) <= 1e-5);

    // constant-curvature integrand
    QuadratureScheme sc = build_scheme(sq, sones, 0.01, 2.0);
    auto samples = sample_all(sc, sones, extremal_affine(sq));
    std::vector<double> s_values(samples.size());
    for (size_t i = 0; i < samples.size(); ++i) s_values[i] = samples[i].S;
    CHECK(std::abs(integrate(sc, sones, s_values) - 4.0) / 4.0 <= 1e-4);
}

TEST_CASE("average scalar") {
    Polygon sq = square_polygon(1);
    CoefficientSet sones = CoefficientSet::ones(sq);
    QuadratureScheme ss = build_scheme(sq, sones, 0.02, 2.0);
    CHECK(average_scalar(ss, sones) == doctest::Approx(4.0).epsilon(1e-10));

    Polygon tri = triangle_polygon(1);
    CoefficientSet tones = CoefficientSet::ones(tri);
    QuadratureScheme ts = build_scheme(tri, tones, 1.0 / 60.0, 2.0);
    CHECK(average_scalar(ts, tones) == doctest::Approx(6.0).epsilon(1e-10));

    // boundary-mass identity holds for arbitrary coefficients
    Polygon hex = Polygon::preset("hexagon");
    CoefficientSet rnd = normalize(random_coefficients(hex, 15, 0.5));
    QuadratureScheme hs = build_scheme(hex, rnd, 0.1, 2.0);
    CHECK(average_scalar(hs, rnd) == doctest::Approx(2.0 / 3.0).epsilon(2e-3));

    // affine twists do not move the average
    std::vector<double> twisted(rnd.values().begin(), rnd.values().end());
    const auto& nus = rnd.exponents();
    for (size_t i = 0; i < twisted.size(); ++i)
        twisted[i] *= std::exp(0.8 - 0.31 * nus[i].x + 0.17 * nus[i].y);
    CoefficientSet tw = CoefficientSet::from_values(hex, twisted);
    CHECK(average_scalar(hs, tw) == doctest::Approx(average_scalar(hs, rnd)).epsilon(1e-9));
}

TEST_CASE("curvature integral identity") {
    Polygon hex = Polygon::preset("hexagon");
    CoefficientSet hones = CoefficientSet::ones(hex);
    QuadratureScheme hs = build_scheme(hex, hones, 0.1, 2.0);
    CHECK(std::abs(chern_weil_check(hs, hones)) <= 1e-3);

    Polygon tri = triangle_polygon(2);
    CoefficientSet tm = multinomial_coefficients(tri);
    QuadratureScheme ts = build_scheme(tri, tm, 2.0 / 60.0, 2.0);
    CHECK(std::abs(chern_weil_check(ts, tm)) <= 1e-3);

    Polygon oct = Polygon::preset("octagon");
    CoefficientSet oones = CoefficientSet::ones(oct);
    QuadratureScheme os = build_scheme(oct, oones, 0.1, 2.0);
    CHECK(std::abs(chern_weil_check(os, oones)) <= 1e-3);
}

TEST_CASE("integration is deterministic across execution modes") {
    Polygon hex = Polygon::preset("hexagon");
    CoefficientSet rnd = normalize(random_coefficients(hex, 33, 0.6));
    QuadratureScheme hs = build_scheme(hex, rnd, 0.1, 2.0);

    std::vector<double> f(hs.nodes.size());
    std::uint64_t state = 4;
    for (double& v : f) v = 1.0 + 0.25 * uniform_pm1(state);

    double serial = integrate(hs, rnd, f, Exec::serial);
    double parallel = integrate(hs, rnd, f, Exec::parallel);
    CHECK(serial == parallel);

    for (int threads : {1, 2, 4, 8}) {
        omp_set_num_threads(threads);
        CHECK(integrate(hs, rnd, f, Exec::parallel) == serial);
    }
    omp_set_num_threads(omp_get_num_procs());

    double avg1 = average_scalar(hs, rnd, Exec::serial);
    double avg2 = average_scalar(hs, rnd, Exec::parallel);
    CHECK(avg1 == avg2);
}

TEST_CASE("halving the spacing cuts the area error") {
    Polygon sq = square_polygon(1);
    CoefficientSet sones = CoefficientSet::ones(sq);
    auto area_err = [&](double h) {
        QuadratureScheme s = build_scheme(sq, sones, h, 2.0);
        std::vector<double> f(s.nodes.size(), 1.0);
        return std::abs(integrate(s, sones, f) - 1.0);
    };
    CHECK(area_err(0.05) / area_err(0.025) >= 2.0);

    Polygon hex = Polygon::preset("hexagon");
    CoefficientSet hones = CoefficientSet::ones(hex);
    auto hex_err = [&](double h) {
        QuadratureScheme s = build_scheme(hex, hones, h, 2.0);
        std::vector<double> f(s.nodes.size(), 1.0);
        return std::abs(integrate(s, hones, f) - 27.0);
    };
    CHECK(hex_err(0.2) / hex_err(0.1) >= 2.0);
}

TEST_CASE("sample sweep") {
    Polygon hex = Polygon::preset("hexagon");
    CoefficientSet hones = CoefficientSet::ones(hex);
    QuadratureScheme hs = build_scheme(hex, hones, 0.2, 2.0);
    auto samples = sample_all(hs, hones, extremal_affine(hex));
    REQUIRE(samples.size() == hs.nodes.size());
    for (size_t i = 0; i < samples.size(); i += 41) {
        CHECK(samples[i].s_hat ==
              doctest::Approx(samples[i].S - 2.0 / 3.0).epsilon(1e-12));
        CHECK(samples[i].riem_sq >= samples[i].S * samples[i].S / 3.0 - 1e-12);
        for (const Edge& e : hex.edges()) {
            double margin =
                e.inward_normal.to_double().dot(samples[i].x) - static_cast<double>(e.support);
            CHECK(margin >= -1e-9);
        }
    }
}
