#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "toric/charts.hpp"
#include "toric/coefficients.hpp"
#include "toric/polygon.hpp"
#include "toric/potential.hpp"

using namespace toric;

#define CHECK_FAILS_WITH(code_, ...)                \
    do {                                            \
        try {                                       \
            __VA_ARGS__;                            \
            FAIL_CHECK("expected an error");        \
        } catch (const Error& e) {                  \
            CHECK(e.code() == code_);               \
        }                                           \
    } while (0)

TEST_CASE("coefficient set basics") {
    Polygon hex = Polygon::preset("hexagon");
    CoefficientSet ones = CoefficientSet::ones(hex);
    CHECK(ones.size() == 37);
    CHECK(ones.value(0) == 1.0);
    CHECK(ones.exponents()[0] == Vec2i{0, 0});
    CHECK(ones.index_of({3, 3}) < ones.size());
    CHECK(ones.exponents()[ones.index_of({3, 3})] == Vec2i{3, 3});
}

TEST_CASE("binomial and multinomial families") {
    CoefficientSet b = binomial_coefficients(square_polygon(2));
    CHECK(b.value(b.index_of({1, 1})) == 4.0);   // C(2,1)^2
    CHECK(b.value(b.index_of({0, 0})) == 1.0);
    CHECK(b.value(b.index_of({2, 1})) == 2.0);

    CoefficientSet r = binomial_coefficients(rectangle_polygon(3, 1));
    CHECK(r.value(r.index_of({1, 0})) == 3.0);
    CHECK(r.value(r.index_of({2, 1})) == 3.0);

    CoefficientSet m = multinomial_coefficients(triangle_polygon(3));
    CHECK(m.value(m.index_of({1, 1})) == 6.0);   // 3!/(1!1!1!)
    CHECK(m.value(m.index_of({0, 0})) == 1.0);
    CHECK(m.value(m.index_of({1, 0})) == 3.0);
    CHECK(m.value(m.index_of({3, 0})) == 1.0);
}

TEST_CASE("normalization") {
    Polygon hex = Polygon::preset("hexagon");

    CoefficientSet sevens = CoefficientSet::from_values(
        hex, std::vector<double>(37, 7.0));
    CoefficientSet n = normalize(sevens);
    for (size_t i = 0; i < n.size(); ++i) CHECK(n.value(i) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(n.is_normalized());

    // idempotence
    CoefficientSet r = random_coefficients(hex, 42, 1.0);
    CoefficientSet n1 = normalize(r);
    CoefficientSet n2 = normalize(n1);
    CHECK(n1.is_normalized());
    for (size_t i = 0; i < n1.size(); ++i)
        CHECK(n1.value(i) == doctest::Approx(n2.value(i)).epsilon(1e-13));

    // exact inverse of an affine twist
    std::vector<double> twisted(n1.values().begin(), n1.values().end());
    for (size_t i = 0; i < twisted.size(); ++i) {
        Vec2i nu = n1.exponents()[i];
        twisted[i] *= std::exp(3.0 + 2.0 * nu.x - 0.5 * nu.y);
    }
    CoefficientSet untwisted = normalize(CoefficientSet::from_values(hex, twisted));
    for (size_t i = 0; i < n1.size(); ++i)
        CHECK(untwisted.value(i) == doctest::Approx(n1.value(i)).epsilon(1e-11));
}

TEST_CASE("symmetry orbit averaging") {
    Polygon hex = Polygon::preset("hexagon");
    auto group = lattice_symmetries(hex);
    auto orbits = lattice_orbits(hex, group);
    CHECK(orbits.size() == 6);  // 37 points in 6 orbits

    size_t total = 0;
    for (const auto& o : orbits) total += o.size();
    CHECK(total == 37);

    CoefficientSet r = random_coefficients(hex, 7, 1.0);
    CoefficientSet avg = apply_symmetry_average(r, group);
    std::set<long long> distinct;
    for (double v : avg.values()) distinct.insert(llround(std::log(v) * 1e12));
    CHECK(distinct.size() == 6);

    CoefficientSet again = apply_symmetry_average(avg, group);
    for (size_t i = 0; i < avg.size(); ++i)
        CHECK(avg.value(i) == doctest::Approx(again.value(i)).epsilon(1e-14));

    // identity-only group changes nothing
    CoefficientSet same = apply_symmetry_average(r, {AffineMapZ{Mat2i::identity(), {0, 0}}});
    for (size_t i = 0; i < r.size(); ++i) CHECK(same.value(i) == r.value(i));

    // a translation is not a symmetry of the lattice-point set
    CHECK_FAILS_WITH(ErrorCode::GroupDoesNotPreserveLattice,
                     apply_symmetry_average(r, {AffineMapZ{Mat2i::identity(), {1, 0}}}));
}

TEST_CASE("vertex chart atlas") {
    Polygon sq = square_polygon(1);
    Atlas atlas = build_atlas(sq);
    REQUIRE(atlas.size() == 4);

    CHECK(atlas[0].L == Mat2i::identity());
    for (size_t i = 0; i < 4; ++i) CHECK(std::llabs(atlas[i].L.det()) == 1);

    // chart at (1,1) maps x to (1-x1, 1-x2)
    const VertexChart& c11 = atlas[2];
    CHECK(c11.vertex == Vec2i{1, 1});
    CHECK(c11.L.apply(Vec2i{-1, 0}) == Vec2i{1, 0});  // sigma(0,1)-(1,1) ... edge direction
    Vec2i img = c11.L.apply(Vec2i{0, 0} - c11.vertex);
    CHECK(img == Vec2i{1, 1});

    // hexagon vertex (3,0): L sends (1,1)->(1,0) and (-1,0)->(0,1)
    Polygon hex = Polygon::preset("hexagon");
    Atlas hatlas = build_atlas(hex);
    const VertexChart& c = hatlas[1];
    CHECK(c.vertex == Vec2i{3, 0});
    CHECK(c.L.apply(Vec2i{1, 1}) == Vec2i{1, 0});
    CHECK(c.L.apply(Vec2i{-1, 0}) == Vec2i{0, 1});

    // transformed exponents are nonnegative for every chart of every preset
    for (const char* name : {"pentagon", "hexagon", "heptagon", "octagon"}) {
        Polygon poly = Polygon::preset(name);
        Atlas a = build_atlas(poly);
        for (const auto& chart : a)
            for (Vec2i nu : chart.exponents) {
                CHECK(nu.x >= 0);
                CHECK(nu.y >= 0);
            }
    }
}

TEST_CASE("chart coordinate changes invert each other") {
    Polygon hex = Polygon::preset("hexagon");
    Atlas atlas = build_atlas(hex);
    Vec2 t{0.37, -1.21};
    for (const auto& chart : atlas) {
        Vec2 tc = chart_coords(chart, t);
        Vec2 back = original_coords(chart, tc);
        CHECK(back.x == doctest::Approx(t.x).epsilon(1e-14));
        CHECK(back.y == doctest::Approx(t.y).epsilon(1e-14));
    }
}

TEST_CASE("chart selection") {
    Polygon sq = square_polygon(1);
    Atlas atlas = build_atlas(sq);

    // symmetric point: all charts tie, lowest index wins
    CHECK(select_chart(atlas, Vec2{0, 0}) == 0);

    // moment point (0.9, 0.5) for the binomial metric: t = (log 9, 0)
    size_t idx = select_chart(atlas, Vec2{std::log(9.0), 0.0});
    CHECK(idx == 1);  // vertex (1,0)

    // pentagon centroid maps to a covering chart
    Polygon pent = Polygon::preset("pentagon");
    Atlas patlas = build_atlas(pent);
    Vec2 t0 = guillemin(pent, 2.0, pent.centroid()).gradient;
    size_t pidx = select_chart(patlas, t0);
    Vec2 tc = chart_coords(patlas[pidx], t0);
    CHECK(std::max(tc.x, tc.y) <= 2e-9);
}

TEST_CASE("jets of the free potential on the unit square") {
    Polygon sq = square_polygon(1);
    Atlas atlas = build_atlas(sq);
    CoefficientSet ones = CoefficientSet::ones(sq);

    PotentialJet jet = eval_jet(ones, atlas[0], Vec2{0, 0}, 0.0);
    CHECK(jet.log_partition == doctest::Approx(std::log(4.0)).epsilon(1e-15));
    CHECK(jet.d1.x == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(jet.d2.s11 == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(jet.d2.s22 == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(std::abs(jet.d2.s12) < 1e-16);
    CHECK(std::abs(jet.d3[0]) < 1e-16);
    CHECK(jet.d4[0] == doctest::Approx(-0.125).epsilon(1e-13));
    CHECK(jet.d4[2] == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(jet.x.x == doctest::Approx(0.5).epsilon(1e-15));

    // vertex limit
    PotentialJet deep = eval_jet(ones, atlas[0], Vec2{-80.0, 0.0}, 0.0);
    CHECK(std::abs(deep.x.x) < 1e-15);
}

TEST_CASE("jets of the free potential on the unit triangle") {
    Polygon tri = triangle_polygon(1);
    Atlas atlas = build_atlas(tri);
    CoefficientSet ones = CoefficientSet::ones(tri);

    PotentialJet jet = eval_jet(ones, atlas[0], Vec2{0, 0}, 0.0);
    CHECK(jet.d2.s11 == doctest::Approx(2.0 / 9.0).epsilon(1e-14));
    CHECK(jet.d2.s22 == doctest::Approx(2.0 / 9.0).epsilon(1e-14));
    CHECK(jet.d2.s12 == doctest::Approx(-1.0 / 9.0).epsilon(1e-14));
    CHECK(jet.x.x == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(jet.x.y == doctest::Approx(1.0 / 3.0).epsilon(1e-14));

    // inverse hessian really inverts
    double id11 = jet.d2.s11 * jet.d2_inv.s11 + jet.d2.s12 * jet.d2_inv.s12;
    double id12 = jet.d2.s11 * jet.d2_inv.s12 + jet.d2.s12 * jet.d2_inv.s22;
    CHECK(id11 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(id12) < 1e-12);
}

TEST_CASE("jet derivatives agree with finite differences") {
    Polygon pent = Polygon::preset("pentagon");
    Atlas atlas = build_atlas(pent);
    CoefficientSet coeffs = normalize(random_coefficients(pent, 11, 0.7));

    const VertexChart& chart = atlas[0];
    Vec2 t{-0.4, -0.9};
    double h = 1e-5;

    auto jet_at = [&](double dx, double dy) {
        return eval_jet(coeffs, chart, Vec2{t.x + dx, t.y + dy}, 0.0);
    };
    PotentialJet j0 = jet_at(0, 0);

    // d1 vs phi values
    double fd1 = (jet_at(h, 0).log_partition - jet_at(-h, 0).log_partition) / (2 * h);
    CHECK(j0.d1.x == doctest::Approx(fd1).epsilon(1e-8));

    // d2 vs d1
    double fd2 = (jet_at(h, 0).d1.x - jet_at(-h, 0).d1.x) / (2 * h);
    CHECK(j0.d2.s11 == doctest::Approx(fd2).epsilon(1e-7));
    double fd12 = (jet_at(0, h).d1.x - jet_at(0, -h).d1.x) / (2 * h);
    CHECK(j0.d2.s12 == doctest::Approx(fd12).epsilon(1e-7));

    // d3 vs d2
    double fd111 = (jet_at(h, 0).d2.s11 - jet_at(-h, 0).d2.s11) / (2 * h);
    CHECK(j0.d3[0] == doctest::Approx(fd111).epsilon(1e-6));
    double fd112 = (jet_at(0, h).d2.s11 - jet_at(0, -h).d2.s11) / (2 * h);
    CHECK(j0.d3[1] == doctest::Approx(fd112).epsilon(1e-6));

    // d4 vs d3
    double fd1111 = (jet_at(h, 0).d3[0] - jet_at(-h, 0).d3[0]) / (2 * h);
    CHECK(j0.d4[0] == doctest::Approx(fd1111).epsilon(1e-5));
    double fd1122 = (jet_at(0, h).d3[1] - jet_at(0, -h).d3[1]) / (2 * h);
    CHECK(j0.d4[2] == doctest::Approx(fd1122).epsilon(1e-5));
}

TEST_CASE("basis functions") {
    Polygon hex = Polygon::preset("hexagon");
    Atlas atlas = build_atlas(hex);
    CoefficientSet coeffs = normalize(random_coefficients(hex, 3, 0.5));

    // partition of unity at a generic point
    const VertexChart& chart = atlas[2];
    Vec2 tc{-0.8, -0.3};
    double total = 0;
    for (size_t i = 0; i < coeffs.size(); ++i)
        total += coeffs.value(i) * basis_function(coeffs, chart, tc, coeffs.exponents()[i]);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));

    // uniform value at the center of the square model
    Polygon sq = square_polygon(1);
    Atlas satlas = build_atlas(sq);
    CoefficientSet ones = CoefficientSet::ones(sq);
    for (Vec2i nu : ones.exponents())
        CHECK(basis_function(ones, satlas[0], Vec2{0, 0}, nu) == doctest::Approx(0.25).epsilon(1e-14));

    // deep vertex limit concentrates on the vertex exponent
    CoefficientSet hc = normalize(random_coefficients(hex, 5, 0.4));
    const VertexChart& vc = atlas[0];
    double fv = basis_function(hc, vc, Vec2{-40, -40}, vc.vertex);
    CHECK(fv == doctest::Approx(1.0 / hc.value(hc.index_of(vc.vertex))).epsilon(1e-12));
}

TEST_CASE("weights match jets and truncation is benign") {
    Polygon hex = Polygon::preset("hexagon");
    Atlas atlas = build_atlas(hex);
    CoefficientSet coeffs = normalize(random_coefficients(hex, 9, 0.6));

    const VertexChart& chart = atlas[4];
    Vec2 tc{-0.5, -1.7};

    std::vector<double> p(coeffs.size());
    Sym2 cov;
    double logd = eval_weights(coeffs, chart, tc, 0.0, p, &cov);

    PotentialJet jet = eval_jet(coeffs, chart, tc, 0.0);
    CHECK(logd == doctest::Approx(jet.log_partition).epsilon(1e-15));
    CHECK(cov.s11 == doctest::Approx(jet.d2.s11).epsilon(1e-14));
    CHECK(cov.s12 == doctest::Approx(jet.d2.s12).epsilon(1e-14));

    double sum = 0;
    for (double v : p) sum += v;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-14));

    PotentialJet trunc = eval_jet(coeffs, chart, tc, 1e-15);
    CHECK(trunc.d2.s11 == doctest::Approx(jet.d2.s11).epsilon(1e-12));
    CHECK(trunc.log_partition == doctest::Approx(jet.log_partition).epsilon(1e-14));
}

TEST_CASE("moment map stays in the closed polygon") {
    Polygon oct = Polygon::preset("octagon");
    Atlas atlas = build_atlas(oct);
    CoefficientSet coeffs = normalize(random_coefficients(oct, 21, 0.8));

    std::uint64_t rng = 99;
    for (int trial = 0; trial < 50; ++trial) {
        Vec2 t{3.0 * uniform_pm1(rng), 3.0 * uniform_pm1(rng)};
        size_t ci = select_chart(atlas, t);
        PotentialJet jet = eval_jet(coeffs, atlas[ci], chart_coords(atlas[ci], t), 0.0);
        Vec2 x = moment_map(jet);
        for (const Edge& e : oct.edges()) {
            double margin = e.inward_normal.to_double().dot(x) - static_cast<double>(e.support);
            CHECK(margin >= -1e-9);
        }
    }
}
