#include "toric/charts.hpp"

#include <algorithm>
#include <limits>

#include "toric/errors.hpp"

namespace toric {

Atlas build_atlas(const Polygon& poly) {
    const auto& vs = poly.vertices();
    const size_t n = vs.size();
    std::vector<Vec2i> nus = lattice_points(poly);

    Atlas atlas;
    atlas.reserve(n);
    for (size_t i = 0; i < n; ++i) {
        Vec2i v = vs[i];
        Vec2i d_out = primitive_direction(vs[(i + 1) % n] - v);
        Vec2i d_prev = primitive_direction(vs[(i + n - 1) % n] - v);

        VertexChart chart;
        chart.vertex = v;
        chart.L_inv = Mat2i{{{d_out.x, d_prev.x}, {d_out.y, d_prev.y}}};
        chart.L = chart.L_inv.unimodular_inverse();
        chart.exponents.reserve(nus.size());
        for (Vec2i nu : nus) chart.exponents.push_back(chart.L.apply(nu - v));
        atlas.push_back(std::move(chart));
    }
    return atlas;
}

Vec2 chart_coords(const VertexChart& chart, Vec2 t_original) {
    return chart.L_inv.apply_transpose(t_original);
}

Vec2 original_coords(const VertexChart& chart, Vec2 t_chart) {
    return chart.L.apply_transpose(t_chart);
}

size_t select_chart(const Atlas& atlas, Vec2 t_original) {
    size_t best = 0;
    double best_reach = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < atlas.size(); ++i) {
        Vec2 tc = chart_coords(atlas[i], t_original);
        double reach = std::max(tc.x, tc.y);
        if (reach < best_reach) {
            best_reach = reach;
            best = i;
        }
    }
    if (!(best_reach <= 2e-9))
        fail(ErrorCode::NoCoveringChart, "point escapes every vertex chart");
    return best;
}

}  // namespace toric
