#include "toric/polygon.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace toric {

Vec2i primitive_direction(Vec2i d) {
    int g = std::gcd(std::abs(d.x), std::abs(d.y));
    if (g == 0) fail(ErrorCode::NotConvex, "zero edge direction");
    return {d.x / g, d.y / g};
}

static long long cross(Vec2i a, Vec2i b) {
    return static_cast<long long>(a.x) * b.y - static_cast<long long>(a.y) * b.x;
}

Polygon Polygon::from_vertices(std::vector<Vec2i> vertices, int k) {
    if (k <= 0) fail(ErrorCode::ConfigError, "bounding size must be positive");
    size_t p = vertices.size();
    if (p < 3) fail(ErrorCode::NotConvex, "need at least 3 vertices");

    long long twice_area = 0;
    for (size_t i = 0; i < p; ++i) {
        Vec2i v = vertices[i];
        Vec2i u = vertices[(i + 1) % p];
        twice_area += cross(v, u);
    }
    if (twice_area < 0) fail(ErrorCode::NotCounterclockwise, "vertices listed clockwise");
    if (twice_area == 0) fail(ErrorCode::NotConvex, "degenerate polygon");

    // strict convexity: every turn is a strict left turn (also rules out
    // collinear triples and repeated vertices)
    for (size_t i = 0; i < p; ++i) {
        Vec2i prev = vertices[(i + p - 1) % p];
        Vec2i cur = vertices[i];
        Vec2i nxt = vertices[(i + 1) % p];
        if (cross(cur - prev, nxt - cur) <= 0)
            fail(ErrorCode::NotConvex, "not strictly convex at vertex " + std::to_string(i));
    }

    for (Vec2i v : vertices) {
        if (v.x < 0 || v.y < 0 || v.x > k || v.y > k)
            fail(ErrorCode::ExceedsBoundingSquare,
                 "vertex outside the bounding square of side " + std::to_string(k));
    }

    // unimodularity of the primitive edge directions at every vertex
    for (size_t i = 0; i < p; ++i) {
        Vec2i v = vertices[i];
        Vec2i dn = primitive_direction(vertices[(i + 1) % p] - v);
        Vec2i dp = primitive_direction(vertices[(i + p - 1) % p] - v);
        if (std::llabs(cross(dn, dp)) != 1)
            fail(ErrorCode::NotDelzant,
                 "edge directions at vertex " + std::to_string(i) + " are not a lattice basis");
    }

    Polygon poly;
    poly.vertices_ = std::move(vertices);
    poly.k_ = k;
    for (size_t i = 0; i < p; ++i) {
        Vec2i v = poly.vertices_[i];
        Vec2i u = poly.vertices_[(i + 1) % p];
        Vec2i d = u - v;
        int len = std::gcd(std::abs(d.x), std::abs(d.y));
        Vec2i n = primitive_direction({-d.y, d.x});
        Edge e;
        e.a = static_cast<int>(i);
        e.b = static_cast<int>((i + 1) % p);
        e.inward_normal = n;
        e.support = n.dot(v);
        e.lattice_length = len;
        poly.edges_.push_back(e);
    }

    RegionMoments m = region_moments(poly);
    poly.area_ = m.area;
    poly.centroid_ = {m.mx / m.area, m.my / m.area};
    return poly;
}

Polygon Polygon::preset(const std::string& name) {
    Polygon poly;
    if (name == "pentagon") {
        poly = from_vertices({{0, 0}, {2, 0}, {2, 1}, {1, 2}, {0, 2}}, 2);
    } else if (name == "hexagon") {
        poly = from_vertices({{0, 0}, {3, 0}, {6, 3}, {6, 6}, {3, 6}, {0, 3}}, 6);
    } else if (name == "heptagon") {
        poly = from_vertices({{0, 0}, {5, 0}, {5, 1}, {4, 3}, {3, 4}, {1, 5}, {0, 5}}, 5);
    } else if (name == "octagon") {
        poly = from_vertices({{2, 0}, {4, 0}, {6, 2}, {6, 4}, {4, 6}, {2, 6}, {0, 4}, {0, 2}}, 6);
    } else {
        fail(ErrorCode::UnknownPreset, "no preset named '" + name + "'");
    }
    poly.name_ = name;
    return poly;
}

Polygon square_polygon(int m) {
    Polygon poly = Polygon::from_vertices({{0, 0}, {m, 0}, {m, m}, {0, m}}, m);
    return poly;
}

Polygon rectangle_polygon(int m1, int m2) {
    return Polygon::from_vertices({{0, 0}, {m1, 0}, {m1, m2}, {0, m2}}, std::max(m1, m2));
}

Polygon triangle_polygon(int k) {
    return Polygon::from_vertices({{0, 0}, {k, 0}, {0, k}}, k);
}

Polygon scale(const Polygon& poly, int factor) {
    if (factor < 1) fail(ErrorCode::ConfigError, "scale factor must be a positive integer");
    std::vector<Vec2i> scaled;
    scaled.reserve(poly.vertex_count());
    for (Vec2i v : poly.vertices()) scaled.push_back({v.x * factor, v.y * factor});
    return Polygon::from_vertices(std::move(scaled), poly.k() * factor);
}

Polygon scale_to_k(const Polygon& poly, int new_k) {
    if (new_k < 1) fail(ErrorCode::ConfigError, "target bounding size must be positive");
    int k = poly.k();
    std::vector<Vec2i> scaled;
    scaled.reserve(poly.vertex_count());
    for (Vec2i v : poly.vertices()) {
        long long sx = static_cast<long long>(v.x) * new_k;
        long long sy = static_cast<long long>(v.y) * new_k;
        if (sx % k != 0 || sy % k != 0)
            fail(ErrorCode::ConfigError,
                 "rescaling to k=" + std::to_string(new_k) + " gives non-integral vertices");
        scaled.push_back({static_cast<int>(sx / k), static_cast<int>(sy / k)});
    }
    return Polygon::from_vertices(std::move(scaled), new_k);
}

std::vector<Vec2i> lattice_points(const Polygon& poly) {
    std::vector<Vec2i> pts;
    for (int x = 0; x <= poly.k(); ++x) {
        for (int y = 0; y <= poly.k(); ++y) {
            Vec2i nu{x, y};
            bool inside = true;
            for (const Edge& e : poly.edges()) {
                if (e.inward_normal.dot(nu) < e.support) {
                    inside = false;
                    break;
                }
            }
            if (inside) pts.push_back(nu);
        }
    }
    return pts;
}

long long boundary_lattice_mass(const Polygon& poly) {
    long long total = 0;
    for (const Edge& e : poly.edges()) total += e.lattice_length;
    return total;
}

RegionMoments region_moments(const Polygon& poly) {
    RegionMoments m;
    size_t p = poly.vertex_count();
    for (size_t i = 0; i < p; ++i) {
        Vec2 v = poly.vertices()[i].to_double();
        Vec2 u = poly.vertices()[(i + 1) % p].to_double();
        double c = v.x * u.y - u.x * v.y;
        m.area += c / 2.0;
        m.mx += (v.x + u.x) * c / 6.0;
        m.my += (v.y + u.y) * c / 6.0;
        m.mxx += (v.x * v.x + v.x * u.x + u.x * u.x) * c / 12.0;
        m.myy += (v.y * v.y + v.y * u.y + u.y * u.y) * c / 12.0;
        m.mxy += (2 * v.x * v.y + v.x * u.y + u.x * v.y + 2 * u.x * u.y) * c / 24.0;
    }
    return m;
}

ExtremalAffine extremal_affine(const Polygon& poly) {
    RegionMoments m = region_moments(poly);
    std::array<std::array<double, 3>, 3> gram = {{{m.area, m.mx, m.my},
                                                  {m.mx, m.mxx, m.mxy},
                                                  {m.my, m.mxy, m.myy}}};
    std::array<double, 3> rhs{};
    for (const Edge& e : poly.edges()) {
        Vec2 v = poly.vertices()[e.a].to_double();
        Vec2 u = poly.vertices()[e.b].to_double();
        double len = static_cast<double>(e.lattice_length);
        rhs[0] += len;
        rhs[1] += len * 0.5 * (v.x + u.x);
        rhs[2] += len * 0.5 * (v.y + u.y);
    }
    std::array<double, 3> sol = solve3(gram, rhs);
    return {sol[0], sol[1], sol[2]};
}

GuilleminJet guillemin(const Polygon& poly, double b, Vec2 x) {
    if (!(b > 0)) fail(ErrorCode::ConfigError, "boundary potential factor must be positive");
    GuilleminJet jet;
    for (const Edge& e : poly.edges()) {
        Vec2 n = e.inward_normal.to_double();
        double delta = n.dot(x) - static_cast<double>(e.support);
        if (delta <= 0.0)
            fail(ErrorCode::OnBoundary, "point not strictly inside the polygon");
        double ld = std::log(delta);
        jet.value += b * delta * ld;
        jet.gradient = jet.gradient + n * (b * (1.0 + ld));
        double f = b / delta;
        jet.hessian.s11 += f * n.x * n.x;
        jet.hessian.s12 += f * n.x * n.y;
        jet.hessian.s22 += f * n.y * n.y;
    }
    return jet;
}

std::vector<AffineMapZ> lattice_symmetries(const Polygon& poly) {
    const auto& v = poly.vertices();
    int p = static_cast<int>(v.size());
    std::vector<AffineMapZ> group;

    Vec2i e0 = v[1] - v[0];
    Vec2i e1 = v[2] - v[1];
    long long de = cross(e0, e1);  // nonzero by strict convexity

    for (int offset = 0; offset < p; ++offset) {
        for (int sign : {1, -1}) {
            auto image = [&](int i) { return v[((offset + sign * i) % p + p) % p]; };
            Vec2i f0 = image(1) - image(0);
            Vec2i f1 = image(2) - image(1);
            // L [e0 e1] = [f0 f1]  =>  L = [f0 f1] adj([e0 e1]) / det
            long long n00 = static_cast<long long>(f0.x) * e1.y - static_cast<long long>(f1.x) * e0.y;
            long long n01 = static_cast<long long>(f1.x) * e0.x - static_cast<long long>(f0.x) * e1.x;
            long long n10 = static_cast<long long>(f0.y) * e1.y - static_cast<long long>(f1.y) * e0.y;
            long long n11 = static_cast<long long>(f1.y) * e0.x - static_cast<long long>(f0.y) * e1.x;
            if (n00 % de || n01 % de || n10 % de || n11 % de) continue;
            Mat2i L{{{static_cast<int>(n00 / de), static_cast<int>(n01 / de)},
                     {static_cast<int>(n10 / de), static_cast<int>(n11 / de)}}};
            if (std::llabs(L.det()) != 1) continue;
            Vec2i w = image(0) - L.apply(v[0]);
            bool ok = true;
            for (int i = 0; i < p && ok; ++i)
                ok = (L.apply(v[i]) + w == image(i));
            if (ok) group.push_back({L, w});
        }
    }
    return group;
}

}  // namespace toric
