#pragma once

#include <string>
#include <vector>

#include "toric/linalg.hpp"

namespace toric {

struct Edge {
    int a = 0;  // vertex indices, edge runs a -> b counterclockwise
    int b = 0;
    Vec2i inward_normal;  // primitive; <n, x> - support >= 0 on the polygon
    long long support = 0;
    int lattice_length = 0;
};

// affine lattice map x -> L x + w
struct AffineMapZ {
    Mat2i L;
    Vec2i w;

    Vec2i apply(Vec2i v) const { return L.apply(v) + w; }
    Vec2 apply(Vec2 v) const {
        Vec2 lv = L.apply(v);
        return {lv.x + w.x, lv.y + w.y};
    }
};

struct ExtremalAffine {
    double a0 = 0.0;
    double a1 = 0.0;
    double a2 = 0.0;

    double operator()(Vec2 x) const { return a0 + a1 * x.x + a2 * x.y; }
};

struct RegionMoments {
    double area = 0, mx = 0, my = 0, mxx = 0, mxy = 0, myy = 0;
};

struct GuilleminJet {
    double value = 0.0;
    Vec2 gradient;
    Sym2 hessian;
};

Vec2i primitive_direction(Vec2i d);

class Polygon {
public:
    static Polygon from_vertices(std::vector<Vec2i> vertices, int k);
    static Polygon preset(const std::string& name);

    const std::vector<Vec2i>& vertices() const { return vertices_; }
    const std::vector<Edge>& edges() const { return edges_; }
    int k() const { return k_; }
    size_t vertex_count() const { return vertices_.size(); }
    Vec2 centroid() const { return centroid_; }
    double area() const { return area_; }
    const std::string& name() const { return name_; }

private:
    Polygon() = default;

    std::vector<Vec2i> vertices_;
    std::vector<Edge> edges_;
    int k_ = 0;
    Vec2 centroid_;
    double area_ = 0.0;
    std::string name_;
};

Polygon square_polygon(int m);
Polygon rectangle_polygon(int m1, int m2);
Polygon triangle_polygon(int k);

Polygon scale(const Polygon& poly, int factor);
// rescale to the given bounding size; fails unless the scaled vertices are integral
Polygon scale_to_k(const Polygon& poly, int new_k);

// all lattice points of the closed polygon, lexicographic order
std::vector<Vec2i> lattice_points(const Polygon& poly);

long long boundary_lattice_mass(const Polygon& poly);
RegionMoments region_moments(const Polygon& poly);

// affine A with \int_P A g = \int_dP g (lattice boundary measure) for affine g
ExtremalAffine extremal_affine(const Polygon& poly);

// boundary potential b * sum_r d_r log d_r and its first two derivative levels
GuilleminJet guillemin(const Polygon& poly, double b, Vec2 x);

// all affine lattice maps permuting the vertex set; identity always included
std::vector<AffineMapZ> lattice_symmetries(const Polygon& poly);

}  // namespace toric
