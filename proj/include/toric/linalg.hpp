#pragma once

#include <array>
#include <cmath>
#include <cstdlib>

#include "toric/errors.hpp"

namespace toric {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    Vec2 operator-() const { return {-x, -y}; }
    double dot(Vec2 o) const { return x * o.x + y * o.y; }
    double norm() const { return std::hypot(x, y); }
    double max_abs() const { return std::max(std::abs(x), std::abs(y)); }
};

inline Vec2 operator*(double s, Vec2 v) { return v * s; }

struct Vec2i {
    int x = 0;
    int y = 0;

    bool operator==(const Vec2i&) const = default;
    Vec2i operator+(Vec2i o) const { return {x + o.x, y + o.y}; }
    Vec2i operator-(Vec2i o) const { return {x - o.x, y - o.y}; }
    Vec2i operator-() const { return {-x, -y}; }
    long long dot(Vec2i o) const {
        return static_cast<long long>(x) * o.x + static_cast<long long>(y) * o.y;
    }
    Vec2 to_double() const { return {static_cast<double>(x), static_cast<double>(y)}; }
};

// lexicographic order, used for all deterministic lattice-point layouts
inline bool lex_less(Vec2i a, Vec2i b) {
    return a.x != b.x ? a.x < b.x : a.y < b.y;
}

// 2x2 integer matrix, column-major meaning: columns are images of e1, e2
struct Mat2i {
    // entries m[row][col]
    int m[2][2] = {{0, 0}, {0, 0}};

    static Mat2i identity() { return {{{1, 0}, {0, 1}}}; }

    long long det() const {
        return static_cast<long long>(m[0][0]) * m[1][1] -
               static_cast<long long>(m[0][1]) * m[1][0];
    }

    Vec2i apply(Vec2i v) const {
        return {m[0][0] * v.x + m[0][1] * v.y, m[1][0] * v.x + m[1][1] * v.y};
    }

    Vec2 apply(Vec2 v) const {
        return {m[0][0] * v.x + m[0][1] * v.y, m[1][0] * v.x + m[1][1] * v.y};
    }

    // t' = M^T t, used for chart coordinate changes
    Vec2 apply_transpose(Vec2 v) const {
        return {m[0][0] * v.x + m[1][0] * v.y, m[0][1] * v.x + m[1][1] * v.y};
    }

    Mat2i operator*(const Mat2i& o) const {
        Mat2i r;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                r.m[i][j] = m[i][0] * o.m[0][j] + m[i][1] * o.m[1][j];
        return r;
    }

    bool operator==(const Mat2i&) const = default;

    // exact inverse; requires |det| == 1
    Mat2i unimodular_inverse() const {
        long long d = det();
        if (d != 1 && d != -1)
            fail(ErrorCode::SingularSystem, "integer matrix is not unimodular");
        int s = static_cast<int>(d);
        return {{{s * m[1][1], -s * m[0][1]}, {-s * m[1][0], s * m[0][0]}}};
    }
};

struct Mat2 {
    double m[2][2] = {{0, 0}, {0, 0}};

    static Mat2 identity() { return {{{1, 0}, {0, 1}}}; }

    double det() const { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }

    Vec2 apply(Vec2 v) const {
        return {m[0][0] * v.x + m[0][1] * v.y, m[1][0] * v.x + m[1][1] * v.y};
    }

    Mat2 operator*(const Mat2& o) const {
        Mat2 r;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                r.m[i][j] = m[i][0] * o.m[0][j] + m[i][1] * o.m[1][j];
        return r;
    }

    Mat2 transpose() const { return {{{m[0][0], m[1][0]}, {m[0][1], m[1][1]}}}; }
};

// symmetric 2x2 tensor
struct Sym2 {
    double s11 = 0.0;
    double s12 = 0.0;
    double s22 = 0.0;

    double det() const { return s11 * s22 - s12 * s12; }
    double trace() const { return s11 + s22; }

    Sym2 inverse() const {
        double d = det();
        if (d == 0.0 || !std::isfinite(d))
            fail(ErrorCode::SingularSystem, "singular symmetric 2x2 matrix");
        return {s22 / d, -s12 / d, s11 / d};
    }

    Vec2 apply(Vec2 v) const { return {s11 * v.x + s12 * v.y, s12 * v.x + s22 * v.y}; }

    Sym2 operator+(Sym2 o) const { return {s11 + o.s11, s12 + o.s12, s22 + o.s22}; }
    Sym2 operator-(Sym2 o) const { return {s11 - o.s11, s12 - o.s12, s22 - o.s22}; }
    Sym2 operator*(double c) const { return {s11 * c, s12 * c, s22 * c}; }

    Mat2 to_mat() const { return {{{s11, s12}, {s12, s22}}}; }
};

// A B A^T for symmetric B
inline Sym2 congruence(const Mat2& a, const Sym2& b) {
    Mat2 ab = a * b.to_mat();
    Mat2 r = ab * a.transpose();
    return {r.m[0][0], 0.5 * (r.m[0][1] + r.m[1][0]), r.m[1][1]};
}

inline Sym2 congruence(const Mat2i& a, const Sym2& b) {
    Mat2 ad = {{{static_cast<double>(a.m[0][0]), static_cast<double>(a.m[0][1])},
                {static_cast<double>(a.m[1][0]), static_cast<double>(a.m[1][1])}}};
    return congruence(ad, b);
}

// inner product of symmetric tensors with both indices raised by g_inv:
// <a, b>_g = a_ij b_kl g^ik g^jl = tr(g^-1 a g^-1 b)
inline double sym2_inner(const Sym2& a, const Sym2& b, const Sym2& g_inv) {
    Mat2 ga = g_inv.to_mat() * a.to_mat();
    Mat2 gb = g_inv.to_mat() * b.to_mat();
    Mat2 prod = ga * gb;
    return prod.m[0][0] + prod.m[1][1];
}

// lower-triangular Cholesky factor: s = R R^T
struct Chol2 {
    double r11 = 0.0;
    double r21 = 0.0;
    double r22 = 0.0;
};

inline Chol2 cholesky(const Sym2& s) {
    if (!(s.s11 > 0.0))
        fail(ErrorCode::NonFiniteResult, "matrix not positive definite in cholesky");
    double r11 = std::sqrt(s.s11);
    double r21 = s.s12 / r11;
    double rest = s.s22 - r21 * r21;
    if (!(rest > 0.0))
        fail(ErrorCode::NonFiniteResult, "matrix not positive definite in cholesky");
    return {r11, r21, std::sqrt(rest)};
}

// solve a 3x3 linear system with partial pivoting
inline std::array<double, 3> solve3(std::array<std::array<double, 3>, 3> a,
                                    std::array<double, 3> b) {
    double scale = 0.0;
    for (auto& row : a)
        for (double v : row) scale = std::max(scale, std::abs(v));
    if (scale == 0.0) fail(ErrorCode::SingularSystem, "zero 3x3 system");

    for (int col = 0; col < 3; ++col) {
        int pivot = col;
        for (int r = col + 1; r < 3; ++r)
            if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
        if (std::abs(a[pivot][col]) < 1e-14 * scale)
            fail(ErrorCode::SingularSystem, "singular 3x3 system");
        std::swap(a[col], a[pivot]);
        std::swap(b[col], b[pivot]);
        for (int r = col + 1; r < 3; ++r) {
            double f = a[r][col] / a[col][col];
            for (int c = col; c < 3; ++c) a[r][c] -= f * a[col][c];
            b[r] -= f * b[col];
        }
    }
    std::array<double, 3> x{};
    for (int r = 2; r >= 0; --r) {
        double acc = b[r];
        for (int c = r + 1; c < 3; ++c) acc -= a[r][c] * x[c];
        x[r] = acc / a[r][r];
    }
    return x;
}

// portable deterministic uniform doubles in [-1, 1), independent of libstdc++
// distribution internals
inline double uniform_pm1(std::uint64_t& state) {
    // splitmix64 step
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    z = z ^ (z >> 31);
    return 2.0 * (static_cast<double>(z >> 11) * 0x1.0p-53) - 1.0;
}

}  // namespace toric
