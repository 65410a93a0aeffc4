#include "toric/coefficients.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "toric/errors.hpp"

namespace toric {

CoefficientSet::CoefficientSet(Polygon poly, std::vector<Vec2i> exponents,
                               std::vector<double> values)
    : poly_(std::move(poly)), exponents_(std::move(exponents)), values_(std::move(values)) {}

CoefficientSet CoefficientSet::ones(const Polygon& poly) {
    std::vector<Vec2i> nus = lattice_points(poly);
    std::vector<double> values(nus.size(), 1.0);
    return CoefficientSet(poly, std::move(nus), std::move(values));
}

CoefficientSet CoefficientSet::from_values(const Polygon& poly, std::vector<double> values) {
    std::vector<Vec2i> nus = lattice_points(poly);
    if (values.size() != nus.size())
        fail(ErrorCode::ConfigError, "coefficient count does not match lattice point count");
    for (double v : values)
        if (!(v > 0.0) || !std::isfinite(v))
            fail(ErrorCode::ConfigError, "coefficients must be positive and finite");
    return CoefficientSet(poly, std::move(nus), std::move(values));
}

CoefficientSet CoefficientSet::from_log_values(const Polygon& poly,
                                               const std::vector<double>& log_values) {
    std::vector<double> values(log_values.size());
    std::transform(log_values.begin(), log_values.end(), values.begin(),
                   [](double l) { return std::exp(l); });
    return from_values(poly, std::move(values));
}

bool CoefficientSet::contains(Vec2i nu, size_t* index) const {
    auto it = std::lower_bound(exponents_.begin(), exponents_.end(), nu, lex_less);
    if (it == exponents_.end() || !(*it == nu)) return false;
    if (index) *index = static_cast<size_t>(it - exponents_.begin());
    return true;
}

size_t CoefficientSet::index_of(Vec2i nu) const {
    size_t idx = 0;
    if (!contains(nu, &idx)) fail(ErrorCode::ConfigError, "exponent is not a lattice point of the polygon");
    return idx;
}

bool CoefficientSet::is_normalized(double tol) const {
    Vec2 p = poly_.centroid();
    double s0 = 0, s1 = 0, s2 = 0, scale = 1;
    for (size_t i = 0; i < values_.size(); ++i) {
        double l = std::log(values_[i]);
        s0 += l;
        s1 += (exponents_[i].x - p.x) * l;
        s2 += (exponents_[i].y - p.y) * l;
        scale += std::abs(l);
    }
    double bound = tol * scale;
    return std::abs(s0) <= bound && std::abs(s1) <= bound && std::abs(s2) <= bound;
}

CoefficientSet normalize(const CoefficientSet& coeffs) {
    const auto& nus = coeffs.exponents();
    const size_t n = coeffs.size();
    Vec2 p = coeffs.polygon().centroid();

    std::vector<double> logs(n);
    for (size_t i = 0; i < n; ++i) logs[i] = std::log(coeffs.value(i));

    // least-squares projection onto span{1, nu1-p1, nu2-p2} over the lattice points
    std::array<std::array<double, 3>, 3> g{};
    std::array<double, 3> rhs{};
    for (size_t i = 0; i < n; ++i) {
        double b[3] = {1.0, nus[i].x - p.x, nus[i].y - p.y};
        for (int r = 0; r < 3; ++r) {
            rhs[r] += b[r] * logs[i];
            for (int c = 0; c < 3; ++c) g[r][c] += b[r] * b[c];
        }
    }

    std::array<double, 3> coef{};
    try {
        coef = solve3(g, rhs);
    } catch (const Error&) {
        fail(ErrorCode::DegenerateLattice, "lattice points do not span an affine frame");
    }

    for (size_t i = 0; i < n; ++i)
        logs[i] -= coef[0] + coef[1] * (nus[i].x - p.x) + coef[2] * (nus[i].y - p.y);
    return CoefficientSet::from_log_values(coeffs.polygon(), logs);
}

namespace {

long long binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    long long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

bool matches_vertices(const Polygon& poly, const std::vector<Vec2i>& expected) {
    if (poly.vertex_count() != expected.size()) return false;
    const auto& vs = poly.vertices();
    return std::is_permutation(vs.begin(), vs.end(), expected.begin(),
                               [](Vec2i a, Vec2i b) { return a == b; });
}

}  // namespace

CoefficientSet binomial_coefficients(const Polygon& poly) {
    long long m1 = 0, m2 = 0;
    for (Vec2i v : poly.vertices()) {
        m1 = std::max<long long>(m1, v.x);
        m2 = std::max<long long>(m2, v.y);
    }
    std::vector<Vec2i> corners = {{0, 0},
                                  {static_cast<int>(m1), 0},
                                  {static_cast<int>(m1), static_cast<int>(m2)},
                                  {0, static_cast<int>(m2)}};
    if (!matches_vertices(poly, corners))
        fail(ErrorCode::ConfigError, "binomial coefficients require a coordinate rectangle");

    std::vector<Vec2i> nus = lattice_points(poly);
    std::vector<double> values;
    values.reserve(nus.size());
    for (Vec2i nu : nus)
        values.push_back(static_cast<double>(binomial(static_cast<int>(m1), nu.x) *
                                             binomial(static_cast<int>(m2), nu.y)));
    return CoefficientSet::from_values(poly, std::move(values));
}

CoefficientSet multinomial_coefficients(const Polygon& poly) {
    int k = static_cast<int>(poly.k());
    std::vector<Vec2i> corners = {{0, 0}, {k, 0}, {0, k}};
    if (!matches_vertices(poly, corners))
        fail(ErrorCode::ConfigError, "multinomial coefficients require the standard right triangle");

    std::vector<Vec2i> nus = lattice_points(poly);
    std::vector<double> values;
    values.reserve(nus.size());
    for (Vec2i nu : nus) {
        // k!/(nu1! nu2! (k-nu1-nu2)!) = C(k, nu1) * C(k-nu1, nu2)
        values.push_back(static_cast<double>(binomial(k, nu.x) * binomial(k - nu.x, nu.y)));
    }
    return CoefficientSet::from_values(poly, std::move(values));
}

CoefficientSet random_coefficients(const Polygon& poly, std::uint64_t seed, double range) {
    std::vector<Vec2i> nus = lattice_points(poly);
    std::uint64_t state = seed;
    std::vector<double> logs(nus.size());
    for (double& l : logs) l = range * uniform_pm1(state);
    return CoefficientSet::from_log_values(poly, logs);
}

std::vector<std::vector<size_t>> lattice_orbits(const Polygon& poly,
                                                const std::vector<AffineMapZ>& group) {
    CoefficientSet probe = CoefficientSet::ones(poly);
    const auto& nus = probe.exponents();
    const size_t n = nus.size();

    std::vector<size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](size_t i) {
        while (parent[i] != i) i = parent[i] = parent[parent[i]];
        return i;
    };

    for (const AffineMapZ& map : group)
        for (size_t i = 0; i < n; ++i) {
            size_t j = 0;
            if (!probe.contains(map.apply(nus[i]), &j))
                fail(ErrorCode::GroupDoesNotPreserveLattice,
                     "map sends a lattice point outside the polygon");
            size_t ri = find(i), rj = find(j);
            if (ri != rj) parent[std::max(ri, rj)] = std::min(ri, rj);
        }

    std::vector<std::vector<size_t>> orbits;
    std::vector<long long> root_slot(n, -1);
    for (size_t i = 0; i < n; ++i) {
        size_t r = find(i);
        if (root_slot[r] < 0) {
            root_slot[r] = static_cast<long long>(orbits.size());
            orbits.emplace_back();
        }
        orbits[static_cast<size_t>(root_slot[r])].push_back(i);
    }
    return orbits;
}

CoefficientSet apply_symmetry_average(const CoefficientSet& coeffs,
                                      const std::vector<AffineMapZ>& group) {
    return apply_symmetry_average(coeffs, lattice_orbits(coeffs.polygon(), group));
}

CoefficientSet apply_symmetry_average(const CoefficientSet& coeffs,
                                      const std::vector<std::vector<size_t>>& orbits) {
    std::vector<double> logs(coeffs.size());
    for (size_t i = 0; i < coeffs.size(); ++i) logs[i] = std::log(coeffs.value(i));
    for (const auto& orbit : orbits) {
        double mean = 0;
        for (size_t i : orbit) mean += logs[i];
        mean /= static_cast<double>(orbit.size());
        for (size_t i : orbit) logs[i] = mean;
    }
    return CoefficientSet::from_log_values(coeffs.polygon(), logs);
}

}  // namespace toric
