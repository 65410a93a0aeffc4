#pragma once

#include <cstdint>
#include <vector>

#include "toric/polygon.hpp"

namespace toric {

// Positive weights attached to the lattice points of a polygon, in the
// lexicographic order produced by lattice_points().
class CoefficientSet {
public:
    static CoefficientSet ones(const Polygon& poly);
    static CoefficientSet from_values(const Polygon& poly, std::vector<double> values);
    static CoefficientSet from_log_values(const Polygon& poly, const std::vector<double>& log_values);

    const Polygon& polygon() const { return poly_; }
    const std::vector<Vec2i>& exponents() const { return exponents_; }
    const std::vector<double>& values() const { return values_; }
    double value(size_t i) const { return values_[i]; }
    size_t size() const { return values_.size(); }

    size_t index_of(Vec2i nu) const;                 // fails with ConfigError if absent
    bool contains(Vec2i nu, size_t* index = nullptr) const;

    bool is_normalized(double tol = 1e-9) const;

private:
    CoefficientSet(Polygon poly, std::vector<Vec2i> exponents, std::vector<double> values);

    Polygon poly_;
    std::vector<Vec2i> exponents_;
    std::vector<double> values_;
};

// Projects log-coefficients orthogonally to the span of {1, nu1 - p1, nu2 - p2}
// over the lattice points (p = area centroid), fixing the scale and torus-frame
// ambiguity of the potential.
CoefficientSet normalize(const CoefficientSet& coeffs);

// Product-of-binomials weights on a rectangle [0,m1]x[0,m2].
CoefficientSet binomial_coefficients(const Polygon& poly);

// Trinomial weights k!/(nu1! nu2! (k-nu1-nu2)!) on the right triangle of size k.
CoefficientSet multinomial_coefficients(const Polygon& poly);

// Independent log-uniform values in [-range, range), reproducible from the seed.
CoefficientSet random_coefficients(const Polygon& poly, std::uint64_t seed, double range);

// Partition of the lattice-point indices into orbits of the given affine maps.
// Each orbit is sorted; orbits are ordered by their smallest member.
std::vector<std::vector<size_t>> lattice_orbits(const Polygon& poly,
                                                const std::vector<AffineMapZ>& group);

// Replaces each value by the geometric mean over its orbit.
CoefficientSet apply_symmetry_average(const CoefficientSet& coeffs,
                                      const std::vector<AffineMapZ>& group);
CoefficientSet apply_symmetry_average(const CoefficientSet& coeffs,
                                      const std::vector<std::vector<size_t>>& orbits);

}  // namespace toric
