#ifndef SUBGEO_INSTANCES_HPP
#define SUBGEO_INSTANCES_HPP

#include <cstddef>
#include <cstdint>

#include "subgeo/instance.hpp"

namespace subgeo {

/// (1-gamma)n inliers uniform in B(0, r_in), gamma n outliers on the sphere
/// of radius beta * r_in. Rows are shuffled; truth.size = r_in.
OutlierInstance gen_planted_meb(std::size_t n, std::size_t d, double gamma, double r_in,
                                double beta, std::uint64_t seed);

/// k unit-style clusters of radius r_in with centers spaced `separation`
/// apart on the first axis; outliers at distance `outlier_dist` from the
/// centroid of the centers.
OutlierInstance gen_planted_kcenter(std::size_t n, std::size_t d, std::size_t k, double gamma,
                                    double separation, double r_in, double outlier_dist,
                                    std::uint64_t seed);

/// Inliers within distance `width` of a random line through the origin,
/// spread over a segment of length `length`; outliers at distance
/// `outlier_dist` from the line.
OutlierInstance gen_planted_line(std::size_t n, std::size_t d, double gamma, double width,
                                 double length, double outlier_dist, std::uint64_t seed);

/// One-class SVM: inliers with <p,e1> in [1, 1 + depth] and the remaining
/// coordinates in a ball of radius `spread`; outliers at <p,e1> = -1.
/// truth.size = 1 (a lower bound on the optimal margin).
OutlierInstance gen_planted_svm1(std::size_t n, std::size_t d, double gamma, double spread,
                                 double depth, std::uint64_t seed);

/// Two mirrored classes separated by a slab of width `margin` normal to e1,
/// each with a gamma fraction placed on the opposite side. The whole
/// instance is translated by `shift` along every axis.
TwoClassInstance gen_planted_svm2(std::size_t n_per_class, std::size_t d, double gamma,
                                  double margin, double spread, double shift, std::uint64_t seed);

/// Three collinear clusters: one point at q_a, (1-gamma)n - 1 at q_b and
/// gamma n at q_c, with |q_a q_b| = x and |q_b q_c| = y. Rows are ordered
/// P_a, P_b, P_c. truth.size = x / 2.
OutlierInstance gen_lower_bound(std::size_t n, double gamma, double x, double y);

/// Radius needed around `center` to cover (1-gamma)n points, divided by x/2.
/// The center must lie on the segment [q_b, q_c].
double verify_lower_bound(const OutlierInstance& inst, PointView center);

}  // namespace subgeo

#endif  // SUBGEO_INSTANCES_HPP
