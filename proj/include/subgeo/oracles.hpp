#ifndef SUBGEO_ORACLES_HPP
#define SUBGEO_ORACLES_HPP

#include <cstddef>
#include <vector>

#include "subgeo/geometry.hpp"
#include "subgeo/meb.hpp"

namespace subgeo {

/// High-accuracy MEB: active set over P with an away-step Frank-Wolfe solve
/// of each subproblem. The returned radius is the exact covering radius of
/// the returned center, so it never undershoots Rad(P).
Ball oracle_meb_reference(const PointSet& P, double tol = 1e-9);

/// Exact MEB for d <= 3 (Welzl with a fixed internal shuffle).
Ball oracle_meb_exact_lowdim(const PointSet& P);

struct SubsetOptimum {
    double radius = 0.0;
    Ball ball;
    std::vector<std::size_t> kept;  // sorted indices of the covered subset
};

/// Smallest ball over all ceil((1-gamma)n)-subsets. n <= 15, at most 3 dropped.
SubsetOptimum oracle_meb_outliers_bruteforce(const PointSet& P, double gamma);

struct KCenterOptimum {
    double radius = 0.0;
    std::vector<Point> centers;
    std::vector<std::size_t> outliers;
};

/// Exhaustive k-center with outliers: every outlier subset times every
/// assignment of the rest to k clusters. n <= 10, k <= 2.
KCenterOptimum oracle_kcenter_bruteforce(const PointSet& P, std::size_t k, double gamma);

struct PolytopeBracket {
    double lower = 0.0;  // min_p <p, v> / ||v||
    double upper = 0.0;  // ||v||
    Point v;
    std::size_t iterations = 0;
};

/// Distance from the origin to conv(P), bracketed to relative width `tol`
/// with away-step Frank-Wolfe.
PolytopeBracket oracle_polytope_bracket(const PointSet& P, double tol = 1e-10,
                                        std::size_t max_iter = 2'000'000);

}  // namespace subgeo

#endif  // SUBGEO_ORACLES_HPP
