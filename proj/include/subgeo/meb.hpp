#ifndef SUBGEO_MEB_HPP
#define SUBGEO_MEB_HPP

#include <cstddef>
#include <vector>

#include "subgeo/geometry.hpp"

namespace subgeo {

/// Accuracy knobs of the core-set construction.
///   xi          = s * eps / (1 + eps)
///   z           = ceil(2 / ((1 - s) * eps))
///   inner_iters = ceil(1 / xi^2), capped
struct ApproxParams {
    double epsilon = 0.1;
    double s = 0.0;
    double xi = 0.0;
    std::size_t z = 0;
    std::size_t inner_iters = 0;
    bool inner_capped = false;  // true when ceil(1/xi^2) exceeded the cap

    static constexpr std::size_t kInnerCap = 1'000'000;

    /// Uses the default s = eps / (2 + eps), which gives z = 2/eps + 1.
    static ApproxParams from_epsilon(double epsilon, std::size_t inner_cap = kInnerCap);
    static ApproxParams make(double epsilon, double s, std::size_t inner_cap = kInnerCap);
};

struct Ball {
    Point center;
    double radius = 0.0;
};

/// Incremental first-order MEB solver over a small point set T, kept in
/// Gram coordinates relative to T's first point so that one iteration of
/// c <- c + (p_far - c)/(i+1) costs O(|T|) instead of O(|T| d).
class CenterSolver {
public:
    explicit CenterSolver(std::size_t dim) : dim_(dim) {}

    void add(PointView p);
    std::size_t size() const { return m_; }
    std::size_t dim() const { return dim_; }
    PointView point(std::size_t j) const { return {pts_.data() + j * dim_, dim_}; }

    struct Result {
        Point center;
        double radius_to_t = 0.0;  // max distance from center to T
        double lower_bound = 0.0;  // certified lower bound on Rad(T)
        std::size_t iterations = 0;
    };

    /// Runs exactly `iters` updates starting from T's first point.
    /// Adds iters * |T| to counter->distance_evals when |T| >= 2.
    Result solve(std::size_t iters, EvalCounter* counter = nullptr) const;

private:
    std::size_t dim_;
    std::size_t m_ = 0;
    std::vector<double> pts_;   // raw coordinates, row-major
    std::vector<double> gram_;  // m x m, shifted by the first point, row stride = cap_
    std::size_t cap_ = 0;

    double g(std::size_t i, std::size_t j) const { return gram_[i * cap_ + j]; }
    void grow();
};

/// Approximate MEB center of T, within xi * Rad(T) of the exact one.
Point approx_center(const PointSet& T, double xi, EvalCounter* counter = nullptr,
                    std::size_t inner_cap = ApproxParams::kInnerCap);

struct CoresetResult {
    Ball ball;                      // covers all of P
    std::vector<std::size_t> core;  // T as indices into P, in insertion order
    std::size_t rounds = 0;
    bool stopped_early = false;
    bool inner_capped = false;
    std::vector<double> radius_estimates;  // r_hat per round
};

/// Greedy core-set MEB. rng == nullptr starts from P[0]; otherwise from one
/// uniform draw.
CoresetResult coreset_meb(const PointSet& P, const ApproxParams& params, RngStream* rng = nullptr,
                          EvalCounter* counter = nullptr);

/// Exact covering radius of a ball centered at c.
double covering_radius(const PointSet& P, PointView c);

}  // namespace subgeo

#endif  // SUBGEO_MEB_HPP
