#ifndef SUBGEO_SVM_HPP
#define SUBGEO_SVM_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "subgeo/geometry.hpp"
#include "subgeo/instance.hpp"
#include "subgeo/meb_outliers.hpp"
#include "subgeo/mex.hpp"
#include "subgeo/sampling.hpp"

namespace subgeo {

enum class GilbertStatus { certified, max_iter, inseparable };

std::string to_string(GilbertStatus s);

struct GilbertState {
    Point v;
    std::size_t iter = 0;       // iterations performed
    double norm_v = 0.0;        // upper end of the bracket
    double cert = 0.0;          // min_p <p,v>/|v|, lower end when positive
    double cert_gap = 0.0;      // norm_v - cert
    double implied_E = 0.0;     // (2 max_p |p - v|)^2 / cert^2, an upper estimate of D^2/rho^2
    GilbertStatus status = GilbertStatus::max_iter;
};

/// Polytope distance from the origin to conv(P). Starts at the point of P
/// closest to the origin; stops once cert >= (1 - epsilon) |v| or after
/// max_iter iterations. Inseparable when |v| collapses to zero, or when the
/// run ends with cert <= 0. `observer` sees the state after every iteration.
GilbertState gilbert(const PointSet& P, double epsilon, std::size_t max_iter,
                     const std::function<void(const GilbertState&)>& observer = {});

/// Halfspaces {p : <p - origin, u> >= 1/size} with unit normal u:
/// f = -<p - origin, u>, min enclosing size 1/<p - origin, u> when positive.
struct HalfSpaceFamily {
    using Center = Point;
    Point origin;  // empty means the coordinate origin

    double projection(const Center& u, PointView p) const;
    double rank(const Center& u, PointView p) const { return -projection(u, p); }
    double size_of_rank(double f) const { return f < 0.0 ? 1.0 / (-f) : kInfiniteSize; }
    double min_enclosing_size(const Center& u, PointView p) const {
        return size_of_rank(rank(u, p));
    }
    bool contains(const Center& u, double size, PointView p) const {
        return min_enclosing_size(u, p) <= size;
    }
    bool in_domain(const Center& u, PointView p) const { return projection(u, p) > 0.0; }
    Center random_center(RngStream& rng, std::size_t d) const;
    double random_size(RngStream& rng) const { return 3.0 * rng.uniform01(); }
    Point random_point(RngStream& rng, std::size_t d) const;
};

struct SvmOptions {
    std::size_t workers = 1;
    bool final_scan = true;
    bool scale_eta2 = false;
    /// Two-class only: update with p2 - p1 instead of p1 - p2.
    bool flip_sign = false;
};

struct MarginReport {
    Point direction;         // unit normal; class 1 (or the one class) on its positive side
    double margin = 0.0;     // one-class: offset of the halfspace; two-class: s_perp + s_top
    double s_perp = 0.0;     // two-class: class-1 side, measured from `origin`
    double s_top = 0.0;      // two-class: class-2 side
    Point origin;            // two-class reference point (midpoint of the witnesses)
    std::vector<std::size_t> excluded;  // per class, filled by the final scan
    std::vector<std::size_t> covered;
    EvalCounter counter;
    std::size_t rounds = 0;
    std::size_t round = 0;  // round of the reported candidate
    std::size_t repetitions_used = 1;
    std::size_t repetition = 0;
    std::size_t infeasible_rounds = 0;  // rounds whose estimate was +inf
    bool infeasible = false;            // no round produced a positive margin
    bool uas_fallback = false;
    bool sandwich_fallback = false;
};

/// One-class trial with z = params.rounds() Gilbert rounds from a uniformly
/// drawn start point. Each round estimates the margin of u = v/|v| (exact
/// (t+1)-th smallest projection, or the sandwich estimate), then steps v
/// toward a point drawn from the t smallest projections (or via uniform-
/// adaptive sampling). The round with the largest margin is reported.
MarginReport svm1_outliers(const OutlierInstance& inst, const BiCriteriaParams& params,
                           Algorithm algo, RngStream& rng, bool final_scan = true);

/// Two-class trial on the implicit difference set P1 - P2.
MarginReport svm2_outliers(const TwoClassInstance& inst, const BiCriteriaParams& params,
                           Algorithm algo, RngStream& rng, bool final_scan = true,
                           bool flip_sign = false);

/// Repeated trials on streams (seed, rep); the largest margin wins, ties to
/// the lower repetition.
MarginReport svm1_solve(const OutlierInstance& inst, const BiCriteriaParams& params,
                        Algorithm algo, std::uint64_t seed, const SvmOptions& opts = {});
MarginReport svm2_solve(const TwoClassInstance& inst, const BiCriteriaParams& params,
                        Algorithm algo, std::uint64_t seed, const SvmOptions& opts = {});

/// Final scan: points outside the reported halfspace(s), per class.
void svm1_scan(const PointSet& P, MarginReport& report);
void svm2_scan(const TwoClassInstance& inst, MarginReport& report);

}  // namespace subgeo

#endif  // SUBGEO_SVM_HPP
