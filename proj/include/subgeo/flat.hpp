#ifndef SUBGEO_FLAT_HPP
#define SUBGEO_FLAT_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "subgeo/geometry.hpp"
#include "subgeo/instance.hpp"
#include "subgeo/meb_outliers.hpp"
#include "subgeo/mex.hpp"
#include "subgeo/sampling.hpp"

namespace subgeo {

/// Affine flat: anchor + span(basis), basis orthonormal.
struct Flat {
    Point anchor;
    std::vector<Point> basis;

    std::size_t dim() const { return anchor.dim(); }
    std::size_t flat_dim() const { return basis.size(); }
};

/// Distance from p to its orthogonal projection onto F.
double dist_flat(const Flat& F, PointView p);

/// Line through a and b. Throws InputError when they coincide.
Flat line_through(PointView a, PointView b);

/// Slabs around a flat: f = dist_flat, size = width.
struct SlabFamily {
    using Center = Flat;

    double rank(const Center& F, PointView p) const { return dist_flat(F, p); }
    double size_of_rank(double f) const { return f; }
    double min_enclosing_size(const Center& F, PointView p) const { return rank(F, p); }
    bool contains(const Center& F, double size, PointView p) const { return rank(F, p) <= size; }
    bool in_domain(const Center&, PointView) const { return true; }
    Center random_center(RngStream& rng, std::size_t d) const;
    double random_size(RngStream& rng) const { return 3.0 * rng.uniform01(); }
    Point random_point(RngStream& rng, std::size_t d) const;
};

/// Round count nu = ceil(c5 ln(1/eps) / eps^3), delta0 = delta / (nu + 1),
/// M candidate directions per anchor (default max(64, ceil(8 pi / eps))).
struct FlatParams {
    double epsilon = 0.5;
    double delta = 0.25;
    double c5 = 4.0;
    std::size_t nu = 0;
    double delta0 = 0.0;
    std::size_t M = 0;

    /// `nu_override` / `M_override` of 0 keep the formulas.
    static FlatParams make(double epsilon, double delta, double c5 = 4.0,
                           std::size_t nu_override = 0, std::size_t M_override = 0);
};

struct InitLine {
    Flat line;
    std::size_t p_index = 0;  // p_delta
    std::size_t q_index = 0;  // q_delta
    std::size_t attempts = 1;
};

/// p_delta uniform from P, q_delta uniform from the ceil((1+delta0) gamma n)
/// farthest points from p_delta (the farthest when that count is 0). A
/// q_delta coinciding with p_delta is redrawn, up to 16 attempts.
InitLine init_line(const PointSet& P, double gamma, double delta0, RngStream& rng,
                   EvalCounter* counter = nullptr);

struct FlatReport {
    Flat line;
    double width = 0.0;  // exact (t+1)-th distance (linear) or sandwich estimate
    std::optional<std::size_t> covered;
    std::optional<std::size_t> excluded;
    EvalCounter counter;
    std::size_t rounds = 0;
    std::size_t skipped_rounds = 0;  // far point already on the incumbent line
    std::size_t adoptions = 0;
    std::size_t repetitions_used = 1;
    std::size_t repetition = 0;
    bool uas_fallback = false;
    bool sandwich_fallback = false;
    std::vector<double> estimates;  // incumbent estimate after init and after each round
};

/// One trial for j = 1. Far points use delta0 (rank t0 = ceil((1+delta0) gamma n));
/// widths are estimated with params.delta. In round i the far point p_i and
/// the incumbent line span a plane h_i; the 2M candidate lines in h_i pass
/// through the foot of p_i on the incumbent or through the midpoint of that
/// foot and p_i, with directions cos(theta) u + sin(theta) w, theta = pi m / M.
/// A candidate is adopted only when its estimate is below the incumbent's.
FlatReport flat_fit_outliers(const OutlierInstance& inst, const FlatParams& fp,
                             const BiCriteriaParams& params, Algorithm algo, RngStream& rng,
                             bool final_scan = true);

struct FlatOptions {
    std::size_t workers = 1;
    bool final_scan = true;
};

/// params.repeats trials on streams (seed, rep); smallest width wins.
FlatReport flat_fit_solve(const OutlierInstance& inst, const FlatParams& fp,
                          const BiCriteriaParams& params, Algorithm algo, std::uint64_t seed,
                          const FlatOptions& opts = {});

}  // namespace subgeo

#endif  // SUBGEO_FLAT_HPP
