#ifndef SUBGEO_KCENTER_HPP
#define SUBGEO_KCENTER_HPP

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

/// Union of up to k balls with a common radius: f = min_j ||p - o^j||.
/// An empty center set ranks every point at +inf.
struct KBallFamily {
    using Center = std::vector<Point>;
    std::size_t k = 2;

    double rank(const Center& c, PointView p) const;
    double size_of_rank(double f) const { return f; }
    double min_enclosing_size(const Center& c, PointView p) const { return rank(c, p); }
    bool contains(const Center& c, double size, PointView p) const { return rank(c, p) <= size; }
    bool in_domain(const Center&, PointView) const { return true; }
    Center random_center(RngStream& rng, std::size_t d) const;
    double random_size(RngStream& rng) const { return 3.0 * rng.uniform01(); }
    Point random_point(RngStream& rng, std::size_t d) const;
};

enum class GuessMode { enumerate, random };

struct KCenterCandidate {
    std::vector<Point> centers;  // non-empty clusters only
    double size = 0.0;
    std::size_t round = 0;
    std::size_t branch = 0;      // leaf index in DFS order of the first leaf below
    std::size_t repetition = 0;
};

struct KCenterTrial {
    std::vector<KCenterCandidate> candidates;  // one per evaluated node
    std::size_t best = 0;
    std::size_t branches = 0;  // leaves visited
    EvalCounter counter;
    bool uas_fallback = false;
    bool sandwich_fallback = false;
    bool inner_capped = false;
};

struct KCenterReport {
    std::vector<Point> centers;
    double radius = 0.0;
    std::optional<std::size_t> covered;
    std::optional<std::size_t> excluded;
    EvalCounter counter;
    std::size_t repetitions_used = 0;
    std::size_t branches = 0;  // per repetition
    std::size_t round = 0;
    std::size_t repetition = 0;
    bool uas_fallback = false;
    bool sandwich_fallback = false;
    bool inner_capped = false;
};

/// Guessed additions per trial: k * rounds().
std::size_t kcenter_rounds(std::size_t k, const BiCriteriaParams& params);

/// Leaves of the enumeration tree, k^{z_k}, saturating at UINT64_MAX.
std::uint64_t kcenter_branch_count(std::size_t k, const BiCriteriaParams& params);

/// One trial. The first point opens cluster 1; each of the z_k following
/// rounds draws q from the far set under the current centers and adds it to
/// the cluster named by the guess (an empty slot is opened). Candidates are
/// O_1 .. O_{z_k + 1}. With an explicit `guess` of length z_k only that path
/// is followed; with nullopt, enumerate mode visits every labelling depth
/// first and random mode draws labels uniformly.
KCenterTrial kcenter_trial(const OutlierInstance& inst, std::size_t k,
                           const BiCriteriaParams& params, Algorithm algo, GuessMode mode,
                           RngStream& rng,
                           const std::optional<std::vector<std::size_t>>& guess = std::nullopt);

struct KCenterOptions {
    std::size_t workers = 1;
    bool final_scan = true;
    bool scale_eta2 = false;
};

/// Repetitions used by kcenter_solve; theory mode applies the bound for
/// the chosen algorithm, times k^{z_k} in random-guess mode.
std::uint64_t kcenter_required_repeats(std::size_t k, Algorithm algo, GuessMode mode,
                                       double gamma, const BiCriteriaParams& params);

KCenterReport kcenter_solve(const OutlierInstance& inst, std::size_t k,
                            const BiCriteriaParams& params, Algorithm algo, GuessMode mode,
                            std::uint64_t seed, const KCenterOptions& opts = {});

}  // namespace subgeo

#endif  // SUBGEO_KCENTER_HPP
