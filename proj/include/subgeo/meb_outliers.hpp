#ifndef SUBGEO_MEB_OUTLIERS_HPP
#define SUBGEO_MEB_OUTLIERS_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "subgeo/geometry.hpp"
#include "subgeo/instance.hpp"
#include "subgeo/meb.hpp"
#include "subgeo/mex.hpp"
#include "subgeo/sampling.hpp"

namespace subgeo {

enum class Algorithm { linear, sublinear };

struct Candidate {
    Point center;
    double size = 0.0;  // exact l_i (linear) or estimate (sub-linear)
    std::size_t round = 0;
    std::size_t repetition = 0;
};

/// One run of the randomized core-set loop.
struct TrialResult {
    std::vector<Candidate> candidates;  // one per round
    std::size_t best = 0;               // argmin of size, earliest round on ties
    std::vector<std::size_t> core;      // T as indices into P
    EvalCounter counter;
    bool uas_fallback = false;
    bool sandwich_fallback = false;
    bool inner_capped = false;
};

struct SolutionReport {
    Ball ball;
    std::optional<std::size_t> covered;   // filled by the final scan
    std::optional<std::size_t> excluded;
    EvalCounter counter;                  // trial work only
    std::size_t repetitions_used = 0;
    std::size_t round = 0;
    std::size_t repetition = 0;
    bool uas_fallback = false;
    bool sandwich_fallback = false;
    bool inner_capped = false;
};

/// Uniform-adaptive sample with the Euclidean ranking.
UasDraw uniform_adaptive_draw(const PointSet& P, PointView o, const SamplingPlan& plan,
                              RngStream& rng, EvalCounter* counter = nullptr);
Point uniform_adaptive_sample(const PointSet& P, PointView o, const SamplingPlan& plan,
                              RngStream& rng, EvalCounter* counter = nullptr);

/// Sandwich estimate of the (t+1)-th largest distance. Accepts any delta in
/// (0,1); the guarantee needs delta < 1/3.
SandwichResult sandwich_estimate(const PointSet& P, PointView o, const SamplingPlan& plan,
                                 RngStream& rng, EvalCounter* counter = nullptr);

TrialResult algorithm1_trial(const OutlierInstance& inst, const BiCriteriaParams& params,
                             RngStream& rng);
TrialResult algorithm2_trial(const OutlierInstance& inst, const BiCriteriaParams& params,
                             RngStream& rng);

/// Single trial plus an optional final scan for covered/excluded.
SolutionReport algorithm1_linear(const OutlierInstance& inst, const BiCriteriaParams& params,
                                 RngStream& rng, bool final_scan = true);
SolutionReport algorithm2_sublinear(const OutlierInstance& inst, const BiCriteriaParams& params,
                                    RngStream& rng, bool final_scan = true);

struct RepeatOptions {
    std::size_t workers = 1;
    bool final_scan = true;
    /// Sub-linear only: replace eta2 by 1 / (4 z R) for R repetitions.
    bool scale_eta2 = false;
};

/// Repetition count used by repeat_best: params.repeats, or in theory mode
/// the success-probability bound (throws BudgetError above params.budget).
std::uint64_t required_repeats(Algorithm algo, double gamma, const BiCriteriaParams& params);

/// Runs `repeats` independent trials on streams (seed, 0..R-1) and keeps the
/// candidate with the smallest size; ties go to the lower repetition id.
SolutionReport repeat_best(Algorithm algo, const OutlierInstance& inst,
                           const BiCriteriaParams& params, std::uint64_t seed,
                           const RepeatOptions& opts = {});

/// Fills covered/excluded: a point is excluded when its distance exceeds the radius.
void final_scan(const PointSet& P, SolutionReport& report);

}  // namespace subgeo

#endif  // SUBGEO_MEB_OUTLIERS_HPP
