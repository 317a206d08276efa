#ifndef SUBGEO_VALIDATE_HPP
#define SUBGEO_VALIDATE_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "subgeo/geometry.hpp"
#include "subgeo/instance.hpp"
#include "subgeo/mex.hpp"
#include "subgeo/sampling.hpp"

namespace subgeo {

struct LemmaRow {
    int lemma = 1;
    std::string family;
    double gamma = 0.0;
    double delta = 0.0;
    double eta = 0.0;
    std::size_t n = 0;
    std::size_t sample_size = 0;  // n' or n''
    std::size_t centers = 0;
    std::size_t trials = 0;       // total over all centers
    std::size_t successes = 0;
    bool exact = false;           // sample size reached n; the check is vacuous

    double rate() const { return trials ? static_cast<double>(successes) / trials : 0.0; }
    double bound() const { return 1.0 - eta; }
};

/// Uniform-adaptive sampling event: at least a delta / (3 (1 + delta))
/// fraction of Q' lies in P_opt intersect Q, where Q is the t farthest points
/// of P from the center and P_opt is given by sorted `inliers`.
template <ShapeFamily F>
LemmaRow lemma1_trials(const PointSet& P, const std::vector<std::size_t>& inliers,
                       const std::vector<typename F::Center>& centers, const F& fam,
                       const SamplingPlan& plan, std::size_t trials_per_center, RngStream& rng) {
    LemmaRow row;
    row.lemma = 1;
    row.gamma = plan.gamma;
    row.delta = plan.delta;
    row.n = P.size();
    row.sample_size = plan.n_prime;
    row.centers = centers.size();
    row.exact = plan.exact_uas;
    std::vector<char> in_opt(P.size(), 0);
    for (std::size_t i : inliers) in_opt.at(i) = 1;
    const double need = plan.delta / (3.0 * (1.0 + plan.delta));
    for (const auto& c : centers) {
        const auto f = rank_all(P, c, fam);
        std::vector<char> good(P.size(), 0);  // P_opt intersect Q
        for (std::size_t i : select_top(f, plan.t).top) good[i] = in_opt[i];
        for (std::size_t tr = 0; tr < trials_per_center; ++tr) {
            const UasDraw draw = generalized_uas_draw(P, c, plan, fam, rng);
            std::size_t hit = 0;
            for (std::size_t i : draw.q_prime) hit += good[i] ? 1 : 0;
            const double frac = static_cast<double>(hit) / static_cast<double>(draw.q_prime.size());
            ++row.trials;
            if (frac >= need) ++row.successes;
        }
    }
    return row;
}

/// Sandwich event: l~ <= l and |P \ x(c, l~)| <= (1+delta)^2 / (1-delta) gamma n.
template <ShapeFamily F>
LemmaRow lemma2_trials(const PointSet& P, const std::vector<typename F::Center>& centers,
                       const F& fam, const SamplingPlan& plan, std::size_t trials_per_center,
                       RngStream& rng) {
    LemmaRow row;
    row.lemma = 2;
    row.gamma = plan.gamma;
    row.delta = plan.delta;
    row.n = P.size();
    row.sample_size = plan.n_dprime;
    row.centers = centers.size();
    row.exact = plan.exact_sandwich;
    const double n = static_cast<double>(P.size());
    const double cap =
        (1.0 + plan.delta) * (1.0 + plan.delta) / (1.0 - plan.delta) * plan.gamma * n;
    for (const auto& c : centers) {
        const auto f = rank_all(P, c, fam);
        const double l = fam.size_of_rank(f[select_rank(f, {}, plan.t + 1)]);
        std::vector<double> sizes(P.size());
        for (std::size_t i = 0; i < P.size(); ++i) sizes[i] = fam.size_of_rank(f[i]);
        std::sort(sizes.begin(), sizes.end());
        for (std::size_t tr = 0; tr < trials_per_center; ++tr) {
            const double est = generalized_sandwich(P, c, plan, fam, rng).size;
            // Points outside x(c, est) are those with a strictly larger size.
            const auto outside = static_cast<double>(
                sizes.end() - std::upper_bound(sizes.begin(), sizes.end(), est));
            ++row.trials;
            if (est <= l && outside <= cap * (1.0 + 1e-12)) ++row.successes;
        }
    }
    return row;
}

struct LemmaSuiteConfig {
    std::size_t n = 100'000;
    std::size_t d = 10;
    std::size_t centers = 10;
    std::size_t trials = 10'000;  // total per grid row, split over the centers
    std::uint64_t seed = 1;
    double c1 = 24.0;
    double c2 = 24.0;
};

struct LemmaSetting {
    double gamma;
    double delta;
    double eta;
};

/// The default grid {(0.1,0.5,0.1), (0.05,0.25,0.1), (0.2,0.3,0.2)}.
std::vector<LemmaSetting> default_lemma_grid();

/// Ball-family suites on planted MEB instances (beta = 10, r_in = 1). Centers
/// are the planted center plus Gaussian offsets of scale 0.5.
std::vector<LemmaRow> run_lemma_suite(int lemma, const std::vector<LemmaSetting>& grid,
                                      const LemmaSuiteConfig& cfg);

/// Same checks for the generalized lemmas on the k-ball family over planted
/// two-cluster instances.
std::vector<LemmaRow> run_lemma_suite_kball(int lemma, const std::vector<LemmaSetting>& grid,
                                            const LemmaSuiteConfig& cfg);

std::string lemma_csv(const std::vector<LemmaRow>& rows, double margin);

struct BenchRow {
    std::size_t n = 0;
    std::uint64_t distance_evals = 0;  // per trial
    std::uint64_t points_touched = 0;
    double trial_seconds = 0.0;        // total over `trials`
    std::size_t trials = 0;
    bool uas_fallback = false;
    bool sandwich_fallback = false;
};

struct BenchConfig {
    std::vector<std::size_t> ns{10'000, 100'000, 1'000'000};
    std::size_t d = 10;
    double gamma = 0.1;
    std::size_t trials = 200;
    std::uint64_t seed = 7;
};

/// Runs `trials` sub-linear trials with identical seeds on planted instances
/// of every size in cfg.ns. distance_evals must match across n.
std::vector<BenchRow> bench_sweep(const BenchConfig& cfg, const BiCriteriaParams& params);

std::string bench_csv(const std::vector<BenchRow>& rows);

}  // namespace subgeo

#endif  // SUBGEO_VALIDATE_HPP
