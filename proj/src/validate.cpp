#include "subgeo/validate.hpp"

#include <chrono>
#include <cstdio>
#include <sstream>

#include "subgeo/errors.hpp"
#include "subgeo/instances.hpp"
#include "subgeo/kcenter.hpp"
#include "subgeo/meb_outliers.hpp"

namespace subgeo {

std::vector<LemmaSetting> default_lemma_grid() {
    return {{0.1, 0.5, 0.1}, {0.05, 0.25, 0.1}, {0.2, 0.3, 0.2}};
}

namespace {

std::vector<Point> ball_centers(std::size_t count, std::size_t d, RngStream& rng) {
    std::vector<Point> out;
    for (std::size_t j = 0; j < count; ++j) {
        Point c(d);
        for (std::size_t k = 0; k < d; ++k) c[k] = 0.5 * rng.normal();
        out.push_back(std::move(c));
    }
    return out;
}

std::size_t per_center(const LemmaSuiteConfig& cfg) {
    if (cfg.centers == 0) throw InputError("need at least one center");
    return (cfg.trials + cfg.centers - 1) / cfg.centers;
}

SamplingPlan plan_for(const LemmaSuiteConfig& cfg, const LemmaSetting& s) {
    return SamplingPlan::make(cfg.n, s.gamma, s.delta, s.eta, s.eta, cfg.c1, cfg.c2);
}

}  // namespace

std::vector<LemmaRow> run_lemma_suite(int lemma, const std::vector<LemmaSetting>& grid,
                                      const LemmaSuiteConfig& cfg) {
    if (lemma != 1 && lemma != 2) throw InputError("lemma must be 1 or 2");
    std::vector<LemmaRow> rows;
    std::uint64_t row_id = 0;
    for (const LemmaSetting& s : grid) {
        const OutlierInstance inst = gen_planted_meb(cfg.n, cfg.d, s.gamma, 1.0, 10.0, cfg.seed + row_id);
        RngStream rng(cfg.seed, 1000 + row_id);
        const auto centers = ball_centers(cfg.centers, cfg.d, rng);
        const SamplingPlan plan = plan_for(cfg, s);
        LemmaRow row = lemma == 1 ? lemma1_trials(inst.P, inst.truth->inliers, centers, BallFamily{},
                                                  plan, per_center(cfg), rng)
                                  : lemma2_trials(inst.P, centers, BallFamily{}, plan,
                                                  per_center(cfg), rng);
        row.family = "ball";
        row.eta = s.eta;
        rows.push_back(row);
        ++row_id;
    }
    return rows;
}

std::vector<LemmaRow> run_lemma_suite_kball(int lemma, const std::vector<LemmaSetting>& grid,
                                            const LemmaSuiteConfig& cfg) {
    if (lemma != 1 && lemma != 2) throw InputError("lemma must be 1 or 2");
    std::vector<LemmaRow> rows;
    std::uint64_t row_id = 0;
    const KBallFamily fam{2};
    for (const LemmaSetting& s : grid) {
        const OutlierInstance inst =
            gen_planted_kcenter(cfg.n, cfg.d, 2, s.gamma, 20.0, 1.0, 100.0, cfg.seed + row_id);
        RngStream rng(cfg.seed, 2000 + row_id);
        std::vector<KBallFamily::Center> centers;
        for (std::size_t j = 0; j < cfg.centers; ++j) {
            KBallFamily::Center c = inst.truth->centers;
            for (auto& o : c)
                for (std::size_t k = 0; k < cfg.d; ++k) o[k] += 0.5 * rng.normal();
            centers.push_back(std::move(c));
        }
        const SamplingPlan plan = plan_for(cfg, s);
        LemmaRow row = lemma == 1
                           ? lemma1_trials(inst.P, inst.truth->inliers, centers, fam, plan,
                                           per_center(cfg), rng)
                           : lemma2_trials(inst.P, centers, fam, plan, per_center(cfg), rng);
        row.family = "kball";
        row.eta = s.eta;
        rows.push_back(row);
        ++row_id;
    }
    return rows;
}

std::string lemma_csv(const std::vector<LemmaRow>& rows, double margin) {
    std::ostringstream os;
    os << "lemma,family,gamma,delta,eta,n,sample_size,centers,trials,successes,rate,bound,pass\n";
    char buf[64];
    for (const LemmaRow& r : rows) {
        std::snprintf(buf, sizeof buf, "%.4f,%.4f", r.rate(), r.bound());
        os << r.lemma << ',' << r.family << ',' << r.gamma << ',' << r.delta << ',' << r.eta << ','
           << r.n << ',' << r.sample_size << ',' << r.centers << ',' << r.trials << ','
           << r.successes << ',' << buf << ',' << (r.rate() >= r.bound() - margin ? 1 : 0) << '\n';
    }
    return os.str();
}

std::vector<BenchRow> bench_sweep(const BenchConfig& cfg, const BiCriteriaParams& params) {
    if (cfg.trials == 0) throw InputError("bench needs at least one trial");
    std::vector<BenchRow> rows;
    for (std::size_t n : cfg.ns) {
        const OutlierInstance inst = gen_planted_meb(n, cfg.d, cfg.gamma, 1.0, 10.0, cfg.seed);
        BenchRow row;
        row.n = n;
        row.trials = cfg.trials;
        const auto t0 = std::chrono::steady_clock::now();
        for (std::size_t tr = 0; tr < cfg.trials; ++tr) {
            RngStream rng(cfg.seed, tr);
            const TrialResult r = algorithm2_trial(inst, params, rng);
            if (tr == 0) {
                row.distance_evals = r.counter.distance_evals;
                row.points_touched = r.counter.points_touched;
            }
            row.uas_fallback |= r.uas_fallback;
            row.sandwich_fallback |= r.sandwich_fallback;
        }
        const auto t1 = std::chrono::steady_clock::now();
        row.trial_seconds = std::chrono::duration<double>(t1 - t0).count();
        rows.push_back(row);
    }
    return rows;
}

std::string bench_csv(const std::vector<BenchRow>& rows) {
    std::ostringstream os;
    os << "n,distance_evals,points_touched,trials,trial_seconds,uas_fallback,sandwich_fallback\n";
    char buf[32];
    for (const BenchRow& r : rows) {
        std::snprintf(buf, sizeof buf, "%.6f", r.trial_seconds);
        os << r.n << ',' << r.distance_evals << ',' << r.points_touched << ',' << r.trials << ','
           << buf << ',' << r.uas_fallback << ',' << r.sandwich_fallback << '\n';
    }
    return os.str();
}

}  // namespace subgeo
