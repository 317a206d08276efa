#include "subgeo/meb_outliers.hpp"

#include <limits>

#include "subgeo/errors.hpp"
#include "subgeo/parallel.hpp"

namespace subgeo {

namespace {

std::size_t argmin_size(const std::vector<Candidate>& cands) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < cands.size(); ++i)
        if (cands[i].size < cands[best].size) best = i;
    return best;
}

SolutionReport report_from(const TrialResult& trial) {
    SolutionReport rep;
    const Candidate& c = trial.candidates.at(trial.best);
    rep.ball = Ball{c.center, c.size};
    rep.counter = trial.counter;
    rep.repetitions_used = 1;
    rep.round = c.round;
    rep.repetition = c.repetition;
    rep.uas_fallback = trial.uas_fallback;
    rep.sandwich_fallback = trial.sandwich_fallback;
    rep.inner_capped = trial.inner_capped;
    return rep;
}

}  // namespace

UasDraw uniform_adaptive_draw(const PointSet& P, PointView o, const SamplingPlan& plan,
                              RngStream& rng, EvalCounter* counter) {
    return generalized_uas_draw(P, Point(o), plan, BallFamily{}, rng, counter);
}

Point uniform_adaptive_sample(const PointSet& P, PointView o, const SamplingPlan& plan,
                              RngStream& rng, EvalCounter* counter) {
    return P.point(uniform_adaptive_draw(P, o, plan, rng, counter).index);
}

SandwichResult sandwich_estimate(const PointSet& P, PointView o, const SamplingPlan& plan,
                                 RngStream& rng, EvalCounter* counter) {
    return generalized_sandwich(P, Point(o), plan, BallFamily{}, rng, counter);
}

TrialResult algorithm1_trial(const OutlierInstance& inst, const BiCriteriaParams& params,
                             RngStream& rng) {
    inst.validate();
    params.validate(false);
    const PointSet& P = inst.P;
    const ApproxParams ap = params.approx();
    const std::size_t z = params.rounds();
    const SamplingPlan plan = SamplingPlan::exact(P.size(), inst.gamma, params.delta);
    const BallFamily ball;

    TrialResult out;
    out.inner_capped = ap.inner_capped;
    CenterSolver solver(P.dim());
    const std::size_t first = rng.uniform_index(P.size());
    solver.add(P[first]);
    out.core.push_back(first);

    for (std::size_t i = 1; i <= z; ++i) {
        Point o = solver.solve(ap.inner_iters, &out.counter).center;
        const auto f = rank_all(P, o, ball, &out.counter);
        const auto sel = select_top(f, plan.t);
        const double l = f[sel.next];
        out.candidates.push_back(Candidate{std::move(o), l, i, rng.stream()});
        const std::size_t q = plan.t > 0 ? sel.top[rng.uniform_index(sel.top.size())] : sel.next;
        solver.add(P[q]);
        out.core.push_back(q);
    }
    out.best = argmin_size(out.candidates);
    return out;
}

TrialResult algorithm2_trial(const OutlierInstance& inst, const BiCriteriaParams& params,
                             RngStream& rng) {
    inst.validate();
    params.validate(true);
    const PointSet& P = inst.P;
    const ApproxParams ap = params.approx();
    const std::size_t z = params.rounds();
    const SamplingPlan plan = params.plan(P.size(), inst.gamma);
    const BallFamily ball;

    TrialResult out;
    out.inner_capped = ap.inner_capped;
    out.uas_fallback = plan.exact_uas;
    out.sandwich_fallback = plan.exact_sandwich;
    CenterSolver solver(P.dim());
    const std::size_t first = rng.uniform_index(P.size());
    solver.add(P[first]);
    out.core.push_back(first);

    for (std::size_t i = 1; i <= z; ++i) {
        Point o = solver.solve(ap.inner_iters, &out.counter).center;
        const std::size_t q = generalized_uas(P, o, plan, ball, rng, &out.counter);
        solver.add(P[q]);
        out.core.push_back(q);
        const double l = generalized_sandwich(P, o, plan, ball, rng, &out.counter).size;
        out.candidates.push_back(Candidate{std::move(o), l, i, rng.stream()});
    }
    out.best = argmin_size(out.candidates);
    return out;
}

void final_scan(const PointSet& P, SolutionReport& report) {
    if (report.ball.center.dim() != P.dim()) throw InputError("final_scan: dimension mismatch");
    std::size_t covered = 0;
    for (std::size_t i = 0; i < P.size(); ++i)
        if (dist(P[i], report.ball.center) <= report.ball.radius) ++covered;
    report.covered = covered;
    report.excluded = P.size() - covered;
}

SolutionReport algorithm1_linear(const OutlierInstance& inst, const BiCriteriaParams& params,
                                 RngStream& rng, bool scan) {
    SolutionReport rep = report_from(algorithm1_trial(inst, params, rng));
    if (scan) final_scan(inst.P, rep);
    return rep;
}

SolutionReport algorithm2_sublinear(const OutlierInstance& inst, const BiCriteriaParams& params,
                                    RngStream& rng, bool scan) {
    SolutionReport rep = report_from(algorithm2_trial(inst, params, rng));
    if (scan) final_scan(inst.P, rep);
    return rep;
}

std::uint64_t required_repeats(Algorithm algo, double gamma, const BiCriteriaParams& params) {
    if (!params.theory_mode) return params.repeats;
    const std::size_t z = params.rounds();
    const std::uint64_t r =
        algo == Algorithm::linear
            ? linear_repeat_count(gamma, params.delta, z, params.c3)
            : sublinear_repeat_count(gamma, params.delta, params.eta1, z, params.c3);
    if (r > params.budget) throw BudgetError("theory-mode repetition count over budget", r, params.budget);
    return r;
}

SolutionReport repeat_best(Algorithm algo, const OutlierInstance& inst,
                           const BiCriteriaParams& params, std::uint64_t seed,
                           const RepeatOptions& opts) {
    params.validate(algo == Algorithm::sublinear);
    const std::uint64_t R = required_repeats(algo, inst.gamma, params);
    BiCriteriaParams run = params;
    if (algo == Algorithm::sublinear && (params.theory_mode || opts.scale_eta2)) {
        run.eta2 = 1.0 / (4.0 * static_cast<double>(params.rounds()) * static_cast<double>(R));
    }

    struct Local {
        std::optional<SolutionReport> best;
        EvalCounter counter;
        bool uas = false, sandwich = false, capped = false;
    };
    const std::size_t W = effective_workers(R, opts.workers);
    std::vector<Local> locals(W);
    for_each_rep(R, W, [&](std::size_t rep, std::size_t w) {
        RngStream rng(seed, rep);
        const TrialResult trial = algo == Algorithm::linear ? algorithm1_trial(inst, run, rng)
                                                            : algorithm2_trial(inst, run, rng);
        Local& loc = locals[w];
        loc.counter += trial.counter;
        loc.uas |= trial.uas_fallback;
        loc.sandwich |= trial.sandwich_fallback;
        loc.capped |= trial.inner_capped;
        const Candidate& c = trial.candidates[trial.best];
        if (!loc.best || c.size < loc.best->ball.radius ||
            (c.size == loc.best->ball.radius && rep < loc.best->repetition)) {
            loc.best = report_from(trial);
        }
    });

    SolutionReport out;
    bool have = false;
    EvalCounter total;
    bool uas = false, sandwich = false, capped = false;
    for (const Local& loc : locals) {
        total += loc.counter;
        uas |= loc.uas;
        sandwich |= loc.sandwich;
        capped |= loc.capped;
        if (!loc.best) continue;
        const SolutionReport& b = *loc.best;
        if (!have || b.ball.radius < out.ball.radius ||
            (b.ball.radius == out.ball.radius && b.repetition < out.repetition)) {
            out = b;
            have = true;
        }
    }
    out.counter = total;
    out.repetitions_used = static_cast<std::size_t>(R);
    out.uas_fallback = uas;
    out.sandwich_fallback = sandwich;
    out.inner_capped = capped;
    if (opts.final_scan) final_scan(inst.P, out);
    return out;
}

}  // namespace subgeo
