#include "subgeo/kcenter.hpp"

#include <cmath>
#include <limits>

#include "subgeo/errors.hpp"
#include "subgeo/meb.hpp"
#include "subgeo/parallel.hpp"

namespace subgeo {

double KBallFamily::rank(const Center& c, PointView p) const {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& o : c) best = std::min(best, std::sqrt(dist_sq_unchecked(p, o)));
    return best;
}

KBallFamily::Center KBallFamily::random_center(RngStream& rng, std::size_t d) const {
    Center c(k, Point(d));
    for (auto& o : c)
        for (std::size_t i = 0; i < d; ++i) o[i] = rng.normal();
    return c;
}

Point KBallFamily::random_point(RngStream& rng, std::size_t d) const {
    Point p(d);
    for (std::size_t i = 0; i < d; ++i) p[i] = 2.0 * rng.normal();
    return p;
}

std::size_t kcenter_rounds(std::size_t k, const BiCriteriaParams& params) {
    return k * params.rounds();
}

std::uint64_t kcenter_branch_count(std::size_t k, const BiCriteriaParams& params) {
    const std::size_t zk = kcenter_rounds(k, params);
    std::uint64_t out = 1;
    for (std::size_t i = 0; i < zk; ++i) {
        if (out > std::numeric_limits<std::uint64_t>::max() / k)
            return std::numeric_limits<std::uint64_t>::max();
        out *= k;
    }
    return out;
}

namespace {

struct NodeState {
    std::vector<CenterSolver> solvers;
    std::vector<Point> centers;  // per slot; dim 0 while the slot is empty
    RngStream rng;

    KBallFamily::Center active() const {
        KBallFamily::Center c;
        for (const auto& o : centers)
            if (o.dim() > 0) c.push_back(o);
        return c;
    }
};

struct Walker {
    const PointSet& P;
    std::size_t k;
    std::size_t zk;
    std::size_t iters;
    Algorithm algo;
    GuessMode mode;
    const std::optional<std::vector<std::size_t>>& guess;
    SamplingPlan plan;
    KBallFamily fam;
    KCenterTrial& out;

    void visit(NodeState& s, std::size_t depth) {
        const auto centers = s.active();
        std::size_t q = 0;
        double l = 0.0;
        if (algo == Algorithm::linear) {
            const auto f = rank_all(P, centers, fam, &out.counter);
            const auto sel = select_top(f, plan.t);
            l = f[sel.next];
            q = plan.t > 0 ? sel.top[s.rng.uniform_index(sel.top.size())] : sel.next;
        } else {
            q = generalized_uas(P, centers, plan, fam, s.rng, &out.counter);
            l = generalized_sandwich(P, centers, plan, fam, s.rng, &out.counter).size;
        }
        out.candidates.push_back(
            KCenterCandidate{centers, l, depth + 1, out.branches, s.rng.stream()});
        if (depth == zk) {
            ++out.branches;
            return;
        }

        auto child_for = [&](std::size_t label) {
            NodeState c = s;
            c.solvers[label].add(P[q]);
            c.centers[label] = c.solvers[label].solve(iters, &out.counter).center;
            visit(c, depth + 1);
        };
        if (guess) {
            child_for(guess->at(depth));
        } else if (mode == GuessMode::random) {
            child_for(k > 1 ? s.rng.uniform_index(k) : 0);
        } else {
            for (std::size_t label = 0; label < k; ++label) child_for(label);
        }
    }
};

}  // namespace

KCenterTrial kcenter_trial(const OutlierInstance& inst, std::size_t k,
                           const BiCriteriaParams& params, Algorithm algo, GuessMode mode,
                           RngStream& rng, const std::optional<std::vector<std::size_t>>& guess) {
    if (k == 0) throw InputError("k must be positive");
    inst.validate();
    const bool sub = algo == Algorithm::sublinear;
    params.validate(sub);
    const PointSet& P = inst.P;
    const ApproxParams ap = params.approx();
    const std::size_t zk = kcenter_rounds(k, params);
    if (guess) {
        if (guess->size() != zk) throw InputError("guess sequence must have length k * z");
        for (std::size_t g : *guess)
            if (g >= k) throw InputError("guess labels must lie in [0, k)");
    } else if (mode == GuessMode::enumerate) {
        const std::uint64_t leaves = kcenter_branch_count(k, params);
        if (leaves > params.budget) throw BudgetError("k-center enumeration over budget", leaves, params.budget);
    }

    KCenterTrial out;
    out.inner_capped = ap.inner_capped;
    const SamplingPlan plan =
        sub ? params.plan(P.size(), inst.gamma) : SamplingPlan::exact(P.size(), inst.gamma, params.delta);
    out.uas_fallback = sub && plan.exact_uas;
    out.sandwich_fallback = sub && plan.exact_sandwich;

    NodeState root{std::vector<CenterSolver>(k, CenterSolver(P.dim())), std::vector<Point>(k), rng};
    const std::size_t first = root.rng.uniform_index(P.size());
    root.solvers[0].add(P[first]);
    root.centers[0] = root.solvers[0].solve(ap.inner_iters, &out.counter).center;

    Walker w{P, k, zk, ap.inner_iters, algo, mode, guess, plan, KBallFamily{k}, out};
    w.visit(root, 0);

    for (std::size_t i = 1; i < out.candidates.size(); ++i)
        if (out.candidates[i].size < out.candidates[out.best].size) out.best = i;
    return out;
}

std::uint64_t kcenter_required_repeats(std::size_t k, Algorithm algo, GuessMode mode,
                                       double gamma, const BiCriteriaParams& params) {
    if (!params.theory_mode) return params.repeats;
    const std::size_t zk = kcenter_rounds(k, params);
    std::uint64_t r = algo == Algorithm::linear
                          ? linear_repeat_count(gamma, params.delta, zk, params.c3)
                          : sublinear_repeat_count(gamma, params.delta, params.eta1, zk, params.c3);
    if (mode == GuessMode::random) {
        const std::uint64_t b = kcenter_branch_count(k, params);
        const double prod = static_cast<double>(r) * static_cast<double>(b);
        r = prod >= 1.8e19 ? std::numeric_limits<std::uint64_t>::max() : r * b;
    }
    if (r > params.budget) throw BudgetError("theory-mode repetition count over budget", r, params.budget);
    return r;
}

KCenterReport kcenter_solve(const OutlierInstance& inst, std::size_t k,
                            const BiCriteriaParams& params, Algorithm algo, GuessMode mode,
                            std::uint64_t seed, const KCenterOptions& opts) {
    if (k == 0) throw InputError("k must be positive");
    params.validate(algo == Algorithm::sublinear);
    const std::uint64_t R = kcenter_required_repeats(k, algo, mode, inst.gamma, params);
    BiCriteriaParams run = params;
    if (algo == Algorithm::sublinear && (params.theory_mode || opts.scale_eta2)) {
        const double leaves =
            mode == GuessMode::enumerate ? static_cast<double>(kcenter_branch_count(k, params)) : 1.0;
        const double nodes = static_cast<double>(kcenter_rounds(k, params) + 1);
        run.eta2 = 1.0 / (4.0 * nodes * leaves * static_cast<double>(R));
    }

    struct Local {
        std::optional<KCenterReport> best;
        EvalCounter counter;
        bool uas = false, sandwich = false, capped = false;
        std::size_t branches = 0;
    };
    const std::size_t W = effective_workers(R, opts.workers);
    std::vector<Local> locals(W);
    for_each_rep(R, W, [&](std::size_t rep, std::size_t w) {
        RngStream rng(seed, rep);
        const KCenterTrial trial = kcenter_trial(inst, k, run, algo, mode, rng);
        Local& loc = locals[w];
        loc.counter += trial.counter;
        loc.uas |= trial.uas_fallback;
        loc.sandwich |= trial.sandwich_fallback;
        loc.capped |= trial.inner_capped;
        loc.branches = trial.branches;
        const KCenterCandidate& c = trial.candidates[trial.best];
        if (!loc.best || c.size < loc.best->radius ||
            (c.size == loc.best->radius && rep < loc.best->repetition)) {
            KCenterReport r;
            r.centers = c.centers;
            r.radius = c.size;
            r.round = c.round;
            r.repetition = rep;
            loc.best = std::move(r);
        }
    });

    KCenterReport out;
    bool have = false;
    EvalCounter total;
    bool uas = false, sandwich = false, capped = false;
    std::size_t branches = 0;
    for (const Local& loc : locals) {
        total += loc.counter;
        uas |= loc.uas;
        sandwich |= loc.sandwich;
        capped |= loc.capped;
        branches = std::max(branches, loc.branches);
        if (!loc.best) continue;
        if (!have || loc.best->radius < out.radius ||
            (loc.best->radius == out.radius && loc.best->repetition < out.repetition)) {
            out = *loc.best;
            have = true;
        }
    }
    out.counter = total;
    out.repetitions_used = static_cast<std::size_t>(R);
    out.branches = branches;
    out.uas_fallback = uas;
    out.sandwich_fallback = sandwich;
    out.inner_capped = capped;
    if (opts.final_scan) {
        const KBallFamily fam{k};
        const std::size_t outside = count_outside(inst.P, out.centers, out.radius, fam);
        out.excluded = outside;
        out.covered = inst.P.size() - outside;
    }
    return out;
}

}  // namespace subgeo
