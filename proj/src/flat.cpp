#include "subgeo/flat.hpp"

#include <cmath>
#include <numbers>

#include "subgeo/errors.hpp"
#include "subgeo/parallel.hpp"

namespace subgeo {

double dist_flat(const Flat& F, PointView p) {
    const std::size_t d = F.dim();
    if (p.size() != d) throw InputError("dist_flat: dimension mismatch");
    std::vector<double> r(d);
    for (std::size_t k = 0; k < d; ++k) r[k] = p[k] - F.anchor[k];
    for (const Point& b : F.basis) {
        const double c = dot(r, b);
        for (std::size_t k = 0; k < d; ++k) r[k] -= c * b[k];
    }
    return norm(r);
}

Flat line_through(PointView a, PointView b) {
    if (a.size() != b.size()) throw InputError("line_through: dimension mismatch");
    Point u(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) u[k] = b[k] - a[k];
    const double len = norm(u);
    if (!(len > 0.0)) throw InputError("line_through: points coincide");
    for (std::size_t k = 0; k < a.size(); ++k) u[k] /= len;
    return Flat{Point(a), {std::move(u)}};
}

SlabFamily::Center SlabFamily::random_center(RngStream& rng, std::size_t d) const {
    Point a(d), u(d);
    double s = 0.0;
    while (s < 1e-12) {
        s = 0.0;
        for (std::size_t k = 0; k < d; ++k) {
            u[k] = rng.normal();
            s += u[k] * u[k];
        }
    }
    for (std::size_t k = 0; k < d; ++k) {
        u[k] /= std::sqrt(s);
        a[k] = rng.normal();
    }
    return Flat{std::move(a), {std::move(u)}};
}

Point SlabFamily::random_point(RngStream& rng, std::size_t d) const {
    Point p(d);
    for (std::size_t k = 0; k < d; ++k) p[k] = 2.0 * rng.normal();
    return p;
}

FlatParams FlatParams::make(double epsilon, double delta, double c5, std::size_t nu_override,
                            std::size_t M_override) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw InputError("epsilon must lie in (0,1)");
    if (!(delta > 0.0 && delta < 1.0)) throw InputError("delta must lie in (0,1)");
    if (!(c5 > 0.0)) throw InputError("c5 must be positive");
    FlatParams p;
    p.epsilon = epsilon;
    p.delta = delta;
    p.c5 = c5;
    p.nu = nu_override ? nu_override
                       : ceil_count(c5 * std::log(1.0 / epsilon) / (epsilon * epsilon * epsilon));
    if (p.nu == 0) p.nu = 1;
    p.delta0 = delta / static_cast<double>(p.nu + 1);
    p.M = M_override ? M_override
                     : std::max<std::size_t>(64, ceil_count(8.0 * std::numbers::pi / epsilon));
    return p;
}

InitLine init_line(const PointSet& P, double gamma, double delta0, RngStream& rng,
                   EvalCounter* counter) {
    const std::size_t n = P.size();
    if (n < 2) throw InputError("init_line needs at least two points");
    if (!(gamma >= 0.0 && gamma < 1.0)) throw InputError("gamma must lie in [0,1)");
    if (!(delta0 > 0.0 && delta0 < 1.0)) throw InputError("delta0 must lie in (0,1)");
    std::size_t m = ceil_count((1.0 + delta0) * gamma * static_cast<double>(n));
    if (m >= n) m = n - 1;

    InitLine out;
    out.p_index = rng.uniform_index(n);
    const Point p = P.point(out.p_index);
    const auto f = rank_all(P, p, BallFamily{}, counter);
    const auto far = select_top(f, m == 0 ? 1 : m).top;
    for (out.attempts = 1; out.attempts <= 16; ++out.attempts) {
        out.q_index = far[rng.uniform_index(far.size())];
        if (f[out.q_index] > 0.0) {
            out.line = line_through(p, P[out.q_index]);
            return out;
        }
    }
    throw InputError("init_line: q_delta coincided with p_delta in 16 attempts");
}

namespace {

struct Estimator {
    const PointSet& P;
    Algorithm algo;
    std::size_t t;  // linear mode
    SamplingPlan plan;
    SlabFamily fam;

    double operator()(const Flat& F, RngStream& rng, EvalCounter* counter) const {
        if (algo == Algorithm::linear) {
            const auto f = rank_all(P, F, fam, counter);
            return f[select_rank(f, {}, t + 1)];
        }
        return generalized_sandwich(P, F, plan, fam, rng, counter).size;
    }
};

}  // namespace

FlatReport flat_fit_outliers(const OutlierInstance& inst, const FlatParams& fp,
                             const BiCriteriaParams& params, Algorithm algo, RngStream& rng,
                             bool scan) {
    inst.validate();
    const bool sub = algo == Algorithm::sublinear;
    params.validate(sub);
    if (fp.nu == 0 || fp.M == 0 || !(fp.delta0 > 0.0))
        throw InputError("flat parameters not initialized; use FlatParams::make");
    const PointSet& P = inst.P;
    const std::size_t n = P.size();
    const std::size_t d = P.dim();
    if (d < 2) throw InputError("line fitting needs d >= 2");

    const SamplingPlan far_exact = SamplingPlan::exact(n, inst.gamma, fp.delta0);
    const SamplingPlan far_plan =
        sub ? SamplingPlan::make(n, inst.gamma, fp.delta0, params.eta1, params.eta2, params.c1,
                                 params.c2)
            : far_exact;
    const SamplingPlan est_exact = SamplingPlan::exact(n, inst.gamma, params.delta);
    const Estimator estimate{P, algo, est_exact.t, sub ? params.plan(n, inst.gamma) : est_exact,
                             SlabFamily{}};
    const SlabFamily fam;

    FlatReport out;
    out.uas_fallback = sub && far_plan.exact_uas;
    out.sandwich_fallback = sub && estimate.plan.exact_sandwich;

    const InitLine init = init_line(P, inst.gamma, fp.delta0, rng, &out.counter);
    Flat line = init.line;
    double best = estimate(line, rng, &out.counter);
    out.estimates.push_back(best);

    const double M = static_cast<double>(fp.M);
    for (std::size_t round = 1; round <= fp.nu; ++round) {
        out.rounds = round;
        const std::size_t pi =
            sub ? generalized_uas(P, line, far_plan, fam, rng, &out.counter)
                : exact_far_step(P, line, far_plan.t, fam, rng, &out.counter).index;
        const PointView p = P[pi];
        const Point& u = line.basis[0];
        double along = 0.0;
        for (std::size_t k = 0; k < d; ++k) along += (p[k] - line.anchor[k]) * u[k];
        Point foot(d), w(d);
        for (std::size_t k = 0; k < d; ++k) {
            foot[k] = line.anchor[k] + along * u[k];
            w[k] = p[k] - foot[k];
        }
        const double wn = norm(w);
        if (!(wn > 1e-12 * std::max(1.0, norm(p)))) {
            ++out.skipped_rounds;
            out.estimates.push_back(best);
            continue;
        }
        for (std::size_t k = 0; k < d; ++k) w[k] /= wn;
        Point mid(d);
        for (std::size_t k = 0; k < d; ++k) mid[k] = 0.5 * (foot[k] + p[k]);

        Flat chosen = line;
        double chosen_size = best;
        for (const Point* anchor : {&foot, &mid}) {
            for (std::size_t m = 0; m < fp.M; ++m) {
                const double theta = std::numbers::pi * static_cast<double>(m) / M;
                const double c = std::cos(theta), s = std::sin(theta);
                Point dir(d);
                for (std::size_t k = 0; k < d; ++k) dir[k] = c * u[k] + s * w[k];
                const double dn = norm(dir);
                for (std::size_t k = 0; k < d; ++k) dir[k] /= dn;
                Flat cand{*anchor, {std::move(dir)}};
                const double size = estimate(cand, rng, &out.counter);
                if (size < chosen_size) {
                    chosen_size = size;
                    chosen = std::move(cand);
                }
            }
        }
        if (chosen_size < best) {
            best = chosen_size;
            line = std::move(chosen);
            ++out.adoptions;
        }
        out.estimates.push_back(best);
        if (best == 0.0) break;
    }

    out.line = std::move(line);
    out.width = best;
    out.repetition = rng.stream();
    if (scan) {
        const std::size_t outside = count_outside(P, out.line, out.width, fam);
        out.excluded = outside;
        out.covered = n - outside;
    }
    return out;
}

FlatReport flat_fit_solve(const OutlierInstance& inst, const FlatParams& fp,
                          const BiCriteriaParams& params, Algorithm algo, std::uint64_t seed,
                          const FlatOptions& opts) {
    const std::size_t R = params.repeats;
    if (R == 0) throw InputError("repeats must be positive");
    struct Local {
        std::optional<FlatReport> best;
        EvalCounter counter;
    };
    const std::size_t W = effective_workers(R, opts.workers);
    std::vector<Local> locals(W);
    for_each_rep(R, W, [&](std::size_t rep, std::size_t w) {
        RngStream rng(seed, rep);
        FlatReport r = flat_fit_outliers(inst, fp, params, algo, rng, false);
        Local& loc = locals[w];
        loc.counter += r.counter;
        if (!loc.best || r.width < loc.best->width ||
            (r.width == loc.best->width && rep < loc.best->repetition))
            loc.best = std::move(r);
    });
    FlatReport out;
    bool have = false;
    EvalCounter total;
    for (const Local& loc : locals) {
        total += loc.counter;
        if (!loc.best) continue;
        if (!have || loc.best->width < out.width ||
            (loc.best->width == out.width && loc.best->repetition < out.repetition)) {
            out = *loc.best;
            have = true;
        }
    }
    out.counter = total;
    out.repetitions_used = R;
    if (opts.final_scan) {
        const std::size_t outside = count_outside(inst.P, out.line, out.width, SlabFamily{});
        out.excluded = outside;
        out.covered = inst.P.size() - outside;
    }
    return out;
}

}  // namespace subgeo
