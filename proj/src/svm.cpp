#include "subgeo/svm.hpp"

#include <cmath>
#include <limits>

#include "subgeo/errors.hpp"
#include "subgeo/parallel.hpp"

namespace subgeo {

std::string to_string(GilbertStatus s) {
    switch (s) {
        case GilbertStatus::certified: return "certified";
        case GilbertStatus::max_iter: return "max_iter";
        case GilbertStatus::inseparable: return "inseparable";
    }
    return "unknown";
}

namespace {

// Closest point to the origin on [v, p]; returns the step length.
double segment_step(Point& v, PointView p) {
    const std::size_t d = v.dim();
    double num = 0.0, den = 0.0;
    for (std::size_t k = 0; k < d; ++k) {
        const double e = v[k] - p[k];
        num += v[k] * e;
        den += e * e;
    }
    if (den == 0.0) return 0.0;
    const double a = std::clamp(num / den, 0.0, 1.0);
    for (std::size_t k = 0; k < d; ++k) v[k] += a * (p[k] - v[k]);
    return a;
}

void fill_bracket(const PointSet& P, GilbertState& s) {
    s.norm_v = norm(s.v);
    double mn = std::numeric_limits<double>::infinity();
    double far = 0.0;
    for (std::size_t i = 0; i < P.size(); ++i) {
        mn = std::min(mn, dot(P[i], s.v));
        far = std::max(far, dist_sq_unchecked(P[i], s.v));
    }
    s.cert = s.norm_v > 0.0 ? mn / s.norm_v : 0.0;
    s.cert_gap = s.norm_v - s.cert;
    s.implied_E = s.cert > 0.0 ? 4.0 * far / (s.cert * s.cert) : kInfiniteSize;
}

Point unit(const Point& v, double nv) {
    Point u(v.dim());
    for (std::size_t k = 0; k < v.dim(); ++k) u[k] = v[k] / nv;
    return u;
}

Point negate(const Point& u) {
    Point m(u.dim());
    for (std::size_t k = 0; k < u.dim(); ++k) m[k] = -u[k];
    return m;
}

}  // namespace

GilbertState gilbert(const PointSet& P, double epsilon, std::size_t max_iter,
                     const std::function<void(const GilbertState&)>& observer) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw InputError("epsilon must lie in (0,1)");
    double scale = 0.0;
    std::size_t start = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < P.size(); ++i) {
        const double n2 = dot(P[i], P[i]);
        scale = std::max(scale, n2);
        if (n2 < best) {
            best = n2;
            start = i;
        }
    }
    scale = std::sqrt(scale);

    GilbertState s;
    s.v = P.point(start);
    for (;;) {
        fill_bracket(P, s);
        if (s.norm_v <= 1e-15 * scale) {
            s.status = GilbertStatus::inseparable;
            return s;
        }
        if (s.cert >= (1.0 - epsilon) * s.norm_v) {
            s.status = GilbertStatus::certified;
            return s;
        }
        if (s.iter >= max_iter) {
            s.status = s.cert <= 0.0 ? GilbertStatus::inseparable : GilbertStatus::max_iter;
            return s;
        }
        std::size_t pi = 0;
        double mn = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < P.size(); ++i) {
            const double pr = dot(P[i], s.v);
            if (pr < mn) {
                mn = pr;
                pi = i;
            }
        }
        segment_step(s.v, P[pi]);
        ++s.iter;
        if (observer) {
            GilbertState snap = s;
            fill_bracket(P, snap);
            observer(snap);
        }
    }
}

double HalfSpaceFamily::projection(const Center& u, PointView p) const {
    if (origin.dim() == 0) return dot(p, u);
    double s = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k) s += (p[k] - origin[k]) * u[k];
    return s;
}

HalfSpaceFamily::Center HalfSpaceFamily::random_center(RngStream& rng, std::size_t d) const {
    Point u(d);
    double s = 0.0;
    while (s < 1e-12) {
        s = 0.0;
        for (std::size_t k = 0; k < d; ++k) {
            u[k] = rng.normal();
            s += u[k] * u[k];
        }
    }
    return unit(u, std::sqrt(s));
}

Point HalfSpaceFamily::random_point(RngStream& rng, std::size_t d) const {
    Point p(d);
    for (std::size_t k = 0; k < d; ++k) p[k] = 2.0 * rng.normal();
    return p;
}

MarginReport svm1_outliers(const OutlierInstance& inst, const BiCriteriaParams& params,
                           Algorithm algo, RngStream& rng, bool scan) {
    inst.validate();
    const bool sub = algo == Algorithm::sublinear;
    params.validate(sub);
    const PointSet& P = inst.P;
    const std::size_t z = params.rounds();
    const SamplingPlan plan =
        sub ? params.plan(P.size(), inst.gamma) : SamplingPlan::exact(P.size(), inst.gamma, params.delta);
    const HalfSpaceFamily fam;

    MarginReport out;
    out.uas_fallback = sub && plan.exact_uas;
    out.sandwich_fallback = sub && plan.exact_sandwich;
    out.rounds = z;
    out.repetition = rng.stream();
    out.infeasible = true;

    Point v = P.point(rng.uniform_index(P.size()));
    for (std::size_t i = 1; i <= z; ++i) {
        const double nv = norm(v);
        if (!(nv > 0.0)) break;
        const Point u = unit(v, nv);
        std::size_t q = 0;
        double l = 0.0;
        if (sub) {
            q = generalized_uas(P, u, plan, fam, rng, &out.counter);
            l = generalized_sandwich(P, u, plan, fam, rng, &out.counter).size;
        } else {
            const FarStep st = exact_far_step(P, u, plan.t, fam, rng, &out.counter);
            q = st.index;
            l = st.size;
        }
        if (std::isfinite(l)) {
            const double margin = 1.0 / l;
            if (out.infeasible || margin > out.margin) {
                out.infeasible = false;
                out.margin = margin;
                out.direction = u;
                out.round = i;
            }
        } else {
            ++out.infeasible_rounds;
            if (out.direction.dim() == 0) out.direction = u;
        }
        segment_step(v, P[q]);
    }
    if (out.direction.dim() == 0) out.direction = Point(P.dim());
    if (scan) svm1_scan(P, out);
    return out;
}

MarginReport svm2_outliers(const TwoClassInstance& inst, const BiCriteriaParams& params,
                           Algorithm algo, RngStream& rng, bool scan, bool flip_sign) {
    inst.validate();
    const bool sub = algo == Algorithm::sublinear;
    params.validate(sub);
    const PointSet& P1 = inst.P1;
    const PointSet& P2 = inst.P2;
    const std::size_t d = P1.dim();
    const std::size_t z = params.rounds();
    auto make_plan = [&](const PointSet& P, double g) {
        return sub ? params.plan(P.size(), g) : SamplingPlan::exact(P.size(), g, params.delta);
    };
    const SamplingPlan plan1 = make_plan(P1, inst.gamma1);
    const SamplingPlan plan2 = make_plan(P2, inst.gamma2);
    const HalfSpaceFamily sel;
    const double sigma = flip_sign ? -1.0 : 1.0;

    MarginReport out;
    out.uas_fallback = sub && (plan1.exact_uas || plan2.exact_uas);
    out.sandwich_fallback = sub && (plan1.exact_sandwich || plan2.exact_sandwich);
    out.rounds = z;
    out.repetition = rng.stream();
    out.infeasible = true;

    Point w1 = P1.point(rng.uniform_index(P1.size()));
    Point w2 = P2.point(rng.uniform_index(P2.size()));
    for (std::size_t i = 1; i <= z; ++i) {
        Point v(d), mid(d);
        for (std::size_t k = 0; k < d; ++k) {
            v[k] = sigma * (w1[k] - w2[k]);
            mid[k] = 0.5 * (w1[k] + w2[k]);
        }
        const double nv = norm(v);
        if (!(nv > 0.0)) break;
        const Point u = unit(v, nv);
        const Point minus_u = negate(u);
        // Class 1 is expected on the side of w1 - w2.
        const Point u1 = flip_sign ? minus_u : u;
        const Point u2 = negate(u1);
        const HalfSpaceFamily at_mid{mid};

        std::size_t q1 = 0, q2 = 0;
        double l1 = 0.0, l2 = 0.0;
        if (sub) {
            q1 = generalized_uas(P1, u, plan1, sel, rng, &out.counter);
            q2 = generalized_uas(P2, minus_u, plan2, sel, rng, &out.counter);
            l1 = generalized_sandwich(P1, u1, plan1, at_mid, rng, &out.counter).size;
            l2 = generalized_sandwich(P2, u2, plan2, at_mid, rng, &out.counter).size;
        } else {
            q1 = exact_far_step(P1, u, plan1.t, sel, rng, &out.counter).index;
            q2 = exact_far_step(P2, minus_u, plan2.t, sel, rng, &out.counter).index;
            const auto f1 = rank_all(P1, u1, at_mid, &out.counter);
            const auto f2 = rank_all(P2, u2, at_mid, &out.counter);
            l1 = at_mid.size_of_rank(f1[select_rank(f1, {}, plan1.t + 1)]);
            l2 = at_mid.size_of_rank(f2[select_rank(f2, {}, plan2.t + 1)]);
        }
        if (std::isfinite(l1) && std::isfinite(l2)) {
            const double sp = 1.0 / l1, st = 1.0 / l2;
            if (out.infeasible || sp + st > out.margin) {
                out.infeasible = false;
                out.margin = sp + st;
                out.s_perp = sp;
                out.s_top = st;
                out.direction = u1;
                out.origin = mid;
                out.round = i;
            }
        } else {
            ++out.infeasible_rounds;
            if (out.direction.dim() == 0) {
                out.direction = u1;
                out.origin = mid;
            }
        }

        // Gilbert step on the difference set, carrying both witnesses.
        const PointView p1 = P1[q1];
        const PointView p2 = P2[q2];
        double num = 0.0, den = 0.0;
        for (std::size_t k = 0; k < d; ++k) {
            const double e = v[k] - sigma * (p1[k] - p2[k]);
            num += v[k] * e;
            den += e * e;
        }
        const double a = den > 0.0 ? std::clamp(num / den, 0.0, 1.0) : 0.0;
        for (std::size_t k = 0; k < d; ++k) {
            w1[k] += a * (p1[k] - w1[k]);
            w2[k] += a * (p2[k] - w2[k]);
        }
    }
    if (out.direction.dim() == 0) {
        out.direction = Point(d);
        out.origin = Point(d);
    }
    if (scan) svm2_scan(inst, out);
    return out;
}

void svm1_scan(const PointSet& P, MarginReport& report) {
    if (report.direction.dim() != P.dim()) throw InputError("svm1_scan: dimension mismatch");
    const double thr = report.margin - 1e-12 * std::max(1.0, std::abs(report.margin));
    std::size_t out = 0;
    for (std::size_t i = 0; i < P.size(); ++i)
        if (dot(P[i], report.direction) < thr) ++out;
    report.excluded = {out};
    report.covered = {P.size() - out};
}

void svm2_scan(const TwoClassInstance& inst, MarginReport& report) {
    const std::size_t d = inst.P1.dim();
    if (report.direction.dim() != d || report.origin.dim() != d)
        throw InputError("svm2_scan: dimension mismatch");
    auto count = [&](const PointSet& P, double sign, double s) {
        const double thr = s - 1e-12 * std::max(1.0, std::abs(s));
        std::size_t out = 0;
        for (std::size_t i = 0; i < P.size(); ++i) {
            double pr = 0.0;
            for (std::size_t k = 0; k < d; ++k)
                pr += (P[i][k] - report.origin[k]) * sign * report.direction[k];
            if (pr < thr) ++out;
        }
        return out;
    };
    const std::size_t e1 = count(inst.P1, 1.0, report.s_perp);
    const std::size_t e2 = count(inst.P2, -1.0, report.s_top);
    report.excluded = {e1, e2};
    report.covered = {inst.P1.size() - e1, inst.P2.size() - e2};
}

namespace {

template <class Trial>
MarginReport best_of(std::size_t R, std::size_t workers, std::uint64_t seed, Trial&& trial) {
    struct Local {
        std::optional<MarginReport> best;
        EvalCounter counter;
        bool uas = false, sandwich = false;
    };
    const std::size_t W = effective_workers(R, workers);
    std::vector<Local> locals(W);
    auto better = [](const MarginReport& a, const MarginReport& b) {
        if (a.infeasible != b.infeasible) return !a.infeasible;
        if (a.margin != b.margin) return a.margin > b.margin;
        return a.repetition < b.repetition;
    };
    for_each_rep(R, W, [&](std::size_t rep, std::size_t w) {
        RngStream rng(seed, rep);
        MarginReport r = trial(rng);
        Local& loc = locals[w];
        loc.counter += r.counter;
        loc.uas |= r.uas_fallback;
        loc.sandwich |= r.sandwich_fallback;
        if (!loc.best || better(r, *loc.best)) loc.best = std::move(r);
    });
    MarginReport out;
    bool have = false;
    EvalCounter total;
    bool uas = false, sandwich = false;
    for (const Local& loc : locals) {
        total += loc.counter;
        uas |= loc.uas;
        sandwich |= loc.sandwich;
        if (loc.best && (!have || better(*loc.best, out))) {
            out = *loc.best;
            have = true;
        }
    }
    out.counter = total;
    out.repetitions_used = R;
    out.uas_fallback = uas;
    out.sandwich_fallback = sandwich;
    return out;
}

BiCriteriaParams scaled_run(const BiCriteriaParams& params, Algorithm algo, bool scale_eta2,
                            std::uint64_t R) {
    BiCriteriaParams run = params;
    if (algo == Algorithm::sublinear && (params.theory_mode || scale_eta2))
        run.eta2 = 1.0 / (4.0 * static_cast<double>(params.rounds()) * static_cast<double>(R));
    return run;
}

}  // namespace

MarginReport svm1_solve(const OutlierInstance& inst, const BiCriteriaParams& params,
                        Algorithm algo, std::uint64_t seed, const SvmOptions& opts) {
    params.validate(algo == Algorithm::sublinear);
    const std::uint64_t R = required_repeats(algo, inst.gamma, params);
    const BiCriteriaParams run = scaled_run(params, algo, opts.scale_eta2, R);
    MarginReport out = best_of(R, opts.workers, seed, [&](RngStream& rng) {
        return svm1_outliers(inst, run, algo, rng, false);
    });
    if (opts.final_scan) svm1_scan(inst.P, out);
    return out;
}

MarginReport svm2_solve(const TwoClassInstance& inst, const BiCriteriaParams& params,
                        Algorithm algo, std::uint64_t seed, const SvmOptions& opts) {
    params.validate(algo == Algorithm::sublinear);
    const double g = std::max(inst.gamma1, inst.gamma2);
    const std::uint64_t R = required_repeats(algo, g, params);
    const BiCriteriaParams run = scaled_run(params, algo, opts.scale_eta2, R);
    MarginReport out = best_of(R, opts.workers, seed, [&](RngStream& rng) {
        return svm2_outliers(inst, run, algo, rng, false, opts.flip_sign);
    });
    if (opts.final_scan) svm2_scan(inst, out);
    return out;
}

}  // namespace subgeo
