#ifndef SUBGEO_MEX_HPP
#define SUBGEO_MEX_HPP

#include <cmath>
#include <concepts>
#include <cstddef>
#include <limits>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "subgeo/errors.hpp"
#include "subgeo/geometry.hpp"
#include "subgeo/sampling.hpp"

namespace subgeo {

inline constexpr double kInfiniteSize = std::numeric_limits<double>::infinity();

/// A family of shapes x(c, size) with a ranking function f(c, p).
///
/// min_enclosing_size must be a non-decreasing function of rank for a fixed
/// center; families expose that map as size_of_rank so callers that already
/// hold a rank need not re-evaluate the point. Sizes may be +inf.
template <class F>
concept ShapeFamily =
    requires(const F& fam, const typename F::Center& c, PointView p, double v, RngStream& rng,
             std::size_t d) {
        typename F::Center;
        { fam.rank(c, p) } -> std::convertible_to<double>;
        { fam.size_of_rank(v) } -> std::convertible_to<double>;
        { fam.min_enclosing_size(c, p) } -> std::convertible_to<double>;
        { fam.contains(c, v, p) } -> std::convertible_to<bool>;
        { fam.in_domain(c, p) } -> std::convertible_to<bool>;
        { fam.random_center(rng, d) } -> std::same_as<typename F::Center>;
        { fam.random_size(rng) } -> std::convertible_to<double>;
        { fam.random_point(rng, d) } -> std::same_as<Point>;
    };

/// Euclidean balls: f = ||p - c||, size = radius.
struct BallFamily {
    using Center = Point;

    double rank(const Center& c, PointView p) const { return dist(p, c); }
    double size_of_rank(double f) const { return f; }
    double min_enclosing_size(const Center& c, PointView p) const { return rank(c, p); }
    bool contains(const Center& c, double size, PointView p) const { return dist(p, c) <= size; }
    bool in_domain(const Center&, PointView) const { return true; }
    Center random_center(RngStream& rng, std::size_t d) const;
    double random_size(RngStream& rng) const { return 3.0 * rng.uniform01(); }
    Point random_point(RngStream& rng, std::size_t d) const;
};

// ---------------------------------------------------------------------------
// Ranking and selection

/// Positions of the m highest-ranked entries of f, ordered by larger f, then
/// smaller key, then smaller position. `top` is sorted by position; `next` is
/// the position ranked m+1 (or f.size() when m == f.size()).
struct RankedSelection {
    std::vector<std::size_t> top;
    std::size_t next = 0;
};

RankedSelection select_top(std::span<const double> f, std::span<const std::size_t> keys,
                           std::size_t m);
RankedSelection select_top(std::span<const double> f, std::size_t m);

/// Position ranked k (1-based) under the same order, without building `top`.
std::size_t select_rank(std::span<const double> f, std::span<const std::size_t> keys,
                        std::size_t k);

template <ShapeFamily F>
std::vector<double> rank_all(const PointSet& P, const typename F::Center& c, const F& fam,
                             EvalCounter* counter = nullptr) {
    std::vector<double> f(P.size());
    for (std::size_t i = 0; i < P.size(); ++i) f[i] = fam.rank(c, P[i]);
    if (counter) {
        counter->distance_evals += P.size();
        counter->points_touched += P.size();
    }
    return f;
}

/// The m farthest points and the size of the shape touching the (m+1)-th.
struct FarthestSplit {
    std::vector<std::size_t> Q;  // sorted ascending
    double threshold = 0.0;      // min_enclosing_size of the (m+1)-th point, may be +inf
    std::size_t threshold_index = 0;
};

/// 0 <= m < n.
template <ShapeFamily F>
FarthestSplit farthest_split(const PointSet& P, const typename F::Center& c, std::size_t m,
                             const F& fam, EvalCounter* counter = nullptr) {
    if (m >= P.size()) throw InputError("farthest_split: m must be below n");
    const auto f = rank_all(P, c, fam, counter);
    auto sel = select_top(f, m);
    FarthestSplit out;
    out.Q = std::move(sel.top);
    out.threshold_index = sel.next;
    out.threshold = fam.size_of_rank(f[sel.next]);
    return out;
}

/// Indices of the m farthest points under f, ties to the smallest index.
template <ShapeFamily F>
std::vector<std::size_t> farthest_set(const PointSet& P, const typename F::Center& c,
                                      std::size_t m, const F& fam,
                                      EvalCounter* counter = nullptr) {
    if (m == 0 || m > P.size()) throw InputError("farthest_set: m must lie in [1, n]");
    const auto f = rank_all(P, c, fam, counter);
    return select_top(f, m).top;
}

/// Size l with P \ x(c, l) equal to farthest_set(P, c, m). 1 <= m < n.
/// Returns +inf when the (m+1)-th point cannot be enclosed from c.
template <ShapeFamily F>
double threshold_size(const PointSet& P, const typename F::Center& c, std::size_t m,
                      const F& fam, EvalCounter* counter = nullptr) {
    if (m == 0 || m >= P.size()) throw InputError("threshold_size: m must lie in [1, n)");
    return farthest_split(P, c, m, fam, counter).threshold;
}

/// One linear-mode round: the size touching the (t+1)-th farthest point and
/// a uniform member of the t farthest (the farthest itself when t = 0).
struct FarStep {
    std::size_t index = 0;
    double size = 0.0;
};

template <ShapeFamily F>
FarStep exact_far_step(const PointSet& P, const typename F::Center& c, std::size_t t,
                       const F& fam, RngStream& rng, EvalCounter* counter = nullptr) {
    if (t >= P.size()) throw InputError("exact_far_step: t must be below n");
    const auto f = rank_all(P, c, fam, counter);
    const auto sel = select_top(f, t);
    FarStep out;
    out.size = fam.size_of_rank(f[sel.next]);
    out.index = t > 0 ? sel.top[rng.uniform_index(sel.top.size())] : sel.next;
    return out;
}

// ---------------------------------------------------------------------------
// Sampling lemmas over a family

/// Ranks of P[idx[j]], with rows prefetched ahead of use: sampled rows are
/// scattered, so large inputs would otherwise stall on every access.
template <ShapeFamily F>
std::vector<double> rank_sample(const PointSet& P, const typename F::Center& c,
                                const std::vector<std::size_t>& idx, const F& fam,
                                EvalCounter* counter = nullptr) {
    constexpr std::size_t kAhead = 64;
    const std::size_t row_bytes = P.dim() * sizeof(double);
    auto prefetch = [&](std::size_t i) {
        const char* row = reinterpret_cast<const char*>(P[i].data());
        for (std::size_t b = 0; b < row_bytes; b += 64) __builtin_prefetch(row + b);
    };
    for (std::size_t j = 0; j < std::min(kAhead, idx.size()); ++j) prefetch(idx[j]);
    std::vector<double> f(idx.size());
    for (std::size_t j = 0; j < idx.size(); ++j) {
        if (j + kAhead < idx.size()) prefetch(idx[j + kAhead]);
        f[j] = fam.rank(c, P[idx[j]]);
    }
    if (counter) {
        counter->distance_evals += idx.size();
        counter->points_touched += idx.size();
    }
    return f;
}

struct UasDraw {
    std::size_t index = 0;             // chosen point, index into P
    std::vector<std::size_t> q_prime;  // Q' as P indices (with multiplicity)
    bool exact = false;
};

/// Uniform-adaptive sampling. Sample mode draws n' points with replacement,
/// keeps the t' farthest and returns a uniform member. Exact mode (n' >= n)
/// uses the t farthest of P itself; with t = 0 it falls back to the farthest
/// point.
template <ShapeFamily F>
UasDraw generalized_uas_draw(const PointSet& P, const typename F::Center& c,
                             const SamplingPlan& plan, const F& fam, RngStream& rng,
                             EvalCounter* counter = nullptr) {
    if (plan.n != P.size()) throw InputError("sampling plan was built for a different n");
    UasDraw out;
    out.exact = plan.exact_uas;
    if (plan.exact_uas) {
        const auto f = rank_all(P, c, fam, counter);
        out.q_prime = select_top(f, plan.t == 0 ? 1 : plan.t).top;
    } else {
        const auto idx = sample_indices(P.size(), plan.n_prime, rng);
        const auto f = rank_sample(P, c, idx, fam, counter);
        const auto sel = select_top(f, idx, plan.t_prime);
        out.q_prime.reserve(sel.top.size());
        for (std::size_t pos : sel.top) out.q_prime.push_back(idx[pos]);
    }
    out.index = out.q_prime[rng.uniform_index(out.q_prime.size())];
    return out;
}

template <ShapeFamily F>
std::size_t generalized_uas(const PointSet& P, const typename F::Center& c,
                            const SamplingPlan& plan, const F& fam, RngStream& rng,
                            EvalCounter* counter = nullptr) {
    return generalized_uas_draw(P, c, plan, fam, rng, counter).index;
}

struct SandwichResult {
    double size = 0.0;  // may be +inf
    bool exact = false;
};

/// Sandwich estimate: the size touching the (t''+1)-th farthest of n''
/// samples; in exact mode the (ceil((1+delta)^2 gamma n)+1)-th farthest of P.
template <ShapeFamily F>
SandwichResult generalized_sandwich(const PointSet& P, const typename F::Center& c,
                                    const SamplingPlan& plan, const F& fam, RngStream& rng,
                                    EvalCounter* counter = nullptr) {
    if (plan.n != P.size()) throw InputError("sampling plan was built for a different n");
    SandwichResult out;
    out.exact = plan.exact_sandwich;
    if (plan.exact_sandwich) {
        const auto f = rank_all(P, c, fam, counter);
        out.size = fam.size_of_rank(f[select_rank(f, {}, plan.t_dprime_exact + 1)]);
    } else {
        const auto idx = sample_indices(P.size(), plan.n_dprime, rng);
        const auto f = rank_sample(P, c, idx, fam, counter);
        out.size = fam.size_of_rank(f[select_rank(f, idx, plan.t_dprime + 1)]);
    }
    return out;
}

/// Number of points of P outside x(c, size).
template <ShapeFamily F>
std::size_t count_outside(const PointSet& P, const typename F::Center& c, double size,
                          const F& fam) {
    std::size_t k = 0;
    for (std::size_t i = 0; i < P.size(); ++i)
        if (!fam.contains(c, size, P[i])) ++k;
    return k;
}

// ---------------------------------------------------------------------------
// Property checks

struct LawReport {
    std::size_t triples = 0;
    std::size_t skipped = 0;  // draws rejected by in_domain
    std::size_t nesting_failures = 0;
    std::size_t order_failures = 0;
    std::size_t touching_failures = 0;
    std::string witness;  // first counterexample, empty when none

    bool passed() const {
        return triples > 0 && nesting_failures == 0 && order_failures == 0 &&
               touching_failures == 0;
    }
};

/// Tests nesting, order consistency and touching minimality on `triples`
/// random (center, size, point) draws whose points lie in the family's domain.
template <ShapeFamily F>
LawReport check_family_laws(const F& fam, std::size_t dim, std::size_t triples, RngStream& rng) {
    LawReport rep;
    auto note = [&](const char* law, double s, PointView p) {
        if (!rep.witness.empty()) return;
        std::ostringstream os;
        os.precision(17);
        os << law << " violated at size " << s << ", point (";
        for (std::size_t k = 0; k < p.size(); ++k) os << (k ? "," : "") << p[k];
        os << ")";
        rep.witness = os.str();
    };

    const std::size_t max_attempts = triples * 100 + 100;
    for (std::size_t attempt = 0; rep.triples < triples && attempt < max_attempts; ++attempt) {
        const auto c = fam.random_center(rng, dim);
        const Point p = fam.random_point(rng, dim);
        const Point p0 = fam.random_point(rng, dim);
        if (!fam.in_domain(c, p) || !fam.in_domain(c, p0)) {
            ++rep.skipped;
            continue;
        }
        ++rep.triples;
        double s1 = fam.random_size(rng);
        double s2 = fam.random_size(rng);
        if (s1 > s2) std::swap(s1, s2);
        const double mp = fam.min_enclosing_size(c, p);
        const double mp0 = fam.min_enclosing_size(c, p0);

        // Nesting, on random sizes and on the touching size of p.
        bool nest_ok = !fam.contains(c, s1, p) || fam.contains(c, s2, p);
        if (std::isfinite(mp)) {
            const double grown = mp * (1.0 + rng.uniform01()) + s1;
            nest_ok = nest_ok && (!fam.contains(c, mp, p) || fam.contains(c, grown, p));
        }
        if (!nest_ok) {
            ++rep.nesting_failures;
            note("nesting", s1, p);
        }

        // Order consistency, with p0 on the boundary of x(c, mp0) and inside x(c, s2).
        bool order_ok = true;
        const bool p_not_farther = fam.rank(c, p) <= fam.rank(c, p0);
        for (double r : {mp0, s2}) {
            if (!std::isfinite(r) || !fam.contains(c, r, p0)) continue;
            if (p_not_farther && !fam.contains(c, r, p)) order_ok = false;
        }
        if (!order_ok) {
            ++rep.order_failures;
            note("order", mp0, p);
        }

        // Touching minimality.
        bool touch_ok = true;
        if (std::isfinite(mp)) {
            if (mp < 0.0 || !fam.contains(c, mp, p)) touch_ok = false;
            if (mp > 0.0) {
                const double below = std::nextafter(mp, 0.0);
                const double random_below = mp * rng.uniform01();
                if (fam.contains(c, below, p) || fam.contains(c, random_below, p))
                    touch_ok = false;
            }
        } else {
            if (fam.contains(c, s1, p) || fam.contains(c, s2, p) ||
                fam.contains(c, std::numeric_limits<double>::max(), p))
                touch_ok = false;
        }
        if (!touch_ok) {
            ++rep.touching_failures;
            note("touching", mp, p);
        }
    }
    return rep;
}

}  // namespace subgeo

#endif  // SUBGEO_MEX_HPP
