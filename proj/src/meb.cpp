#include "subgeo/meb.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "subgeo/errors.hpp"

namespace subgeo {

ApproxParams ApproxParams::from_epsilon(double epsilon, std::size_t inner_cap) {
    return make(epsilon, epsilon / (2.0 + epsilon), inner_cap);
}

ApproxParams ApproxParams::make(double epsilon, double s, std::size_t inner_cap) {
    if (!(epsilon > 0.0 && epsilon <= 1.0)) throw InputError("epsilon must lie in (0,1]");
    if (!(s > 0.0 && s < 1.0)) throw InputError("s must lie in (0,1)");
    if (inner_cap == 0) throw InputError("inner iteration cap must be positive");
    ApproxParams p;
    p.epsilon = epsilon;
    p.s = s;
    p.xi = s * epsilon / (1.0 + epsilon);
    p.z = ceil_count(2.0 / ((1.0 - s) * epsilon));
    const double iters = 1.0 / (p.xi * p.xi);
    if (iters > static_cast<double>(inner_cap)) {
        p.inner_iters = inner_cap;
        p.inner_capped = true;
    } else {
        p.inner_iters = ceil_count(iters);
    }
    return p;
}

void CenterSolver::grow() {
    const std::size_t new_cap = std::max<std::size_t>(8, cap_ * 2);
    std::vector<double> g(new_cap * new_cap, 0.0);
    for (std::size_t i = 0; i < m_; ++i)
        for (std::size_t j = 0; j < m_; ++j) g[i * new_cap + j] = gram_[i * cap_ + j];
    gram_.swap(g);
    cap_ = new_cap;
}

void CenterSolver::add(PointView p) {
    if (p.size() != dim_) throw InputError("CenterSolver::add: dimension mismatch");
    if (m_ == cap_) grow();
    pts_.insert(pts_.end(), p.begin(), p.end());
    const PointView t0 = point(0);
    const PointView pm = point(m_);
    std::vector<double> shifted(dim_);
    for (std::size_t k = 0; k < dim_; ++k) shifted[k] = pm[k] - t0[k];
    for (std::size_t j = 0; j <= m_; ++j) {
        const PointView tj = point(j);
        double s = 0.0;
        for (std::size_t k = 0; k < dim_; ++k) s += shifted[k] * (tj[k] - t0[k]);
        gram_[m_ * cap_ + j] = s;
        gram_[j * cap_ + m_] = s;
    }
    ++m_;
}

CenterSolver::Result CenterSolver::solve(std::size_t iters, EvalCounter* counter) const {
    if (m_ == 0) throw InputError("CenterSolver::solve on an empty set");
    Result res;
    if (m_ == 1) {
        res.center = Point(point(0));
        return res;
    }

    std::vector<double> lambda(m_, 0.0);
    std::vector<double> gl(m_, 0.0);  // G * lambda; column 0 of the shifted Gram is zero
    lambda[0] = 1.0;
    double q = 0.0;  // lambda' G lambda

    for (std::size_t i = 1; i <= iters; ++i) {
        std::size_t f = 0;
        double best = -std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < m_; ++j) {
            const double d2 = g(j, j) - 2.0 * gl[j] + q;
            if (d2 > best) {
                best = d2;
                f = j;
            }
        }
        const double a = 1.0 / static_cast<double>(i + 1);
        const double b = 1.0 - a;
        q = b * b * q + 2.0 * a * b * gl[f] + a * a * g(f, f);
        const double* col = &gram_[f * cap_];
        for (std::size_t j = 0; j < m_; ++j) {
            gl[j] = b * gl[j] + a * col[j];
            lambda[j] *= b;
        }
        lambda[f] += a;

        // Refresh the running products so rounding does not accumulate.
        if ((i & 1023u) == 0) {
            for (std::size_t j = 0; j < m_; ++j) {
                double s = 0.0;
                for (std::size_t k = 0; k < m_; ++k) s += g(j, k) * lambda[k];
                gl[j] = s;
            }
            q = 0.0;
            for (std::size_t j = 0; j < m_; ++j) q += lambda[j] * gl[j];
        }
    }
    if (counter) counter->distance_evals += static_cast<std::uint64_t>(iters) * m_;

    const PointView t0 = point(0);
    Point c(t0);
    for (std::size_t j = 1; j < m_; ++j) {
        if (lambda[j] == 0.0) continue;
        const PointView tj = point(j);
        for (std::size_t k = 0; k < dim_; ++k) c[k] += lambda[j] * (tj[k] - t0[k]);
    }
    double r2 = 0.0;
    for (std::size_t j = 0; j < m_; ++j) r2 = std::max(r2, dist_sq_unchecked(point(j), c));

    double phi = -q;
    for (std::size_t j = 0; j < m_; ++j) phi += lambda[j] * g(j, j);

    res.center = std::move(c);
    res.radius_to_t = std::sqrt(r2);
    res.lower_bound = std::sqrt(std::max(phi, 0.0));
    res.iterations = iters;
    return res;
}

Point approx_center(const PointSet& T, double xi, EvalCounter* counter, std::size_t inner_cap) {
    if (!(xi > 0.0 && xi < 1.0)) throw InputError("xi must lie in (0,1)");
    CenterSolver solver(T.dim());
    for (std::size_t i = 0; i < T.size(); ++i) solver.add(T[i]);
    const double iters = 1.0 / (xi * xi);
    const std::size_t n_iters =
        iters > static_cast<double>(inner_cap) ? inner_cap : ceil_count(iters);
    return solver.solve(n_iters, counter).center;
}

double covering_radius(const PointSet& P, PointView c) {
    if (P.dim() != c.size()) throw InputError("covering_radius: dimension mismatch");
    double r2 = 0.0;
    for (std::size_t i = 0; i < P.size(); ++i) r2 = std::max(r2, dist_sq_unchecked(P[i], c));
    return std::sqrt(r2);
}

CoresetResult coreset_meb(const PointSet& P, const ApproxParams& params, RngStream* rng,
                          EvalCounter* counter) {
    if (params.z == 0 || params.inner_iters == 0) throw InputError("coreset_meb: invalid params");
    CoresetResult out;
    out.inner_capped = params.inner_capped;

    const std::size_t first = rng ? rng->uniform_index(P.size()) : 0;
    CenterSolver solver(P.dim());
    solver.add(P[first]);
    out.core.push_back(first);

    double best = std::numeric_limits<double>::infinity();
    for (std::size_t round = 1; round <= params.z; ++round) {
        const auto res = solver.solve(params.inner_iters, counter);
        const std::size_t q = farthest_index(P, res.center, counter);
        const double dq = dist(P[q], res.center);
        out.rounds = round;
        out.radius_estimates.push_back(res.radius_to_t);
        if (dq < best) {
            best = dq;
            out.ball = Ball{res.center, dq};
        }
        // Rad(P) >= Rad(T) >= max(r_hat / (1 + xi), dual value), so stopping
        // here certifies a (1+eps)-approximation.
        const double r_lb = std::max(res.radius_to_t / (1.0 + params.xi), res.lower_bound);
        if (dq <= (1.0 + params.epsilon) * r_lb) {
            out.stopped_early = true;
            break;
        }
        if (round < params.z) {
            solver.add(P[q]);
            out.core.push_back(q);
        }
    }
    return out;
}

}  // namespace subgeo
