#include "subgeo/instances.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "subgeo/errors.hpp"

namespace subgeo {

std::string to_string(PlantedKind kind) {
    switch (kind) {
        case PlantedKind::meb: return "meb";
        case PlantedKind::kcenter: return "kcenter";
        case PlantedKind::line: return "line";
        case PlantedKind::svm1: return "svm1";
        case PlantedKind::svm2: return "svm2";
        case PlantedKind::lower_bound: return "lower_bound";
    }
    return "unknown";
}

void OutlierInstance::validate() const {
    if (!(gamma >= 0.0 && gamma < 1.0)) throw InputError("gamma must lie in [0,1)");
    const double keep = (1.0 - gamma) * static_cast<double>(P.size());
    if (ceil_count(keep) < 1) throw InputError("instance keeps no points");
}

void TwoClassInstance::validate() const {
    if (P1.dim() != P2.dim()) throw InputError("class dimensions differ");
    if (!(gamma1 >= 0.0 && gamma1 < 1.0) || !(gamma2 >= 0.0 && gamma2 < 1.0))
        throw InputError("class gammas must lie in [0,1)");
}

namespace {

std::size_t outlier_count(std::size_t n, double gamma) {
    if (!(gamma >= 0.0 && gamma < 1.0)) throw InputError("gamma must lie in [0,1)");
    const double gn = gamma * static_cast<double>(n);
    const double r = std::round(gn);
    if (std::abs(gn - r) > 1e-9 * std::max(1.0, gn))
        throw InputError("gamma * n must be an integer, got " + std::to_string(gn));
    const auto m = static_cast<std::size_t>(r);
    if (m >= n) throw InputError("gamma * n leaves no inliers");
    return m;
}

Point unit_vector(RngStream& rng, std::size_t d) {
    Point u(d);
    for (;;) {
        double s = 0.0;
        for (std::size_t k = 0; k < d; ++k) {
            u[k] = rng.normal();
            s += u[k] * u[k];
        }
        if (s > 1e-24) {
            const double inv = 1.0 / std::sqrt(s);
            for (std::size_t k = 0; k < d; ++k) u[k] *= inv;
            return u;
        }
    }
}

// Uniform point in the d-ball of radius r.
Point in_ball(RngStream& rng, std::size_t d, double r) {
    Point u = unit_vector(rng, d);
    const double rad = r * std::pow(rng.uniform01(), 1.0 / static_cast<double>(d));
    for (std::size_t k = 0; k < d; ++k) u[k] *= rad;
    return u;
}

// Shuffles rows, returning the new positions of the rows flagged as inliers.
OutlierInstance assemble(std::vector<Point> rows, const std::vector<bool>& inlier,
                         double gamma, PlantedTruth truth, RngStream& rng) {
    const std::size_t n = rows.size();
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[rng.uniform_index(i)]);
    std::vector<Point> shuffled(n);
    truth.inliers.clear();
    for (std::size_t pos = 0; pos < n; ++pos) {
        shuffled[pos] = std::move(rows[perm[pos]]);
        if (inlier[perm[pos]]) truth.inliers.push_back(pos);
    }
    return OutlierInstance{PointSet::from_points(shuffled), gamma, std::move(truth)};
}

void check_truth(bool ok, const char* what) {
    if (!ok) throw InputError(std::string("generated instance failed its self-check: ") + what);
}

}  // namespace

OutlierInstance gen_planted_meb(std::size_t n, std::size_t d, double gamma, double r_in,
                                double beta, std::uint64_t seed) {
    if (n == 0 || d == 0) throw InputError("n and d must be positive");
    if (!(r_in > 0.0)) throw InputError("r_in must be positive");
    if (!(beta > 2.0)) throw InputError("beta must exceed 2");
    const std::size_t m_out = outlier_count(n, gamma);
    RngStream rng(seed, 0x6d6562);

    std::vector<Point> rows;
    std::vector<bool> inlier;
    rows.reserve(n);
    for (std::size_t i = 0; i < n - m_out; ++i) {
        rows.push_back(in_ball(rng, d, r_in));
        inlier.push_back(true);
    }
    for (std::size_t i = 0; i < m_out; ++i) {
        Point u = unit_vector(rng, d);
        for (std::size_t k = 0; k < d; ++k) u[k] *= beta * r_in;
        rows.push_back(std::move(u));
        inlier.push_back(false);
    }
    PlantedTruth truth;
    truth.kind = PlantedKind::meb;
    truth.centers = {Point(d)};
    truth.size = r_in;
    OutlierInstance inst = assemble(std::move(rows), inlier, gamma, std::move(truth), rng);

    const Point& c = inst.truth->centers[0];
    std::size_t inside = 0;
    for (std::size_t i = 0; i < n; ++i)
        if (dist(inst.P[i], c) <= r_in * (1.0 + 1e-12)) ++inside;
    check_truth(inside == n - m_out, "inlier count");
    return inst;
}

OutlierInstance gen_planted_kcenter(std::size_t n, std::size_t d, std::size_t k, double gamma,
                                    double separation, double r_in, double outlier_dist,
                                    std::uint64_t seed) {
    if (n == 0 || d == 0 || k == 0) throw InputError("n, d and k must be positive");
    if (!(r_in > 0.0 && separation > 2.0 * r_in)) throw InputError("clusters must be disjoint");
    const double span = 0.5 * separation * static_cast<double>(k - 1);
    if (!(outlier_dist > span + 2.0 * r_in)) throw InputError("outliers must be far from every cluster");
    const std::size_t m_out = outlier_count(n, gamma);
    RngStream rng(seed, 0x6b63);

    std::vector<Point> centers;
    for (std::size_t j = 0; j < k; ++j) {
        Point c(d);
        c[0] = static_cast<double>(j) * separation - span;
        centers.push_back(std::move(c));
    }
    std::vector<Point> rows;
    std::vector<bool> inlier;
    for (std::size_t i = 0; i < n - m_out; ++i) {
        Point p = in_ball(rng, d, r_in);
        const Point& c = centers[i % k];
        for (std::size_t q = 0; q < d; ++q) p[q] += c[q];
        rows.push_back(std::move(p));
        inlier.push_back(true);
    }
    for (std::size_t i = 0; i < m_out; ++i) {
        Point u = unit_vector(rng, d);
        for (std::size_t q = 0; q < d; ++q) u[q] *= outlier_dist;
        rows.push_back(std::move(u));
        inlier.push_back(false);
    }
    PlantedTruth truth;
    truth.kind = PlantedKind::kcenter;
    truth.centers = centers;
    truth.size = r_in;
    OutlierInstance inst = assemble(std::move(rows), inlier, gamma, std::move(truth), rng);

    std::size_t covered = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& c : centers) best = std::min(best, dist(inst.P[i], c));
        if (best <= r_in * (1.0 + 1e-12)) ++covered;
    }
    check_truth(covered == n - m_out, "inlier count");
    return inst;
}

OutlierInstance gen_planted_line(std::size_t n, std::size_t d, double gamma, double width,
                                 double length, double outlier_dist, std::uint64_t seed) {
    if (n == 0 || d < 2) throw InputError("line instances need n >= 1 and d >= 2");
    if (!(width >= 0.0 && length > 0.0)) throw InputError("width and length must be valid");
    if (!(outlier_dist > 2.0 * width)) throw InputError("outliers must lie outside the slab");
    const std::size_t m_out = outlier_count(n, gamma);
    RngStream rng(seed, 0x6c696e65);

    const Point u = unit_vector(rng, d);
    auto orthogonal = [&](double radius, bool uniform_ball) {
        for (;;) {
            Point w(d);
            for (std::size_t k = 0; k < d; ++k) w[k] = rng.normal();
            const double along = dot(w, u);
            for (std::size_t k = 0; k < d; ++k) w[k] -= along * u[k];
            const double nw = norm(w);
            if (nw < 1e-12) continue;
            double r = radius;
            if (uniform_ball) r *= std::pow(rng.uniform01(), 1.0 / static_cast<double>(d - 1));
            for (std::size_t k = 0; k < d; ++k) w[k] *= r / nw;
            return w;
        }
    };
    std::vector<Point> rows;
    std::vector<bool> inlier;
    for (std::size_t i = 0; i < n; ++i) {
        const bool in = i < n - m_out;
        const double t = length * (rng.uniform01() - 0.5);
        Point p = orthogonal(in ? width : outlier_dist, in);
        for (std::size_t k = 0; k < d; ++k) p[k] += t * u[k];
        rows.push_back(std::move(p));
        inlier.push_back(in);
    }
    PlantedTruth truth;
    truth.kind = PlantedKind::line;
    truth.centers = {Point(d)};
    truth.direction = u;
    truth.size = width;
    OutlierInstance inst = assemble(std::move(rows), inlier, gamma, std::move(truth), rng);

    std::size_t inside = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double along = dot(inst.P[i], u);
        const double r2 = std::max(0.0, dot(inst.P[i], inst.P[i]) - along * along);
        if (std::sqrt(r2) <= width * (1.0 + 1e-9) + 1e-12) ++inside;
    }
    check_truth(inside == n - m_out, "inlier count");
    return inst;
}

OutlierInstance gen_planted_svm1(std::size_t n, std::size_t d, double gamma, double spread,
                                 double depth, std::uint64_t seed) {
    if (n == 0 || d == 0) throw InputError("n and d must be positive");
    if (!(spread >= 0.0 && depth >= 0.0)) throw InputError("spread and depth must be non-negative");
    if (d == 1 && spread > 0.0) throw InputError("spread needs d >= 2");
    const std::size_t m_out = outlier_count(n, gamma);
    RngStream rng(seed, 0x737631);

    std::vector<Point> rows;
    std::vector<bool> inlier;
    for (std::size_t i = 0; i < n; ++i) {
        const bool in = i < n - m_out;
        Point p(d);
        if (d > 1) {
            const Point side = in_ball(rng, d - 1, spread);
            for (std::size_t k = 1; k < d; ++k) p[k] = side[k - 1];
        }
        p[0] = in ? 1.0 + depth * rng.uniform01() : -1.0;
        rows.push_back(std::move(p));
        inlier.push_back(in);
    }
    PlantedTruth truth;
    truth.kind = PlantedKind::svm1;
    truth.direction = Point(d);
    truth.direction[0] = 1.0;
    truth.size = 1.0;
    OutlierInstance inst = assemble(std::move(rows), inlier, gamma, std::move(truth), rng);

    std::size_t beyond = 0;
    for (std::size_t i = 0; i < n; ++i)
        if (inst.P[i][0] >= 1.0) ++beyond;
    check_truth(beyond == n - m_out, "inlier count");
    return inst;
}

TwoClassInstance gen_planted_svm2(std::size_t n_per_class, std::size_t d, double gamma,
                                  double margin, double spread, double shift,
                                  std::uint64_t seed) {
    if (n_per_class == 0 || d < 2) throw InputError("two-class instances need n >= 1 and d >= 2");
    if (!(margin > 0.0 && spread >= 0.0)) throw InputError("margin must be positive");
    const std::size_t m_out = outlier_count(n_per_class, gamma);
    RngStream rng(seed, 0x737632);

    auto make_class = [&](double sign, std::vector<Point>& rows, std::vector<bool>& inlier) {
        for (std::size_t i = 0; i < n_per_class; ++i) {
            const bool in = i < n_per_class - m_out;
            Point p(d);
            const Point side = in_ball(rng, d - 1, spread);
            for (std::size_t k = 1; k < d; ++k) p[k] = side[k - 1];
            const double depth = 0.5 * margin + rng.uniform01();
            p[0] = (in ? sign : -sign) * depth;
            for (std::size_t k = 0; k < d; ++k) p[k] += shift;
            rows.push_back(std::move(p));
            inlier.push_back(in);
        }
    };
    std::vector<Point> r1, r2;
    std::vector<bool> in1, in2;
    make_class(+1.0, r1, in1);
    make_class(-1.0, r2, in2);

    PlantedTruth t1;
    t1.kind = PlantedKind::svm2;
    OutlierInstance c1 = assemble(std::move(r1), in1, gamma, t1, rng);
    OutlierInstance c2 = assemble(std::move(r2), in2, gamma, t1, rng);

    PlantedTruth truth;
    truth.kind = PlantedKind::svm2;
    truth.direction = Point(d);
    truth.direction[0] = 1.0;
    truth.size = margin;
    truth.inliers = c1.truth->inliers;
    for (std::size_t i : c2.truth->inliers) truth.inliers.push_back(i + n_per_class);

    TwoClassInstance out{c1.P, c2.P, gamma, gamma, std::move(truth)};
    std::size_t ok = 0;
    for (std::size_t i = 0; i < n_per_class; ++i) {
        if (out.P1[i][0] - shift >= 0.5 * margin) ++ok;
        if (out.P2[i][0] - shift <= -0.5 * margin) ++ok;
    }
    check_truth(ok == 2 * (n_per_class - m_out), "inlier count");
    return out;
}

OutlierInstance gen_lower_bound(std::size_t n, double gamma, double x, double y) {
    if (!(x > 0.0)) throw InputError("x must be positive");
    if (!(y >= 10.0 * x)) throw InputError("the construction needs y >= 10 x");
    const std::size_t m_c = outlier_count(n, gamma);
    if (m_c < 1) throw InputError("gamma * n must be at least 1");
    const std::size_t m_b = n - m_c - 1;
    if (m_b < 1) throw InputError("P_b would be empty");

    std::vector<double> data;
    data.reserve(2 * n);
    auto push = [&](double a) {
        data.push_back(a);
        data.push_back(0.0);
    };
    push(-x);
    for (std::size_t i = 0; i < m_b; ++i) push(0.0);
    for (std::size_t i = 0; i < m_c; ++i) push(y);

    PlantedTruth truth;
    truth.kind = PlantedKind::lower_bound;
    truth.centers = {Point{-0.5 * x, 0.0}};
    truth.size = 0.5 * x;
    truth.inliers.resize(m_b + 1);
    std::iota(truth.inliers.begin(), truth.inliers.end(), std::size_t{0});
    return OutlierInstance{PointSet(n, 2, std::move(data)), gamma, std::move(truth)};
}

double verify_lower_bound(const OutlierInstance& inst, PointView center) {
    const PointSet& P = inst.P;
    if (P.size() < 3 || P.dim() != center.size()) throw InputError("not a lower-bound instance");
    const PointView qa = P[0], qb = P[1], qc = P[P.size() - 1];
    const double x = dist(qa, qb);
    const double y = dist(qb, qc);
    // Center must be on [q_b, q_c]: |c - q_b| + |c - q_c| == y.
    const double detour = dist(center, qb) + dist(center, qc) - y;
    if (detour > 1e-9 * std::max(1.0, y)) throw InputError("center lies outside conv(P_b u P_c)");

    const std::size_t keep = ceil_count((1.0 - inst.gamma) * static_cast<double>(P.size()));
    std::vector<double> d(P.size());
    for (std::size_t i = 0; i < P.size(); ++i) d[i] = dist(P[i], center);
    std::nth_element(d.begin(), d.begin() + static_cast<std::ptrdiff_t>(keep - 1), d.end());
    return d[keep - 1] / (0.5 * x);
}

}  // namespace subgeo
