#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "subgeo/errors.hpp"
#include "subgeo/meb.hpp"
#include "subgeo/oracles.hpp"

using namespace subgeo;

namespace {

PointSet sphere_points(std::size_t n, std::size_t d, RngStream& rng) {
    std::vector<double> data(n * d);
    for (std::size_t i = 0; i < n; ++i) {
        double s = 0;
        for (std::size_t k = 0; k < d; ++k) {
            data[i * d + k] = rng.normal();
            s += data[i * d + k] * data[i * d + k];
        }
        for (std::size_t k = 0; k < d; ++k) data[i * d + k] /= std::sqrt(s);
    }
    return PointSet(n, d, std::move(data));
}

PointSet gaussian_points(std::size_t n, std::size_t d, RngStream& rng) {
    std::vector<double> data(n * d);
    for (double& x : data) x = rng.normal();
    return PointSet(n, d, std::move(data));
}

}  // namespace

TEST(ApproxParamsTest, DefaultShrinkGivesExpectedCounts) {
    const ApproxParams p = ApproxParams::from_epsilon(0.1);
    EXPECT_EQ(p.z, 21u);
    EXPECT_NEAR(p.s, 0.1 / 2.1, 1e-15);
    EXPECT_LT(p.xi, 0.1 / 1.1);
    EXPECT_EQ(p.inner_iters, static_cast<std::size_t>(std::ceil(1.0 / (p.xi * p.xi))));
    EXPECT_FALSE(p.inner_capped);
    EXPECT_EQ(ApproxParams::from_epsilon(0.5).z, 5u);
    EXPECT_EQ(ApproxParams::from_epsilon(1.0).z, 3u);
}

TEST(ApproxParamsTest, CapIsReported) {
    const ApproxParams p = ApproxParams::from_epsilon(0.1, 1000);
    EXPECT_EQ(p.inner_iters, 1000u);
    EXPECT_TRUE(p.inner_capped);
    EXPECT_THROW(ApproxParams::make(0.0, 0.5), InputError);
    EXPECT_THROW(ApproxParams::make(0.5, 1.0), InputError);
}

TEST(ApproxCenter, SinglePoint) {
    const PointSet T = PointSet::from_points({{2, -1, 7}});
    EXPECT_EQ(approx_center(T, 0.1), (Point{2, -1, 7}));
}

TEST(ApproxCenter, TwoPoints) {
    const PointSet T = PointSet::from_points({{0, 0}, {2, 0}});
    EXPECT_LE(dist(approx_center(T, 0.1), Point{1, 0}), 0.1);
}

TEST(ApproxCenter, EquilateralAgainstWelzl) {
    const double h = std::sqrt(3.0) / 2.0;
    const PointSet T = PointSet::from_points({{0, 0}, {1, 0}, {0.5, h}});
    const Ball exact = oracle_meb_exact_lowdim(T);
    EXPECT_NEAR(exact.radius, 1.0 / std::sqrt(3.0), 1e-12);
    EXPECT_LE(dist(approx_center(T, 0.05), exact.center), 0.05 * exact.radius);
}

TEST(ApproxCenter, RandomSetsWithinXiOfExact) {
    RngStream rng(9);
    for (int trial = 0; trial < 20; ++trial) {
        const PointSet T = gaussian_points(2 + rng.uniform_index(12), 3, rng);
        const Ball exact = oracle_meb_exact_lowdim(T);
        EXPECT_LE(dist(approx_center(T, 0.05), exact.center), 0.05 * exact.radius + 1e-12);
    }
}

TEST(CenterSolverTest, LowerBoundBracketsRadius) {
    RngStream rng(2);
    const PointSet T = gaussian_points(8, 2, rng);
    CenterSolver s(2);
    for (std::size_t i = 0; i < T.size(); ++i) s.add(T[i]);
    const Ball exact = oracle_meb_exact_lowdim(T);
    for (std::size_t iters : {1u, 10u, 100u, 10000u}) {
        const auto r = s.solve(iters);
        EXPECT_LE(r.lower_bound, exact.radius * (1 + 1e-12));
        EXPECT_GE(r.radius_to_t, exact.radius * (1 - 1e-12));
    }
}

TEST(CenterSolverTest, CounterIsItersTimesT) {
    CenterSolver s(3);
    s.add(Point{0, 0, 0});
    s.add(Point{1, 0, 0});
    s.add(Point{0, 1, 0});
    EvalCounter c;
    s.solve(50, &c);
    EXPECT_EQ(c.distance_evals, 150u);
}

TEST(Coreset, TwoPoints) {
    const PointSet P = PointSet::from_points({{0, 0}, {2, 0}});
    const auto r = coreset_meb(P, ApproxParams::from_epsilon(0.1));
    EXPECT_LE(r.ball.radius, 1.1);
    EXPECT_GE(r.ball.radius, 1.0 - 1e-12);
}

TEST(Coreset, IdenticalPoints) {
    const PointSet P = PointSet::from_points({{3, 3}, {3, 3}, {3, 3}, {3, 3}});
    const auto r = coreset_meb(P, ApproxParams::from_epsilon(0.1));
    EXPECT_EQ(r.ball.radius, 0.0);
    EXPECT_EQ(r.core.size(), 1u);
}

TEST(Coreset, UnitSphereAgainstReference) {
    RngStream rng(4);
    const PointSet P = sphere_points(1000, 10, rng);
    const Ball ref = oracle_meb_reference(P, 1e-9);
    const auto r = coreset_meb(P, ApproxParams::from_epsilon(0.1));
    EXPECT_LE(r.ball.radius, 1.1 * ref.radius + 1e-6);
    EXPECT_LE(r.core.size(), 21u);
}

TEST(Coreset, CoverageSizeAndQuality) {
    RngStream rng(5);
    const ApproxParams params = ApproxParams::from_epsilon(0.1);
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t d = trial % 2 ? 50 : 10;
        const PointSet P = gaussian_points(1000, d, rng);
        RngStream start(17, trial);
        const auto r = coreset_meb(P, params, &start);
        EXPECT_LE(r.core.size(), params.z + 1);
        EXPECT_LE(covering_radius(P, r.ball.center), r.ball.radius * (1 + 1e-9));
        const Ball ref = oracle_meb_reference(P, 1e-9);
        EXPECT_LE(r.ball.radius, 1.1 * ref.radius + 1e-6);
    }
}

TEST(Coreset, ExactRadiusOfGrowingCoreIsMonotone) {
    RngStream rng(6);
    const PointSet P = gaussian_points(300, 2, rng);
    const auto r = coreset_meb(P, ApproxParams::from_epsilon(0.1));
    double prev = 0.0;
    for (std::size_t m = 1; m <= r.core.size(); ++m) {
        const std::vector<std::size_t> prefix(r.core.begin(), r.core.begin() + m);
        const double rad = oracle_meb_exact_lowdim(P.subset(prefix)).radius;
        EXPECT_GE(rad, prev - 1e-12);
        prev = rad;
    }
}

TEST(Coreset, StopRuleCertifiesQuality) {
    // Whatever the round count, a stop means dq <= (1+eps) Rad(P).
    RngStream rng(8);
    const PointSet P = gaussian_points(2000, 5, rng);
    const double ref = oracle_meb_reference(P).radius;
    for (double eps : {0.5, 0.2, 0.1}) {
        const auto r = coreset_meb(P, ApproxParams::from_epsilon(eps));
        EXPECT_LE(r.ball.radius, (1 + eps) * ref + 1e-9);
    }
}
