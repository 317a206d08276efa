#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "subgeo/flat.hpp"
#include "subgeo/instances.hpp"
#include "subgeo/kcenter.hpp"
#include "subgeo/meb_outliers.hpp"
#include "subgeo/mex.hpp"
#include "subgeo/svm.hpp"

using namespace subgeo;

namespace {

// Complements of balls of radius 1/size: nested, but farther points are
// covered first.
struct InvertedBallFamily : BallFamily {
    double size_of_rank(double f) const { return f > 0 ? 1.0 / f : kInfiniteSize; }
    double min_enclosing_size(const Center& c, PointView p) const { return size_of_rank(rank(c, p)); }
    bool contains(const Center& c, double size, PointView p) const {
        return size > 0 && dist(p, c) >= 1.0 / size;
    }
};

// Thin shells of radius size: not nested.
struct ShellFamily : BallFamily {
    bool contains(const Center& c, double size, PointView p) const {
        return std::abs(dist(p, c) - size) <= 0.1 * size;
    }
};

PointSet gaussian(std::size_t n, std::size_t d, RngStream& rng) {
    std::vector<double> data(n * d);
    for (double& x : data) x = rng.normal();
    return PointSet(n, d, std::move(data));
}

Point unit(std::size_t d, std::size_t axis) {
    Point u(d);
    u[axis] = 1.0;
    return u;
}

}  // namespace

TEST(FamilyLaws, Ball) {
    RngStream rng(1);
    const auto rep = check_family_laws(BallFamily{}, 4, 10'000, rng);
    EXPECT_TRUE(rep.passed()) << rep.witness;
    EXPECT_EQ(rep.triples, 10'000u);
}

TEST(FamilyLaws, KBall) {
    RngStream rng(2);
    const auto rep = check_family_laws(KBallFamily{3}, 4, 10'000, rng);
    EXPECT_TRUE(rep.passed()) << rep.witness;
}

TEST(FamilyLaws, Slab) {
    RngStream rng(3);
    const auto rep = check_family_laws(SlabFamily{}, 4, 10'000, rng);
    EXPECT_TRUE(rep.passed()) << rep.witness;
}

TEST(FamilyLaws, HalfSpaceOnDomain) {
    RngStream rng(4);
    const auto rep = check_family_laws(HalfSpaceFamily{}, 4, 10'000, rng);
    EXPECT_TRUE(rep.passed()) << rep.witness;
    EXPECT_EQ(rep.triples, 10'000u);
    EXPECT_GT(rep.skipped, 0u);
}

TEST(FamilyLaws, InvertedBallFailsOrder) {
    RngStream rng(5);
    const auto rep = check_family_laws(InvertedBallFamily{}, 3, 10'000, rng);
    EXPECT_FALSE(rep.passed());
    EXPECT_EQ(rep.nesting_failures, 0u);
    EXPECT_GT(rep.order_failures, 0u);
    EXPECT_NE(rep.witness.find("order"), std::string::npos);
}

TEST(FamilyLaws, ShellFailsNesting) {
    RngStream rng(5);
    const auto rep = check_family_laws(ShellFamily{}, 3, 10'000, rng);
    EXPECT_FALSE(rep.passed());
    EXPECT_GT(rep.nesting_failures, 0u);
}

TEST(FarthestSet, BallReducesToEuclidean) {
    RngStream rng(6);
    const PointSet P = gaussian(200, 3, rng);
    const Point c{0.1, -0.2, 0.3};
    std::vector<std::size_t> order(200);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return dist(P[a], c) > dist(P[b], c); });
    std::vector<std::size_t> top(order.begin(), order.begin() + 25);
    std::sort(top.begin(), top.end());
    EXPECT_EQ(farthest_set(P, c, 25, BallFamily{}), top);
    EXPECT_EQ(farthest_set(P, c, 200, BallFamily{}).size(), 200u);
}

TEST(FarthestSet, HalfSpaceTakesSmallestProjections) {
    RngStream rng(7);
    const PointSet P = gaussian(150, 3, rng);
    Point u{1, 2, -1};
    const double nu = norm(u);
    for (std::size_t k = 0; k < 3; ++k) u[k] /= nu;
    std::vector<std::size_t> order(150);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return dot(P[a], u) < dot(P[b], u); });
    std::vector<std::size_t> low(order.begin(), order.begin() + 30);
    std::sort(low.begin(), low.end());
    EXPECT_EQ(farthest_set(P, u, 30, HalfSpaceFamily{}), low);
}

TEST(Threshold, ConsistentWithFarthestSet) {
    RngStream rng(8);
    for (int trial = 0; trial < 50; ++trial) {
        const PointSet P = gaussian(40, 3, rng);
        const Point c = BallFamily{}.random_center(rng, 3);
        const std::size_t m = 1 + rng.uniform_index(39);
        const double l = threshold_size(P, c, m, BallFamily{});
        std::vector<std::size_t> outside;
        for (std::size_t i = 0; i < P.size(); ++i)
            if (!BallFamily{}.contains(c, l, P[i])) outside.push_back(i);
        EXPECT_EQ(outside, farthest_set(P, c, m, BallFamily{}));
    }
}

TEST(Threshold, ExtremePointAndTies) {
    const PointSet P = PointSet::from_points({{0, 0}, {1, 0}, {50, 0}, {2, 0}});
    EXPECT_DOUBLE_EQ(threshold_size(P, Point{0, 0}, 1, BallFamily{}), 2.0);
    const PointSet same = PointSet::from_points({{1, 0}, {0, 1}, {-1, 0}, {0, -1}});
    EXPECT_DOUBLE_EQ(threshold_size(same, Point{0, 0}, 2, BallFamily{}), 1.0);
    EXPECT_EQ(farthest_set(same, Point{0, 0}, 2, BallFamily{}), (std::vector<std::size_t>{0, 1}));
    EXPECT_THROW(threshold_size(P, Point{0, 0}, 0, BallFamily{}), InputError);
}

TEST(Threshold, HalfSpaceInfiniteWhenBehind) {
    const PointSet P = PointSet::from_points({{1, 0}, {-1, 0}, {-2, 0}});
    EXPECT_TRUE(std::isinf(threshold_size(P, unit(2, 0), 1, HalfSpaceFamily{})));
    EXPECT_DOUBLE_EQ(threshold_size(P, unit(2, 0), 2, HalfSpaceFamily{}), 1.0);
}

TEST(Reduction, BallFamilyMatchesMebSampling) {
    const OutlierInstance inst = gen_planted_meb(50'000, 5, 0.1, 1.0, 10.0, 3);
    const auto plan = SamplingPlan::make(50'000, 0.1, 0.25, 0.1, 0.1);
    const Point o = inst.truth->centers[0];
    for (std::uint64_t s = 0; s < 20; ++s) {
        RngStream a(s), b(s);
        EXPECT_EQ(uniform_adaptive_draw(inst.P, o, plan, a).index,
                  generalized_uas(inst.P, o, plan, BallFamily{}, b));
        EXPECT_EQ(sandwich_estimate(inst.P, o, plan, a).size,
                  generalized_sandwich(inst.P, o, plan, BallFamily{}, b).size);
    }
}

TEST(Reduction, KBallWithOneCenterMatchesBall) {
    const OutlierInstance inst = gen_planted_meb(20'000, 4, 0.1, 1.0, 10.0, 4);
    const auto plan = SamplingPlan::make(20'000, 0.1, 0.25, 0.1, 0.1);
    const Point o = inst.truth->centers[0];
    RngStream a(1), b(1);
    for (int i = 0; i < 10; ++i) {
        EXPECT_EQ(generalized_uas(inst.P, o, plan, BallFamily{}, a),
                  generalized_uas(inst.P, KBallFamily::Center{o}, plan, KBallFamily{1}, b));
        EXPECT_EQ(generalized_sandwich(inst.P, o, plan, BallFamily{}, a).size,
                  generalized_sandwich(inst.P, KBallFamily::Center{o}, plan, KBallFamily{1}, b).size);
    }
}

TEST(GeneralizedSandwich, SlabTwoShell) {
    // 90 points at distance 1 from the x-axis, 10 at distance 10.
    std::vector<Point> pts;
    for (int i = 0; i < 100; ++i) {
        const double r = i % 10 == 9 ? 10.0 : 1.0;
        const double a = 0.7 * i;
        pts.push_back(Point{double(i), r * std::cos(a), r * std::sin(a)});
    }
    const PointSet P = PointSet::from_points(pts);
    const Flat F{Point{0, 0, 0}, {unit(3, 0)}};
    const auto plan = SamplingPlan::make(100, 0.1, 0.2, 0.1, 0.1);
    RngStream rng(1);
    EXPECT_NEAR(generalized_sandwich(P, F, plan, SlabFamily{}, rng).size, 1.0, 1e-12);
    EXPECT_NEAR(threshold_size(P, F, plan.t, SlabFamily{}), 1.0, 1e-12);
}

TEST(GeneralizedSandwich, HalfSpacePlantedMargin) {
    const OutlierInstance inst = gen_planted_svm1(100'000, 5, 0.1, 0.5, 1.0, 9);
    const auto plan = SamplingPlan::make(100'000, 0.1, 0.25, 0.1, 0.1);
    const Point u = unit(5, 0);
    const double l = threshold_size(inst.P, u, plan.t, HalfSpaceFamily{});
    EXPECT_NEAR(l, 1.0, 0.05);  // the t+1-th smallest projection is an inlier near 1
    const double cap = 1.25 * 1.25 / 0.75 * 0.1 * 100'000;
    RngStream rng(2);
    std::size_t ok = 0;
    for (int t = 0; t < 500; ++t) {
        const double est = generalized_sandwich(inst.P, u, plan, HalfSpaceFamily{}, rng).size;
        const double outside = static_cast<double>(count_outside(inst.P, u, est, HalfSpaceFamily{}));
        ok += est <= l && outside <= cap;
    }
    EXPECT_GE(ok, 440);
}

TEST(GeneralizedUas, HalfSpaceHitRate) {
    const OutlierInstance inst = gen_planted_svm1(100'000, 5, 0.1, 0.5, 1.0, 10);
    const double delta = 0.25;
    const auto plan = SamplingPlan::make(100'000, 0.1, delta, 0.1, 0.1);
    Point u{1, 0.3, 0, 0, 0};
    const double nu = norm(u);
    for (std::size_t k = 0; k < 5; ++k) u[k] /= nu;
    const auto far = farthest_set(inst.P, u, plan.t, HalfSpaceFamily{});
    std::vector<char> good(inst.P.size(), 0);
    for (std::size_t i : far) good[i] = 1;
    for (std::size_t i = 0; i < good.size(); ++i)
        if (!std::binary_search(inst.truth->inliers.begin(), inst.truth->inliers.end(), i)) good[i] = 0;
    RngStream rng(3);
    std::size_t hit = 0;
    for (int t = 0; t < 10'000; ++t) hit += good[generalized_uas(inst.P, u, plan, HalfSpaceFamily{}, rng)];
    EXPECT_GE(hit / 10'000.0, delta / (3 * (1 + delta)) - 0.02);
}

TEST(GeneralizedUas, KBallHitRate) {
    const OutlierInstance inst = gen_planted_kcenter(100'000, 4, 2, 0.1, 20.0, 1.0, 100.0, 11);
    const double delta = 0.25;
    const auto plan = SamplingPlan::make(100'000, 0.1, delta, 0.1, 0.1);
    const KBallFamily fam{2};
    KBallFamily::Center c{inst.truth->centers[0]};  // one cluster found so far
    const auto far = farthest_set(inst.P, c, plan.t, fam);
    std::vector<char> good(inst.P.size(), 0);
    for (std::size_t i : far) good[i] = 1;
    for (std::size_t i = 0; i < good.size(); ++i)
        if (!std::binary_search(inst.truth->inliers.begin(), inst.truth->inliers.end(), i)) good[i] = 0;
    RngStream rng(4);
    std::size_t hit = 0;
    for (int t = 0; t < 10'000; ++t) hit += good[generalized_uas(inst.P, c, plan, fam, rng)];
    EXPECT_GE(hit / 10'000.0, delta / (3 * (1 + delta)) - 0.02);
}

TEST(CountOutside, MatchesThresholdCount) {
    RngStream rng(9);
    const PointSet P = gaussian(300, 3, rng);
    const Point c{0, 0, 0};
    const double l = threshold_size(P, c, 17, BallFamily{});
    EXPECT_EQ(count_outside(P, c, l, BallFamily{}), 17u);
}
