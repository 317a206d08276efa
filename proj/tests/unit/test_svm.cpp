#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "subgeo/errors.hpp"
#include "subgeo/instances.hpp"
#include "subgeo/oracles.hpp"
#include "subgeo/svm.hpp"

using namespace subgeo;

namespace {

// Separable cloud: Gaussian points shifted along a random direction.
PointSet separable_cloud(std::size_t n, std::size_t d, RngStream& rng) {
    Point u(d);
    double s = 0;
    for (std::size_t k = 0; k < d; ++k) {
        u[k] = rng.normal();
        s += u[k] * u[k];
    }
    const double offset = 2.0 + 3.0 * rng.uniform01();
    std::vector<double> data(n * d);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < d; ++k)
            data[i * d + k] = 0.4 * rng.normal() + offset * u[k] / std::sqrt(s);
    return PointSet(n, d, std::move(data));
}

}  // namespace

TEST(GilbertTest, SinglePoint) {
    const auto s = gilbert(PointSet::from_points({{3, 4}}), 1e-7, 100);
    EXPECT_DOUBLE_EQ(s.norm_v, 5.0);
    EXPECT_DOUBLE_EQ(s.cert, 5.0);
    EXPECT_EQ(s.status, GilbertStatus::certified);
}

TEST(GilbertTest, TwoUnitVectors) {
    const auto s = gilbert(PointSet::from_points({{1, 0}, {0, 1}}), 1e-7, 1000);
    EXPECT_NEAR(s.norm_v, std::sqrt(2.0) / 2.0, 1e-6);
    EXPECT_EQ(s.status, GilbertStatus::certified);
}

TEST(GilbertTest, OriginInsideHullIsInseparable) {
    const auto s = gilbert(PointSet::from_points({{1, 0}, {-1, 0.5}, {-1, -0.5}}), 1e-6, 10'000);
    EXPECT_EQ(s.status, GilbertStatus::inseparable);
}

TEST(GilbertTest, NormMonotoneAndBracketSound) {
    RngStream rng(12);
    for (int trial = 0; trial < 20; ++trial) {
        const PointSet P = separable_cloud(60, 2 + trial % 5, rng);
        const PolytopeBracket ref = oracle_polytope_bracket(P, 1e-11);
        ASSERT_LE(ref.upper - ref.lower, 1e-9 * ref.upper);
        double prev = INFINITY;
        const auto fin = gilbert(P, 1e-6, 200'000, [&](const GilbertState& st) {
            EXPECT_LE(st.norm_v, prev * (1 + 1e-12));
            prev = st.norm_v;
            EXPECT_GE(st.norm_v, ref.lower * (1 - 1e-9));
            EXPECT_LE(st.cert, ref.upper * (1 + 1e-9));
        });
        EXPECT_EQ(fin.status, GilbertStatus::certified);
        // certified: cert <= true distance <= |v| and cert >= (1 - eps) |v|
        EXPECT_LE(fin.norm_v - ref.upper, 1e-6 * fin.norm_v + 1e-9 * ref.upper);
    }
}

TEST(GilbertTest, RejectsBadEpsilon) {
    const PointSet P = PointSet::from_points({{1, 0}});
    EXPECT_THROW(gilbert(P, 0.0, 10), InputError);
    EXPECT_THROW(gilbert(P, 1.0, 10), InputError);
}

TEST(HalfSpace, RankAndSize) {
    const HalfSpaceFamily fam;
    const Point u{0, 1};
    EXPECT_DOUBLE_EQ(fam.rank(u, Point{5, 2}), -2.0);
    EXPECT_DOUBLE_EQ(fam.min_enclosing_size(u, Point{5, 2}), 0.5);
    EXPECT_EQ(fam.min_enclosing_size(u, Point{5, -2}), kInfiniteSize);
    const HalfSpaceFamily shifted{Point{0, 1}};
    EXPECT_DOUBLE_EQ(shifted.projection(u, Point{5, 2}), 1.0);
}

TEST(Svm1, SingleInlierMarginIsItsNorm) {
    const OutlierInstance inst{PointSet::from_points({{3, 4}}), 0.0, std::nullopt};
    BiCriteriaParams p;
    for (Algorithm algo : {Algorithm::linear, Algorithm::sublinear}) {
        RngStream rng(1);
        const auto r = svm1_outliers(inst, p, algo, rng);
        EXPECT_FALSE(r.infeasible);
        EXPECT_NEAR(r.margin, 5.0, 1e-12);
        EXPECT_EQ(r.excluded.at(0), 0u);
    }
}

TEST(Svm1, ScalingCovariance) {
    const OutlierInstance inst = gen_planted_svm1(4000, 5, 0.1, 0.5, 1.0, 3);
    OutlierInstance big = inst;
    std::vector<double> data(inst.P.size() * inst.P.dim());
    for (std::size_t i = 0; i < inst.P.size(); ++i)
        for (std::size_t k = 0; k < inst.P.dim(); ++k) data[i * inst.P.dim() + k] = 4.0 * inst.P[i][k];
    big.P = PointSet(inst.P.size(), inst.P.dim(), std::move(data));
    BiCriteriaParams p;
    p.epsilon = 0.3;
    for (Algorithm algo : {Algorithm::linear, Algorithm::sublinear}) {
        RngStream a(5), b(5);
        const auto r1 = svm1_outliers(inst, p, algo, a);
        const auto r4 = svm1_outliers(big, p, algo, b);
        EXPECT_NEAR(r4.margin, 4.0 * r1.margin, 1e-9 * r4.margin);
        EXPECT_EQ(r1.round, r4.round);
        EXPECT_EQ(r1.excluded, r4.excluded);
    }
}

TEST(Svm1, PlantedQualityLinear) {
    const OutlierInstance inst = gen_planted_svm1(5000, 5, 0.1, 0.5, 1.0, 4);
    BiCriteriaParams p;
    p.epsilon = 0.3;
    p.delta = 0.25;
    p.repeats = 30;
    const auto r = svm1_solve(inst, p, Algorithm::linear, 2);
    EXPECT_GE(r.margin, (1 - 0.3) * inst.truth->size);
    EXPECT_LE(r.excluded.at(0), SamplingPlan::exact(5000, 0.1, 0.25).t);
}

TEST(Svm1, SublinearCounterIndependentOfN) {
    BiCriteriaParams p;
    p.epsilon = 0.3;
    std::vector<std::uint64_t> ev;
    for (std::size_t n : {100'000u, 400'000u}) {
        const OutlierInstance inst = gen_planted_svm1(n, 5, 0.1, 0.5, 1.0, 1);
        RngStream rng(7);
        const auto r = svm1_outliers(inst, p, Algorithm::sublinear, rng, false);
        ASSERT_FALSE(r.uas_fallback || r.sandwich_fallback);
        ev.push_back(r.counter.distance_evals);
    }
    EXPECT_EQ(ev[0], ev[1]);
}

TEST(Svm2, MirroredPairHasMarginTwo) {
    const TwoClassInstance inst{PointSet::from_points({{0, 1}}), PointSet::from_points({{0, -1}}),
                                0.0, 0.0, std::nullopt};
    BiCriteriaParams p;
    for (Algorithm algo : {Algorithm::linear, Algorithm::sublinear}) {
        RngStream rng(1);
        const auto r = svm2_outliers(inst, p, algo, rng);
        EXPECT_FALSE(r.infeasible);
        EXPECT_NEAR(r.margin, 2.0, 1e-12);
        EXPECT_NEAR(r.direction[1], 1.0, 1e-12);
        EXPECT_EQ(r.excluded, (std::vector<std::size_t>{0, 0}));
    }
}

TEST(Svm2, FlipSignSelectsTheWrongWitnesses) {
    // The flipped sign steps toward the points deepest inside each class.
    const TwoClassInstance inst = gen_planted_svm2(500, 3, 0.05, 2.0, 0.5, 0.0, 2);
    BiCriteriaParams p;
    p.epsilon = 0.3;
    RngStream a(1), b(1);
    const auto ours = svm2_outliers(inst, p, Algorithm::linear, a);
    const auto theirs = svm2_outliers(inst, p, Algorithm::linear, b, true, true);
    EXPECT_GE(ours.margin, (1 - 0.3) * inst.truth->size);
    EXPECT_LT(theirs.margin, ours.margin);
}

TEST(Svm2, TranslationInvariance) {
    const TwoClassInstance base = gen_planted_svm2(3000, 4, 0.05, 2.0, 0.5, 0.0, 6);
    const TwoClassInstance moved = gen_planted_svm2(3000, 4, 0.05, 2.0, 0.5, 25.0, 6);
    BiCriteriaParams p;
    p.epsilon = 0.3;
    RngStream a(3), b(3);
    const auto r0 = svm2_outliers(base, p, Algorithm::linear, a);
    const auto r1 = svm2_outliers(moved, p, Algorithm::linear, b);
    EXPECT_NEAR(r0.margin, r1.margin, 1e-8);
    EXPECT_EQ(r0.excluded, r1.excluded);
}

TEST(Svm2, PlantedQualityLinear) {
    const TwoClassInstance inst = gen_planted_svm2(3000, 4, 0.05, 2.0, 0.5, 0.0, 7);
    BiCriteriaParams p;
    p.epsilon = 0.3;
    p.delta = 0.25;
    p.repeats = 20;
    const auto r = svm2_solve(inst, p, Algorithm::linear, 5);
    EXPECT_GE(r.margin, (1 - 0.3) * inst.truth->size);
    const std::size_t t = SamplingPlan::exact(3000, 0.05, 0.25).t;
    EXPECT_LE(r.excluded.at(0), t);
    EXPECT_LE(r.excluded.at(1), t);
}
