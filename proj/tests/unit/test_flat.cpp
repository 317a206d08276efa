#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "../common/flat_event.hpp"
#include "subgeo/errors.hpp"
#include "subgeo/flat.hpp"
#include "subgeo/instances.hpp"

using namespace subgeo;

TEST(DistFlat, Examples) {
    const Flat x_axis = line_through(Point{0, 0}, Point{1, 0});
    EXPECT_DOUBLE_EQ(dist_flat(x_axis, Point{3, 4}), 4.0);
    EXPECT_DOUBLE_EQ(dist_flat(x_axis, Point{-7, 0}), 0.0);
    const Flat diag = line_through(Point{1, 1, 1}, Point{2, 2, 2});
    EXPECT_NEAR(dist_flat(diag, Point{0, 0, 3}), std::sqrt(6.0), 1e-12);
    EXPECT_THROW(line_through(Point{1, 2}, Point{1, 2}), InputError);
    EXPECT_THROW(dist_flat(x_axis, Point{1, 2, 3}), InputError);
}

TEST(DistFlat, AgreesWithLagrangeIdentity) {
    RngStream rng(3);
    for (int trial = 0; trial < 500; ++trial) {
        Point a(6), b(6), p(6);
        for (std::size_t k = 0; k < 6; ++k) {
            a[k] = rng.normal();
            b[k] = rng.normal();
            p[k] = 5 * rng.normal();
        }
        const Flat F = line_through(a, b);
        EXPECT_NEAR(dist_flat(F, p), checks::line_distance(a, b, p), 1e-9);
    }
}

TEST(FlatParamsTest, Formulas) {
    const FlatParams fp = FlatParams::make(0.5, 0.25);
    EXPECT_EQ(fp.nu, static_cast<std::size_t>(std::ceil(4.0 * std::log(2.0) / 0.125)));
    EXPECT_DOUBLE_EQ(fp.delta0, 0.25 / static_cast<double>(fp.nu + 1));
    EXPECT_EQ(fp.M, 64u);
    EXPECT_EQ(FlatParams::make(0.1, 0.25).M, 252u);  // ceil(80 pi)
    EXPECT_EQ(FlatParams::make(0.5, 0.25, 4.0, 3, 8).nu, 3u);
    EXPECT_THROW(FlatParams::make(0.0, 0.25), InputError);
}

TEST(InitLineTest, TwoPoints) {
    const PointSet P = PointSet::from_points({{0, 0}, {1, 1}});
    RngStream rng(1);
    const InitLine init = init_line(P, 0.0, 0.1, rng);
    EXPECT_NE(init.p_index, init.q_index);
    EXPECT_NEAR(dist_flat(init.line, Point{2, 2}), 0.0, 1e-12);
}

TEST(InitLineTest, FarthestWhenNoOutliers) {
    const PointSet P = PointSet::from_points({{0, 0}, {1, 0}, {5, 0}, {2, 0}});
    for (std::uint64_t s = 0; s < 20; ++s) {
        RngStream rng(s);
        const InitLine init = init_line(P, 0.0, 0.1, rng);
        const double far = init.p_index == 2 ? 5.0 : 5.0 - P[init.p_index][0];
        EXPECT_DOUBLE_EQ(dist(P[init.p_index], P[init.q_index]), far);
    }
}

TEST(InitLineTest, CoincidentPointsRejected) {
    const PointSet P = PointSet::from_points({{1, 1}, {1, 1}, {1, 1}});
    RngStream rng(1);
    EXPECT_THROW(init_line(P, 0.0, 0.1, rng), InputError);
}

TEST(InitLineTest, FourApproximationFrequency) {
    const OutlierInstance inst = gen_planted_line(20'000, 5, 0.1, 0.1, 10.0, 5.0, 4);
    const double delta0 = 0.5;
    RngStream rng(21);
    const int trials = 2000;
    int hits = 0;
    for (int i = 0; i < trials; ++i)
        hits += checks::init_line_event(inst, init_line(inst.P, inst.gamma, delta0, rng)) ? 1 : 0;
    const double bound = (1 - 0.1) * delta0 / (1 + delta0);
    EXPECT_GE(static_cast<double>(hits) / trials, bound - 0.03);
}

TEST(FlatFit, CollinearPointsGiveZeroWidth) {
    std::vector<Point> pts;
    for (int i = 0; i < 50; ++i) pts.push_back(Point{1.0 + i, 2.0 - 0.5 * i, 3.0});
    const OutlierInstance inst{PointSet::from_points(pts), 0.0, std::nullopt};
    BiCriteriaParams p;
    RngStream rng(2);
    const auto r = flat_fit_outliers(inst, FlatParams::make(0.5, 0.25, 4.0, 3, 8), p,
                                     Algorithm::linear, rng);
    EXPECT_LE(r.width, 1e-12);
    EXPECT_EQ(*r.excluded, 0u);
}

TEST(FlatFit, EstimatesNeverIncrease) {
    const OutlierInstance inst = gen_planted_line(5000, 4, 0.1, 0.1, 10.0, 5.0, 6);
    BiCriteriaParams p;
    for (Algorithm algo : {Algorithm::linear, Algorithm::sublinear}) {
        for (std::uint64_t s = 0; s < 5; ++s) {
            RngStream rng(s);
            const auto r = flat_fit_outliers(inst, FlatParams::make(0.5, 0.25, 4.0, 10, 16), p, algo, rng);
            ASSERT_FALSE(r.estimates.empty());
            for (std::size_t i = 1; i < r.estimates.size(); ++i)
                EXPECT_LE(r.estimates[i], r.estimates[i - 1]);
            EXPECT_EQ(r.width, r.estimates.back());
            EXPECT_EQ(*r.covered + *r.excluded, 5000u);
        }
    }
}

TEST(FlatFit, LinearModeExclusionBound) {
    const OutlierInstance inst = gen_planted_line(4000, 3, 0.1, 0.1, 10.0, 5.0, 7);
    BiCriteriaParams p;
    p.delta = 0.25;
    const FlatParams fp = FlatParams::make(0.5, 0.25, 4.0, 8, 32);
    RngStream rng(1);
    const auto r = flat_fit_outliers(inst, fp, p, Algorithm::linear, rng);
    // The reported width is the exact (t+1)-th distance, so at most t points lie outside.
    EXPECT_LE(*r.excluded, SamplingPlan::exact(4000, 0.1, 0.25).t);
}

TEST(FlatFit, SublinearWorkBeyondInitIsIndependentOfN) {
    // init_line ranks all n points once; everything after it is sampled.
    BiCriteriaParams p;
    const FlatParams fp = FlatParams::make(0.5, 0.25, 4.0, 4, 8);
    std::vector<std::uint64_t> extra;
    for (std::size_t n : {100'000u, 400'000u}) {
        const OutlierInstance inst = gen_planted_line(n, 3, 0.1, 0.1, 10.0, 5.0, 8);
        RngStream rng(3);
        const auto r = flat_fit_outliers(inst, fp, p, Algorithm::sublinear, rng, false);
        ASSERT_FALSE(r.uas_fallback || r.sandwich_fallback);
        extra.push_back(r.counter.distance_evals - n);
    }
    EXPECT_EQ(extra[0], extra[1]);
}

TEST(FlatFit, SolveIsDeterministicAcrossWorkers) {
    const OutlierInstance inst = gen_planted_line(3000, 3, 0.1, 0.1, 10.0, 5.0, 9);
    BiCriteriaParams p;
    p.repeats = 5;
    const FlatParams fp = FlatParams::make(0.5, 0.25, 4.0, 5, 16);
    const auto a = flat_fit_solve(inst, fp, p, Algorithm::linear, 4, FlatOptions{1, true});
    const auto b = flat_fit_solve(inst, fp, p, Algorithm::linear, 4, FlatOptions{4, true});
    EXPECT_EQ(a.width, b.width);
    EXPECT_EQ(a.repetition, b.repetition);
    EXPECT_EQ(a.counter, b.counter);
}

TEST(FlatFit, RejectsBadInput) {
    BiCriteriaParams p;
    const OutlierInstance one_d{PointSet::from_points({{1}, {2}, {3}}), 0.0, std::nullopt};
    RngStream rng(1);
    EXPECT_THROW(flat_fit_outliers(one_d, FlatParams::make(0.5, 0.25), p, Algorithm::linear, rng),
                 InputError);
    const OutlierInstance ok{PointSet::from_points({{1, 0}, {2, 1}, {3, 5}}), 0.0, std::nullopt};
    EXPECT_THROW(flat_fit_outliers(ok, FlatParams{}, p, Algorithm::linear, rng), InputError);
}
