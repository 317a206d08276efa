#ifndef SUBGEO_SAMPLING_HPP
#define SUBGEO_SAMPLING_HPP

#include <cstddef>
#include <cstdint>

#include "subgeo/meb.hpp"

namespace subgeo {

/// Sample sizes and order-statistic ranks for one (n, gamma, delta) setting.
///   n'  = ceil(c1 / (delta gamma)   ln(1/eta1))   t'  = ceil(1.5 (1+delta) gamma n')
///   n'' = ceil(c2 / (delta^2 gamma) ln(1/eta2))   t'' = ceil((1+delta)^2 gamma n'')
///   t   = ceil((1+delta) gamma n)
/// A sample size reaching n switches that step to exact mode.
struct SamplingPlan {
    std::size_t n = 0;
    double gamma = 0.0;
    double delta = 0.0;
    std::size_t n_prime = 0;
    std::size_t n_dprime = 0;
    std::size_t t = 0;
    std::size_t t_prime = 0;
    std::size_t t_dprime = 0;
    std::size_t t_dprime_exact = 0;  // ceil((1+delta)^2 gamma n), used in exact mode
    bool exact_uas = false;
    bool exact_sandwich = false;

    static SamplingPlan make(std::size_t n, double gamma, double delta, double eta1, double eta2,
                             double c1 = 24.0, double c2 = 24.0);
    /// Exact-everything plan (linear algorithms).
    static SamplingPlan exact(std::size_t n, double gamma, double delta);
};

/// Parameters shared by the bi-criteria solvers.
struct BiCriteriaParams {
    double epsilon = 0.5;
    double delta = 0.25;
    double eta1 = 0.1;
    double eta2 = 0.1;
    double s = 0.0;      // 0 selects eps / (2 + eps)
    std::size_t z = 0;   // 0 selects the core-set bound
    double c1 = 24.0;
    double c2 = 24.0;
    std::size_t inner_cap = ApproxParams::kInnerCap;

    std::size_t repeats = 1;
    bool theory_mode = false;  // derive repeats from the success-probability bound
    double c3 = 3.0;
    std::uint64_t budget = 100'000;

    ApproxParams approx() const;
    std::size_t rounds() const;
    /// Throws InputError on out-of-range values. `sublinear` additionally
    /// requires delta < 1/3.
    void validate(bool sublinear) const;
    SamplingPlan plan(std::size_t n, double gamma) const;
};

/// ceil(c3 / (1-gamma) * (1 + 1/delta)^z), saturating at UINT64_MAX.
std::uint64_t linear_repeat_count(double gamma, double delta, std::size_t z, double c3);
/// ceil(c3 / (1-gamma) * ((3 + 3/delta) / (1-eta1))^z), saturating.
std::uint64_t sublinear_repeat_count(double gamma, double delta, double eta1, std::size_t z,
                                     double c3);

}  // namespace subgeo

#endif  // SUBGEO_SAMPLING_HPP
