#include "subgeo/sampling.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "subgeo/errors.hpp"

namespace subgeo {

namespace {

void check_open_unit(double v, const char* name) {
    if (!(v > 0.0 && v < 1.0)) throw InputError(std::string(name) + " must lie in (0,1)");
}

std::uint64_t saturating_ceil(double x) {
    if (!(x < 1.8e19)) return std::numeric_limits<std::uint64_t>::max();
    return static_cast<std::uint64_t>(ceil_count(x));
}

}  // namespace

SamplingPlan SamplingPlan::exact(std::size_t n, double gamma, double delta) {
    if (n == 0) throw InputError("sampling plan needs n >= 1");
    if (!(gamma >= 0.0 && gamma < 1.0)) throw InputError("gamma must lie in [0,1)");
    if (!(delta > 0.0 && delta < 1.0)) throw InputError("delta must lie in (0,1)");
    SamplingPlan p;
    p.n = n;
    p.gamma = gamma;
    p.delta = delta;
    const double gn = gamma * static_cast<double>(n);
    p.t = ceil_count((1.0 + delta) * gn);
    p.t_dprime_exact = ceil_count((1.0 + delta) * (1.0 + delta) * gn);
    if (p.t >= n) {
        throw InputError("(1+delta) gamma n = " + std::to_string(p.t) +
                         " leaves no inliers for n = " + std::to_string(n));
    }
    if (p.t_dprime_exact >= n) p.t_dprime_exact = n - 1;
    p.n_prime = n;
    p.n_dprime = n;
    p.exact_uas = true;
    p.exact_sandwich = true;
    return p;
}

SamplingPlan SamplingPlan::make(std::size_t n, double gamma, double delta, double eta1,
                                double eta2, double c1, double c2) {
    SamplingPlan p = exact(n, gamma, delta);
    if (gamma == 0.0) return p;
    check_open_unit(eta1, "eta1");
    check_open_unit(eta2, "eta2");
    if (!(c1 > 0.0 && c2 > 0.0)) throw InputError("sample-size constants must be positive");

    const double np = c1 / (delta * gamma) * std::log(1.0 / eta1);
    const double ndp = c2 / (delta * delta * gamma) * std::log(1.0 / eta2);
    const double nd = static_cast<double>(n);
    p.exact_uas = np >= nd;
    p.exact_sandwich = ndp >= nd;
    if (!p.exact_uas) {
        p.n_prime = ceil_count(np);
        p.t_prime = ceil_count(1.5 * (1.0 + delta) * gamma * static_cast<double>(p.n_prime));
        if (p.t_prime > p.n_prime || p.t_prime == 0) {
            throw InputError("t' = " + std::to_string(p.t_prime) + " incompatible with n' = " +
                             std::to_string(p.n_prime));
        }
    }
    if (!p.exact_sandwich) {
        p.n_dprime = ceil_count(ndp);
        p.t_dprime =
            ceil_count((1.0 + delta) * (1.0 + delta) * gamma * static_cast<double>(p.n_dprime));
        if (p.t_dprime >= p.n_dprime) {
            throw InputError("t'' = " + std::to_string(p.t_dprime) + " incompatible with n'' = " +
                             std::to_string(p.n_dprime));
        }
    }
    return p;
}

ApproxParams BiCriteriaParams::approx() const {
    const double s_eff = s > 0.0 ? s : epsilon / (2.0 + epsilon);
    return ApproxParams::make(epsilon, s_eff, inner_cap);
}

std::size_t BiCriteriaParams::rounds() const { return z ? z : approx().z; }

void BiCriteriaParams::validate(bool sublinear) const {
    if (!(epsilon > 0.0 && epsilon <= 1.0)) throw InputError("epsilon must lie in (0,1]");
    check_open_unit(delta, "delta");
    if (sublinear) {
        check_open_unit(eta1, "eta1");
        check_open_unit(eta2, "eta2");
        if (!(delta < 1.0 / 3.0)) throw InputError("sub-linear mode requires delta < 1/3");
    }
    if (s != 0.0) check_open_unit(s, "s");
    if (!(c1 > 0.0 && c2 > 0.0 && c3 > 0.0)) throw InputError("constants must be positive");
    if (repeats == 0) throw InputError("repeats must be at least 1");
    if (inner_cap == 0) throw InputError("inner_cap must be positive");
}

SamplingPlan BiCriteriaParams::plan(std::size_t n, double gamma) const {
    return SamplingPlan::make(n, gamma, delta, eta1, eta2, c1, c2);
}

std::uint64_t linear_repeat_count(double gamma, double delta, std::size_t z, double c3) {
    const double v =
        c3 / (1.0 - gamma) * std::pow(1.0 + 1.0 / delta, static_cast<double>(z));
    return saturating_ceil(v);
}

std::uint64_t sublinear_repeat_count(double gamma, double delta, double eta1, std::size_t z,
                                     double c3) {
    const double base = (3.0 + 3.0 / delta) / (1.0 - eta1);
    const double v = c3 / (1.0 - gamma) * std::pow(base, static_cast<double>(z));
    return saturating_ceil(v);
}

}  // namespace subgeo
