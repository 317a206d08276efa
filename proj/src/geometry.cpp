#include "subgeo/geometry.hpp"

#include <algorithm>
#include <string>

#include "subgeo/errors.hpp"

namespace subgeo {

PointSet::PointSet(std::size_t n, std::size_t d, std::vector<double> data)
    : n_(n), d_(d), data_(std::move(data)) {
    if (n_ == 0) throw InputError("point set must contain at least one point");
    if (d_ == 0) throw InputError("point dimension must be at least 1");
    if (data_.size() != n_ * d_) {
        throw InputError("point data has " + std::to_string(data_.size()) +
                         " values, expected " + std::to_string(n_ * d_));
    }
    for (std::size_t i = 0; i < data_.size(); ++i) {
        if (!std::isfinite(data_[i])) {
            throw InputError("non-finite coordinate in point " + std::to_string(i / d_));
        }
    }
}

PointSet PointSet::from_points(const std::vector<Point>& points) {
    if (points.empty()) throw InputError("point set must contain at least one point");
    const std::size_t d = points.front().dim();
    std::vector<double> data;
    data.reserve(points.size() * d);
    for (const auto& p : points) {
        if (p.dim() != d) throw InputError("points have inconsistent dimensions");
        data.insert(data.end(), p.coords().begin(), p.coords().end());
    }
    return PointSet(points.size(), d, std::move(data));
}

PointSet PointSet::subset(std::span<const std::size_t> indices) const {
    std::vector<double> data;
    data.reserve(indices.size() * d_);
    for (std::size_t i : indices) {
        if (i >= n_) throw InputError("subset index out of range");
        const auto row = (*this)[i];
        data.insert(data.end(), row.begin(), row.end());
    }
    return PointSet(indices.size(), d_, std::move(data));
}

PointSet PointSet::scaled(double alpha) const {
    std::vector<double> data(data_);
    for (double& x : data) x *= alpha;
    return PointSet(n_, d_, std::move(data));
}

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream) : seed_(seed), stream_(stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32),
                      0x5u};
    engine_.seed(seq);
}

std::size_t RngStream::uniform_index(std::size_t n) {
    if (n == 0) throw InputError("uniform_index over an empty range");
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    return pick(engine_);
}

double RngStream::uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RngStream::normal() {
    std::normal_distribution<double> gauss(0.0, 1.0);
    return gauss(engine_);
}

double dist(PointView p, PointView q) {
    if (p.size() != q.size()) {
        throw InputError("dimension mismatch: " + std::to_string(p.size()) + " vs " +
                         std::to_string(q.size()));
    }
    return std::sqrt(dist_sq_unchecked(p, q));
}

double dist(PointView p, PointView q, EvalCounter& counter) {
    ++counter.distance_evals;
    return dist(p, q);
}

double kth_largest(std::span<const double> values, std::size_t k) {
    std::vector<double> copy(values.begin(), values.end());
    return kth_largest_inplace(copy, k);
}

double kth_largest_inplace(std::span<double> values, std::size_t k) {
    if (k == 0 || k > values.size()) {
        throw InputError("kth_largest: k=" + std::to_string(k) + " outside [1, " +
                         std::to_string(values.size()) + "]");
    }
    auto nth = values.begin() + static_cast<std::ptrdiff_t>(k - 1);
    std::nth_element(values.begin(), nth, values.end(), std::greater<>());
    return *nth;
}

std::size_t farthest_index(const PointSet& points, PointView c, EvalCounter* counter) {
    if (points.dim() != c.size()) throw InputError("farthest_index: dimension mismatch");
    std::size_t best = 0;
    double best_d = -1.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        const double d = dist_sq_unchecked(points[i], c);
        if (d > best_d) {
            best_d = d;
            best = i;
        }
    }
    if (counter) {
        counter->distance_evals += points.size();
        counter->points_touched += points.size();
    }
    return best;
}

std::vector<std::size_t> sample_indices(std::size_t n, std::size_t m, RngStream& rng) {
    if (m == 0) throw InputError("sample size must be at least 1");
    std::vector<std::size_t> out(m);
    for (auto& i : out) i = rng.uniform_index(n);
    return out;
}

PointSet sample_uniform(const PointSet& points, std::size_t m, RngStream& rng) {
    const auto idx = sample_indices(points.size(), m, rng);
    return points.subset(idx);
}

std::size_t ceil_count(double x) {
    if (!(x >= 0.0) || !std::isfinite(x)) throw InputError("ceil_count: invalid value");
    const double r = std::round(x);
    if (std::abs(x - r) <= 1e-9 * std::max(1.0, r)) return static_cast<std::size_t>(r);
    return static_cast<std::size_t>(std::ceil(x));
}

}  // namespace subgeo
