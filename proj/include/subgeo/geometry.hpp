#ifndef SUBGEO_GEOMETRY_HPP
#define SUBGEO_GEOMETRY_HPP

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <span>
#include <vector>

namespace subgeo {

using PointView = std::span<const double>;

/// A single point in R^d, owning its coordinates.
class Point {
public:
    Point() = default;
    explicit Point(std::size_t d, double fill = 0.0) : coords_(d, fill) {}
    Point(std::initializer_list<double> coords) : coords_(coords) {}
    explicit Point(std::vector<double> coords) : coords_(std::move(coords)) {}
    explicit Point(PointView v) : coords_(v.begin(), v.end()) {}

    std::size_t dim() const { return coords_.size(); }
    double operator[](std::size_t i) const { return coords_[i]; }
    double& operator[](std::size_t i) { return coords_[i]; }

    PointView view() const { return coords_; }
    operator PointView() const { return coords_; }  // NOLINT(google-explicit-constructor)
    std::span<double> span() { return coords_; }
    const std::vector<double>& coords() const { return coords_; }

    bool operator==(const Point&) const = default;

private:
    std::vector<double> coords_;
};

/// n points in R^d stored row-major. Immutable after construction; n >= 1,
/// every coordinate finite. Index order is the tie-break everywhere.
class PointSet {
public:
    PointSet(std::size_t n, std::size_t d, std::vector<double> data);

    static PointSet from_points(const std::vector<Point>& points);

    std::size_t size() const { return n_; }
    std::size_t dim() const { return d_; }
    PointView operator[](std::size_t i) const { return {data_.data() + i * d_, d_}; }
    Point point(std::size_t i) const { return Point((*this)[i]); }
    std::span<const double> data() const { return data_; }

    PointSet subset(std::span<const std::size_t> indices) const;
    PointSet scaled(double alpha) const;

private:
    std::size_t n_;
    std::size_t d_;
    std::vector<double> data_;
};

/// Deterministic random stream keyed by (seed, stream id).
class RngStream {
public:
    explicit RngStream(std::uint64_t seed, std::uint64_t stream = 0);

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream() const { return stream_; }

    /// Uniform integer in [0, n). n must be positive.
    std::size_t uniform_index(std::size_t n);
    /// Uniform real in [0, 1).
    double uniform01();
    double normal();

    std::mt19937_64& engine() { return engine_; }

private:
    std::uint64_t seed_;
    std::uint64_t stream_;
    std::mt19937_64 engine_;
};

/// Instrumentation for the sub-linear claims. One counter per worker;
/// merge with += so the final count equals the serial sum.
struct EvalCounter {
    std::uint64_t distance_evals = 0;
    std::uint64_t points_touched = 0;

    EvalCounter& operator+=(const EvalCounter& other) {
        distance_evals += other.distance_evals;
        points_touched += other.points_touched;
        return *this;
    }
    bool operator==(const EvalCounter&) const = default;
};

inline double dot(PointView a, PointView b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm(PointView a) { return std::sqrt(dot(a, a)); }

// Unchecked squared distance for hot loops; callers guarantee equal dims.
inline double dist_sq_unchecked(PointView a, PointView b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double t = a[i] - b[i];
        s += t * t;
    }
    return s;
}

/// Euclidean distance. Throws InputError on dimension mismatch.
double dist(PointView p, PointView q);
/// Instrumented variant: counts one distance evaluation.
double dist(PointView p, PointView q, EvalCounter& counter);

/// k-th largest value (k = 1 is the maximum), expected linear time.
double kth_largest(std::span<const double> values, std::size_t k);
/// Same, but partially reorders `values` instead of copying.
double kth_largest_inplace(std::span<double> values, std::size_t k);

/// Index of the point farthest from c; ties go to the smallest index.
std::size_t farthest_index(const PointSet& points, PointView c, EvalCounter* counter = nullptr);

/// m indices drawn uniformly with replacement from [0, n).
std::vector<std::size_t> sample_indices(std::size_t n, std::size_t m, RngStream& rng);
/// m points drawn uniformly with replacement.
PointSet sample_uniform(const PointSet& points, std::size_t m, RngStream& rng);

/// Ceiling that snaps values within 1e-9 (relative) of an integer down to
/// that integer, so quantities like (2 + eps) / eps land on the intended count.
std::size_t ceil_count(double x);

}  // namespace subgeo

#endif  // SUBGEO_GEOMETRY_HPP
