#ifndef SUBGEO_INSTANCE_HPP
#define SUBGEO_INSTANCE_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "subgeo/geometry.hpp"

namespace subgeo {

enum class PlantedKind { meb, kcenter, line, svm1, svm2, lower_bound };

std::string to_string(PlantedKind kind);

/// Known feasible structure of a generated instance. `size` is an upper
/// bound on the optimum for minimization problems (meb, kcenter, line) and
/// a lower bound on the optimal margin for svm1/svm2.
struct PlantedTruth {
    PlantedKind kind = PlantedKind::meb;
    std::vector<Point> centers;  // ball centers, or a line anchor
    Point direction;             // line direction or separating normal
    double size = 0.0;
    std::vector<std::size_t> inliers;  // sorted indices into P
};

struct OutlierInstance {
    PointSet P;
    double gamma = 0.0;
    std::optional<PlantedTruth> truth;

    /// Throws InputError unless 0 <= gamma < 1 and ceil((1-gamma) n) >= 1.
    void validate() const;
};

struct TwoClassInstance {
    PointSet P1;
    PointSet P2;
    double gamma1 = 0.0;
    double gamma2 = 0.0;
    std::optional<PlantedTruth> truth;  // inliers index P1 then P2 (P2 offset by |P1|)

    void validate() const;
};

}  // namespace subgeo

#endif  // SUBGEO_INSTANCE_HPP
