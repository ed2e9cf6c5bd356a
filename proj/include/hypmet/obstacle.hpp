#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "hypmet/geometry.hpp"

namespace hypmet {

// Excluded-set primitives. Each one is a closed set with an exact
// point-to-set distance rule.

struct SinglePoint {
    Vec at;
};

struct PointSet {
    std::vector<Vec> points;
};

/// Closed ball { p : |p - center| <= radius }.
struct Disc {
    Vec center;
    double radius = 0.0;
};

/// Closed half-space { p : normal . p <= offset }. The normal need not be
/// unit length; distances are scaled by its norm.
struct HalfSpace {
    Vec normal;
    double offset = 0.0;
};

/// Boundary shell { p : |p - center| = radius }. This is the excluded set
/// of a disk domain: interior points get distance radius - |p - center|.
struct Sphere {
    Vec center;
    double radius = 0.0;
};

/// Vertex ids excluded from a graph space. Has no geometric distance rule;
/// graph builders resolve it through the path metric.
struct VertexSet {
    std::vector<int> ids;
};

using Shape = std::variant<SinglePoint, PointSet, Disc, HalfSpace, Sphere, VertexSet>;

/// Nonempty union of primitives. Point-to-set distance is the minimum over
/// the primitives.
struct ObstacleSet {
    std::vector<Shape> primitives;
};

namespace detail {

inline double shape_dist(const Vec& x, const SinglePoint& s) {
    return euclid(x, s.at);
}

inline double shape_dist(const Vec& x, const PointSet& s) {
    if (s.points.empty())
        throw std::domain_error("point-set primitive is empty");
    double best = std::numeric_limits<double>::infinity();
    for (const Vec& p : s.points) best = std::min(best, euclid(x, p));
    return best;
}

inline double shape_dist(const Vec& x, const Disc& s) {
    if (!(s.radius >= 0.0))
        throw std::domain_error("disc primitive has negative radius");
    return std::max(0.0, euclid(x, s.center) - s.radius);
}

inline double shape_dist(const Vec& x, const HalfSpace& s) {
    const double n = norm(s.normal);
    if (!(n > 0.0))
        throw std::domain_error("half-space primitive has zero normal");
    return std::max(0.0, (dot(s.normal, x) - s.offset) / n);
}

inline double shape_dist(const Vec& x, const Sphere& s) {
    if (!(s.radius > 0.0))
        throw std::domain_error("sphere primitive has nonpositive radius");
    return std::abs(euclid(x, s.center) - s.radius);
}

inline double shape_dist(const Vec&, const VertexSet&) {
    throw std::domain_error(
        "vertex-set obstacle has no geometric distance; it is resolved by "
        "the graph builder");
}

} // namespace detail

/// Euclidean distance from x to the union of primitives.
inline double dist_to_set(const Vec& x, const ObstacleSet& m) {
    if (m.primitives.empty())
        throw std::domain_error("dist_to_set: empty obstacle set");
    double best = std::numeric_limits<double>::infinity();
    for (const Shape& s : m.primitives) {
        const double d =
            std::visit([&x](const auto& sh) { return detail::shape_dist(x, sh); }, s);
        best = std::min(best, d);
    }
    return best;
}

inline bool has_vertex_obstacle(const ObstacleSet& m) {
    for (const Shape& s : m.primitives)
        if (std::holds_alternative<VertexSet>(s)) return true;
    return false;
}

} // namespace hypmet
