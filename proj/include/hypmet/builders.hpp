#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "hypmet/errors.hpp"
#include "hypmet/geometry.hpp"
#include "hypmet/obstacle.hpp"
#include "hypmet/rng.hpp"
#include "hypmet/space.hpp"

namespace hypmet {

enum class SpaceKind { EuclideanCloud, HalfplaneLattice, PuncturedPlane, UnitDisk, Graph };

inline const char* space_kind_code(SpaceKind k) {
    switch (k) {
        case SpaceKind::EuclideanCloud: return "euclidean_cloud";
        case SpaceKind::HalfplaneLattice: return "halfplane_lattice";
        case SpaceKind::PuncturedPlane: return "punctured_plane";
        case SpaceKind::UnitDisk: return "unit_disk";
        default: return "graph";
    }
}

struct GraphEdge {
    int a = 0;
    int b = 0;
    double w = 1.0;
};

/// Declarative description of a sampled space. Fields are per kind; unused
/// ones are ignored. An empty obstacle list selects the kind's default
/// excluded set (half-plane boundary, puncture, unit circle); clouds and
/// graphs must name theirs explicitly.
struct SpaceSpec {
    SpaceKind kind = SpaceKind::EuclideanCloud;

    // euclidean_cloud: explicit points, or a seeded uniform cloud in a box.
    std::vector<Vec> points;
    int count = 0;
    Vec box_lo, box_hi;
    std::uint64_t seed = 0;
    double min_clearance = -1.0;  // negative: default 1e-3 * box diameter

    // halfplane_lattice: nx columns, ny rows at heights spacing..ny*spacing.
    int nx = 0, ny = 0;
    double spacing = 0.1;

    // punctured_plane / unit_disk: geometric rings, staggered angles.
    int rings = 0, per_ring = 0;
    double r_min = 0.0, r_max = 0.0;  // zero: kind defaults
    bool include_center = false;      // unit_disk: add the origin

    // graph: vertex count and weighted edge list.
    int vertices = 0;
    std::vector<GraphEdge> edges;

    std::vector<Shape> obstacle;

    // Custom weight table (indexed by sampled point) instead of
    // distance-to-obstacle weights.
    bool custom_weights = false;
    std::vector<double> weight_table;
};

/// A built space: the sample, its excluded set, and the weight function.
/// labels map sampled indices to original ids (graph vertices keep their
/// pre-removal numbering; other kinds are the identity).
struct BuiltSpace {
    SampledSpace space;
    ObstacleSet obstacle;
    WeightFunction weights;
    std::vector<int> labels;
};

namespace detail {

inline ObstacleSet resolve_obstacle(const SpaceSpec& spec) {
    if (!spec.obstacle.empty()) return ObstacleSet{spec.obstacle};
    switch (spec.kind) {
        case SpaceKind::HalfplaneLattice:
            return ObstacleSet{{HalfSpace{Vec{0.0, 1.0}, 0.0}}};
        case SpaceKind::PuncturedPlane:
            return ObstacleSet{{SinglePoint{Vec{0.0, 0.0}}}};
        case SpaceKind::UnitDisk:
            return ObstacleSet{{Sphere{Vec{0.0, 0.0}, 1.0}}};
        case SpaceKind::EuclideanCloud:
            throw BuildError("euclidean_cloud requires an explicit obstacle");
        default:
            throw BuildError("graph requires an explicit vertex obstacle");
    }
}

inline std::vector<Vec> ring_points(int rings, int per_ring, double r_min,
                                    double r_max, bool include_center) {
    if (rings < 1 || per_ring < 3)
        throw BuildError("ring sample needs rings >= 1 and per_ring >= 3");
    if (!(r_min > 0.0) || !(r_max >= r_min))
        throw BuildError("ring radii must satisfy 0 < r_min <= r_max");
    std::vector<Vec> pts;
    if (include_center) pts.push_back(Vec{0.0, 0.0});
    for (int k = 0; k < rings; ++k) {
        // Geometric radii; a half-step stagger on odd rings avoids stacking
        // points on shared rays.
        const double t = rings == 1 ? 0.0 : static_cast<double>(k) / (rings - 1);
        const double r = r_min * std::pow(r_max / r_min, t);
        for (int i = 0; i < per_ring; ++i) {
            const double angle = 6.283185307179586476925286766559 *
                                 (static_cast<double>(i) + 0.5 * (k % 2)) /
                                 static_cast<double>(per_ring);
            pts.push_back(Vec{r * std::cos(angle), r * std::sin(angle)});
        }
    }
    return pts;
}

inline std::vector<Vec> cloud_points(const SpaceSpec& spec, const ObstacleSet& m) {
    if (!spec.points.empty()) return spec.points;
    if (spec.count < 1) throw BuildError("random cloud needs count >= 1");
    const std::size_t dim = spec.box_lo.size();
    if (dim == 0 || spec.box_hi.size() != dim)
        throw BuildError("random cloud needs a box with matching corner dimensions");
    for (std::size_t k = 0; k < dim; ++k)
        if (!(spec.box_lo[k] < spec.box_hi[k]))
            throw BuildError("random cloud box is empty along a coordinate");
    double clearance = spec.min_clearance;
    if (clearance < 0.0) clearance = 1e-3 * euclid(spec.box_lo, spec.box_hi);

    std::vector<Vec> pts;
    pts.reserve(static_cast<std::size_t>(spec.count));
    const std::uint64_t max_attempts =
        1000ULL * static_cast<std::uint64_t>(spec.count) + 1000ULL;
    for (std::uint64_t a = 0; a < max_attempts && pts.size() <
                                  static_cast<std::size_t>(spec.count); ++a) {
        SampleStream s(spec.seed, a);
        Vec p(dim);
        for (std::size_t k = 0; k < dim; ++k)
            p[k] = spec.box_lo[k] + s.unit() * (spec.box_hi[k] - spec.box_lo[k]);
        if (dist_to_set(p, m) >= clearance) pts.push_back(std::move(p));
    }
    if (pts.size() < static_cast<std::size_t>(spec.count))
        throw BuildError("random cloud rejection sampling exhausted its attempts; "
                         "the obstacle crowds out the box");
    return pts;
}

// All-pairs shortest paths by single-source relaxation from every vertex.
// Requires positive weights and a connected graph.
inline std::vector<double> graph_apsp(int n, const std::vector<GraphEdge>& edges) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<double> d(static_cast<std::size_t>(n) * n, inf);
    std::vector<std::vector<std::pair<int, double>>> adj(static_cast<std::size_t>(n));
    for (const GraphEdge& e : edges) {
        if (e.a < 0 || e.a >= n || e.b < 0 || e.b >= n)
            throw BuildError("edge endpoint out of range");
        if (e.a == e.b) throw BuildError("self-loop edges are not allowed");
        if (!(e.w > 0.0) || !std::isfinite(e.w))
            throw BuildError("edge weights must be positive and finite");
        adj[static_cast<std::size_t>(e.a)].push_back({e.b, e.w});
        adj[static_cast<std::size_t>(e.b)].push_back({e.a, e.w});
    }
    std::vector<char> done(static_cast<std::size_t>(n));
    for (int src = 0; src < n; ++src) {
        double* row = &d[static_cast<std::size_t>(src) * n];
        std::fill(done.begin(), done.end(), 0);
        row[src] = 0.0;
        for (int it = 0; it < n; ++it) {
            int u = -1;
            double bu = inf;
            for (int v = 0; v < n; ++v)
                if (!done[static_cast<std::size_t>(v)] && row[v] < bu) {
                    bu = row[v];
                    u = v;
                }
            if (u < 0) break;
            done[static_cast<std::size_t>(u)] = 1;
            for (const auto& [v, w] : adj[static_cast<std::size_t>(u)])
                row[v] = std::min(row[v], row[u] + w);
        }
        for (int v = 0; v < n; ++v)
            if (!(row[v] < inf))
                throw BuildError("graph is disconnected: vertex " +
                                 std::to_string(v) + " unreachable from " +
                                 std::to_string(src));
    }
    return d;
}

inline BuiltSpace build_graph(const SpaceSpec& spec, const ObstacleSet& m) {
    const int n = spec.vertices;
    if (n < 1) throw BuildError("graph needs vertices >= 1");
    const VertexSet* vs = nullptr;
    for (const Shape& s : m.primitives)
        if (const auto* p = std::get_if<VertexSet>(&s)) vs = p;
    if (!vs || m.primitives.size() != 1)
        throw BuildError("graph obstacle must be a single vertex set");
    std::vector<char> excluded(static_cast<std::size_t>(n));
    for (int id : vs->ids) {
        if (id < 0 || id >= n) throw BuildError("obstacle vertex out of range");
        excluded[static_cast<std::size_t>(id)] = 1;
    }
    if (vs->ids.empty()) throw BuildError("graph obstacle vertex set is empty");

    const std::vector<double> full = graph_apsp(n, spec.edges);

    std::vector<int> keep;
    for (int v = 0; v < n; ++v)
        if (!excluded[static_cast<std::size_t>(v)]) keep.push_back(v);
    if (keep.empty()) throw BuildError("obstacle excludes every vertex");

    const int m_keep = static_cast<int>(keep.size());
    std::vector<double> sub(static_cast<std::size_t>(m_keep) * m_keep);
    for (int i = 0; i < m_keep; ++i)
        for (int j = 0; j < m_keep; ++j)
            sub[static_cast<std::size_t>(i) * m_keep + j] =
                full[static_cast<std::size_t>(keep[static_cast<std::size_t>(i)]) * n +
                     keep[static_cast<std::size_t>(j)]];

    BuiltSpace out;
    out.space = SampledSpace::from_matrix(m_keep, std::move(sub));
    out.obstacle = m;
    out.labels = keep;

    if (spec.custom_weights) {
        if (spec.weight_table.size() != static_cast<std::size_t>(m_keep))
            throw BuildError("custom weight table size does not match sample size");
        out.weights = make_weights(spec.weight_table, WeightSource::CustomTable);
    } else {
        // Path distance to the excluded vertex set; 1-Lipschitz in the
        // graph metric by construction.
        std::vector<double> w(static_cast<std::size_t>(m_keep));
        for (int i = 0; i < m_keep; ++i) {
            double best = std::numeric_limits<double>::infinity();
            for (int id : vs->ids)
                best = std::min(best,
                                full[static_cast<std::size_t>(
                                         keep[static_cast<std::size_t>(i)]) * n + id]);
            w[static_cast<std::size_t>(i)] = best;
        }
        out.weights = make_weights(std::move(w), WeightSource::DistToObstacle, true);
    }
    return out;
}

} // namespace detail

/// Materializes a space description. Every sampled point must lie strictly
/// outside the excluded set; offenders are an error, never silently
/// dropped.
inline BuiltSpace build(const SpaceSpec& spec) {
    const ObstacleSet m = detail::resolve_obstacle(spec);
    if (spec.kind == SpaceKind::Graph) return detail::build_graph(spec, m);
    if (has_vertex_obstacle(m))
        throw BuildError("vertex-set obstacles only apply to graph spaces");

    std::vector<Vec> pts;
    switch (spec.kind) {
        case SpaceKind::EuclideanCloud:
            pts = detail::cloud_points(spec, m);
            break;
        case SpaceKind::HalfplaneLattice: {
            if (spec.nx < 1 || spec.ny < 1 || !(spec.spacing > 0.0))
                throw BuildError("halfplane_lattice needs nx, ny >= 1 and spacing > 0");
            for (int j = 1; j <= spec.ny; ++j)
                for (int i = 0; i < spec.nx; ++i)
                    pts.push_back(Vec{i * spec.spacing, j * spec.spacing});
            break;
        }
        case SpaceKind::PuncturedPlane: {
            const double r0 = spec.r_min > 0.0 ? spec.r_min : 0.5;
            const double r1 = spec.r_max > 0.0 ? spec.r_max : 4.0;
            pts = detail::ring_points(spec.rings ? spec.rings : 4,
                                      spec.per_ring ? spec.per_ring : 14, r0, r1,
                                      false);
            break;
        }
        case SpaceKind::UnitDisk: {
            const double r0 = spec.r_min > 0.0 ? spec.r_min : 0.2;
            const double r1 = spec.r_max > 0.0 ? spec.r_max : 0.9;
            if (r1 > 1.0 - 1e-4)
                throw BuildError("unit_disk ring radii must stay below 1 - 1e-4");
            pts = detail::ring_points(spec.rings ? spec.rings : 3,
                                      spec.per_ring ? spec.per_ring : 18, r0, r1,
                                      spec.include_center);
            break;
        }
        default:
            break;
    }

    for (std::size_t i = 0; i < pts.size(); ++i)
        if (!(dist_to_set(pts[i], m) > 0.0))
            throw BuildError("point " + std::to_string(i) +
                             " lies in the excluded set");

    BuiltSpace out;
    out.space = SampledSpace::from_points(std::move(pts));
    out.obstacle = m;
    out.labels.resize(static_cast<std::size_t>(out.space.size()));
    for (int i = 0; i < out.space.size(); ++i)
        out.labels[static_cast<std::size_t>(i)] = i;

    if (spec.custom_weights) {
        if (spec.weight_table.size() != static_cast<std::size_t>(out.space.size()))
            throw BuildError("custom weight table size does not match sample size");
        out.weights = make_weights(spec.weight_table, WeightSource::CustomTable);
    } else {
        std::vector<double> w(static_cast<std::size_t>(out.space.size()));
        for (int i = 0; i < out.space.size(); ++i)
            w[static_cast<std::size_t>(i)] = dist_to_set(out.space.point(i), m);
        out.weights = make_weights(std::move(w), WeightSource::DistToObstacle, true);
    }
    return out;
}

/// Three boundary-orthogonal collinear points in the upper half-space over
/// a shared horizontal position: (h, height_x), (h, height_y),
/// (h, height_z). Heights must be positive and pairwise distinct.
inline std::array<Vec, 3> collinear_halfspace_triple(double height_x, double height_y,
                                                     double height_z,
                                                     const Vec& shared = Vec{0.0}) {
    const double hs[3] = {height_x, height_y, height_z};
    for (double h : hs)
        if (!(h > 0.0) || !std::isfinite(h))
            throw std::domain_error("heights must be positive and finite");
    if (height_x == height_y || height_x == height_z || height_y == height_z)
        throw std::domain_error("heights must be pairwise distinct");
    std::array<Vec, 3> out;
    for (int k = 0; k < 3; ++k) {
        Vec p(shared);
        p.push_back(hs[k]);
        out[static_cast<std::size_t>(k)] = std::move(p);
    }
    return out;
}

} // namespace hypmet
