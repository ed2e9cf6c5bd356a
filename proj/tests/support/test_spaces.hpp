#pragma once

// Canonical geometries shared by the unit and acceptance suites: five
// small spaces for exhaustive quadruple scans (n <= 60) and five larger
// ones for exhaustive triple audits (n about 150..200), plus the closed
// forms the empirical estimators are measured against.

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "hypmet/hypmet.hpp"

namespace testsup {

inline hypmet::SpaceSpec halfplane_spec(int nx, int ny, double spacing) {
    hypmet::SpaceSpec s;
    s.kind = hypmet::SpaceKind::HalfplaneLattice;
    s.nx = nx;
    s.ny = ny;
    s.spacing = spacing;
    return s;
}

inline hypmet::SpaceSpec punctured_spec(int rings, int per_ring) {
    hypmet::SpaceSpec s;
    s.kind = hypmet::SpaceKind::PuncturedPlane;
    s.rings = rings;
    s.per_ring = per_ring;
    s.r_min = 0.5;
    s.r_max = 4.0;
    return s;
}

inline hypmet::SpaceSpec disk_spec(int rings, int per_ring, bool center = false) {
    hypmet::SpaceSpec s;
    s.kind = hypmet::SpaceKind::UnitDisk;
    s.rings = rings;
    s.per_ring = per_ring;
    s.r_min = 0.2;
    s.r_max = 0.9;
    s.include_center = center;
    return s;
}

inline hypmet::SpaceSpec cloud_spec(int count, double half, std::uint64_t seed) {
    hypmet::SpaceSpec s;
    s.kind = hypmet::SpaceKind::EuclideanCloud;
    s.count = count;
    s.box_lo = {-half, -half};
    s.box_hi = {half, half};
    s.seed = seed;
    s.obstacle = {hypmet::Disc{{0.0, 0.0}, 1.0}};
    return s;
}

/// 16-vertex hub-and-spokes graph; the hub is the excluded set, so weights
/// are path distances to it. 15 vertices survive.
inline hypmet::SpaceSpec graph_spec_small() {
    hypmet::SpaceSpec s;
    s.kind = hypmet::SpaceKind::Graph;
    s.vertices = 16;
    s.edges = {
        {0, 1, 1.0},  {0, 2, 1.0},  {0, 3, 1.0},  {0, 4, 1.0},  {0, 5, 1.0},
        {1, 2, 1.3},  {2, 3, 1.3},  {3, 4, 1.3},  {4, 5, 1.3},  {5, 1, 1.3},
        {1, 6, 0.7},  {6, 7, 0.9},  {7, 14, 0.4}, {2, 8, 1.1},  {8, 15, 1.0},
        {3, 9, 0.5},  {9, 10, 0.8}, {4, 11, 1.2}, {5, 12, 0.6}, {12, 13, 1.4}};
    s.obstacle = {hypmet::VertexSet{{0}}};
    return s;
}

/// 160-vertex ring with seeded chord weights; two excluded vertices leave
/// n = 158 for the exhaustive triple audits.
inline hypmet::SpaceSpec graph_spec_large() {
    hypmet::SpaceSpec s;
    s.kind = hypmet::SpaceKind::Graph;
    s.vertices = 160;
    for (int i = 0; i < 160; ++i) {
        hypmet::SampleStream rnd(1234, static_cast<std::uint64_t>(i));
        s.edges.push_back({i, (i + 1) % 160, 0.5 + rnd.unit()});
        if (i % 3 == 0) s.edges.push_back({i, (i + 37) % 160, 1.0 + 2.0 * rnd.unit()});
    }
    s.obstacle = {hypmet::VertexSet{{0, 80}}};
    return s;
}

struct NamedSpace {
    std::string name;
    hypmet::BuiltSpace built;
};

/// The five quadruple-scan spaces (n <= 60).
inline std::vector<NamedSpace> delta_spaces() {
    std::vector<NamedSpace> out;
    out.push_back({"halfplane", hypmet::build(halfplane_spec(8, 7, 0.25))});
    out.push_back({"punctured", hypmet::build(punctured_spec(4, 14))});
    out.push_back({"disk", hypmet::build(disk_spec(3, 18))});
    out.push_back({"cloud", hypmet::build(cloud_spec(56, 3.0, 7))});
    out.push_back({"graph", hypmet::build(graph_spec_small())});
    return out;
}

/// The five triple-audit spaces (n about 150..200).
inline std::vector<NamedSpace> audit_spaces() {
    std::vector<NamedSpace> out;
    out.push_back({"halfplane", hypmet::build(halfplane_spec(14, 14, 0.2))});
    out.push_back({"punctured", hypmet::build(punctured_spec(13, 15))});
    out.push_back({"disk", hypmet::build(disk_spec(10, 19, true))});
    out.push_back({"cloud", hypmet::build(cloud_spec(180, 4.0, 11))});
    out.push_back({"graph", hypmet::build(graph_spec_large())});
    return out;
}

/// Seeded positive weights with no Lipschitz relation to any distance:
/// log-uniform across three decades.
inline hypmet::WeightFunction random_positive_weights(int n, std::uint64_t seed) {
    std::vector<double> w(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        hypmet::SampleStream s(seed, static_cast<std::uint64_t>(i));
        w[static_cast<std::size_t>(i)] = std::pow(10.0, 3.0 * (s.unit() - 0.5));
    }
    return hypmet::make_weights(std::move(w), hypmet::WeightSource::CustomTable);
}

/// Exact dilatation of the identity on the punctured plane at |x| = u,
/// radius r < u: probes at distance r see weights F(p) = |p| spanning
/// [u-r, u+r]. GO/DHV/NA decrease in F(p), so the sup/inf sit at the
/// toward/away poles; the IBR formula dips at F(p) = u and rises
/// toward both poles, so its inf sits at F(p) = u.
inline double punctured_dilatation_closed_form(const hypmet::Family& f, double u,
                                               double r) {
    const double toward = hypmet::rho(f, r, u, u - r);
    const double away = hypmet::rho(f, r, u, u + r);
    if (f.kind == hypmet::MetricKind::IBR)
        return std::max(toward, away) / hypmet::rho(f, r, u, u);
    return toward / away;
}

/// Collinear sample of the Euclidean line, embedded in 1-D.
inline hypmet::SampledSpace line_space(const std::vector<double>& xs) {
    std::vector<hypmet::Vec> pts;
    for (double x : xs) pts.push_back({x});
    return hypmet::SampledSpace::from_points(std::move(pts));
}

/// Cycle graph C_n with unit edges as a distance matrix.
inline hypmet::SampledSpace cycle_space(int n) {
    std::vector<double> m(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const int a = std::abs(i - j);
            m[static_cast<std::size_t>(i) * n + j] = std::min(a, n - a);
        }
    return hypmet::SampledSpace::from_matrix(n, std::move(m));
}

} // namespace testsup
