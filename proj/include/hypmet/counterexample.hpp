#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <utility>

#include "hypmet/audit.hpp"
#include "hypmet/geometry.hpp"
#include "hypmet/metrics.hpp"
#include "hypmet/rng.hpp"

namespace hypmet {

/// Outcome of a triangle-violation hunt over the unit disk with
/// boundary-distance weights. `defect` is the most negative triangle slack
/// encountered (first violating slack when `found`); the witness is stored
/// as (endpoint, middle, endpoint) with endpoints in lexicographic order.
struct CounterexampleReport {
    bool found = false;
    std::array<Vec, 3> witness{};
    std::array<double, 3> witness_weights{};
    double defect = std::numeric_limits<double>::infinity();
    std::uint64_t evaluated = 0;
    std::uint64_t budget = 0;
    std::uint64_t seed = 0;
};

namespace detail {

struct TripleOutcome {
    double defect;
    std::array<Vec, 3> witness;
    std::array<double, 3> weights;
};

// Minimum triangle slack over the three middle-point assignments of one
// triple; three pairwise evaluations cover all of them.
inline TripleOutcome disk_triple_defect(const Family& fam, std::array<Vec, 3> p,
                                        std::array<double, 3> f) {
    const double h01 = rho(fam, euclid(p[0], p[1]), f[0], f[1]);
    const double h12 = rho(fam, euclid(p[1], p[2]), f[1], f[2]);
    const double h02 = rho(fam, euclid(p[0], p[2]), f[0], f[2]);
    const double through[3] = {h01 + h02 - h12, h01 + h12 - h02, h02 + h12 - h01};
    int mid = 0;
    if (through[1] < through[mid]) mid = 1;
    if (through[2] < through[mid]) mid = 2;
    TripleOutcome out{through[mid], {}, {}};
    const int a = mid == 0 ? 1 : 0;
    const int b = mid == 2 ? 1 : 2;
    int lo = a, hi = b;
    if (p[static_cast<std::size_t>(b)] < p[static_cast<std::size_t>(a)]) {
        lo = b;
        hi = a;
    }
    out.witness = {p[static_cast<std::size_t>(lo)], p[static_cast<std::size_t>(mid)],
                   p[static_cast<std::size_t>(hi)]};
    out.weights = {f[static_cast<std::size_t>(lo)], f[static_cast<std::size_t>(mid)],
                   f[static_cast<std::size_t>(hi)]};
    return out;
}

inline Vec disk_point(SampleStream& s) {
    for (;;) {
        Vec p{2.0 * s.unit() - 1.0, 2.0 * s.unit() - 1.0};
        if (norm(p) < 1.0) return p;
    }
}

} // namespace detail

/// Hunts for a triangle-inequality violation of the weighted distance on
/// the open unit disk, weight = distance to the unit circle. Phase one
/// sweeps diametral triples (-a,0), (0,0), (a,0) with a = 1 - 10^-k,
/// k = 2..6, pushing the endpoints toward the boundary where violations
/// concentrate; phase two draws seeded uniform triples. Stops at the first
/// slack below -tol_abs or when `budget` triples have been evaluated.
/// Deterministic for fixed (family, budget, seed).
inline CounterexampleReport find_triangle_violation(const Family& fam,
                                                    std::uint64_t budget,
                                                    std::uint64_t seed) {
    CounterexampleReport report;
    report.budget = budget;
    report.seed = seed;

    auto consider = [&](const detail::TripleOutcome& t) {
        if (t.defect < report.defect) {
            report.defect = t.defect;
            report.witness = t.witness;
            report.witness_weights = t.weights;
        }
        return t.defect < -tol_abs;
    };

    for (int k = 2; k <= 6 && report.evaluated < budget; ++k) {
        const double gap = std::pow(10.0, -k);
        const double a = 1.0 - gap;
        const detail::TripleOutcome t = detail::disk_triple_defect(
            fam, {Vec{-a, 0.0}, Vec{0.0, 0.0}, Vec{a, 0.0}}, {gap, 1.0, gap});
        ++report.evaluated;
        if (consider(t)) {
            report.found = true;
            return report;
        }
    }

    for (std::uint64_t i = 0; report.evaluated < budget; ++i) {
        SampleStream s(seed, i);
        std::array<Vec, 3> p{detail::disk_point(s), detail::disk_point(s),
                             detail::disk_point(s)};
        std::array<double, 3> f{1.0 - norm(p[0]), 1.0 - norm(p[1]),
                                1.0 - norm(p[2])};
        if (!(f[0] > 0.0) || !(f[1] > 0.0) || !(f[2] > 0.0)) continue;
        const detail::TripleOutcome t = detail::disk_triple_defect(fam, p, f);
        ++report.evaluated;
        if (consider(t)) {
            report.found = true;
            return report;
        }
    }
    return report;
}

} // namespace hypmet
