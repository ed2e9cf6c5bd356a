#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "hypmet/geometry.hpp"
#include "hypmet/metrics.hpp"
#include "hypmet/obstacle.hpp"
#include "hypmet/rng.hpp"

namespace hypmet {

/// Worst-case distortion ratio at radius r for 1-Lipschitz weights:
/// bound_upper_near / bound_lower_global. Decreases toward the family's
/// dilatation limit as r -> 0 (GO and DHV: 1; NA: 3; IBR: 5/2 fine,
/// 5 coarse).
inline double envelope_ratio(const Family& f, double r, double fx,
                             BoundKind kind = BoundKind::Fine) {
    if (!(r > 0.0)) throw std::domain_error("envelope_ratio requires r > 0");
    return bound_upper_near(f, r, fx) / bound_lower_global(f, r, fx, kind);
}

/// Weight field defined on the whole ambient space, so synthesized probe
/// points can be weighed: distance to an obstacle set, or a constant
/// (the off-sample extension of constant custom weights).
class AmbientWeight {
public:
    static AmbientWeight obstacle(ObstacleSet m) {
        AmbientWeight w;
        w.obstacle_ = std::move(m);
        w.is_obstacle_ = true;
        return w;
    }

    static AmbientWeight constant(double value) {
        if (!(value > 0.0) || !std::isfinite(value))
            throw std::domain_error("constant weight must be positive and finite");
        AmbientWeight w;
        w.constant_ = value;
        return w;
    }

    double operator()(const Vec& x) const {
        return is_obstacle_ ? dist_to_set(x, obstacle_) : constant_;
    }

    bool is_obstacle() const { return is_obstacle_; }

private:
    ObstacleSet obstacle_;
    double constant_ = 1.0;
    bool is_obstacle_ = false;
};

namespace detail {

// Probe direction j of n on the unit sphere: equally spaced angles with
// seeded jitter in 2-D, seeded isotropic Gaussian otherwise. A pure
// function of (seed, j).
inline Vec probe_direction(int dim, int n_probes, std::uint64_t seed, int j) {
    SampleStream s(seed, static_cast<std::uint64_t>(j));
    if (dim == 1) return Vec{j % 2 == 0 ? 1.0 : -1.0};
    if (dim == 2) {
        const double angle = 6.283185307179586476925286766559 *
                             (static_cast<double>(j) + s.unit()) /
                             static_cast<double>(n_probes);
        return Vec{std::cos(angle), std::sin(angle)};
    }
    for (;;) {
        Vec v(static_cast<std::size_t>(dim));
        for (int k = 0; k < dim; ++k) v[static_cast<std::size_t>(k)] = s.normal();
        const double len = norm(v);
        if (len > 1e-12) {
            for (double& c : v) c /= len;
            return v;
        }
    }
}

} // namespace detail

/// Empirical dilatation at x and radius r: sup/inf of rho(x, p) over
/// sphere probes p at base distance exactly r. Probes landing on the
/// excluded set are rejected; r must stay below the weight at x.
inline double dilatation_empirical(const Family& f, const AmbientWeight& weight,
                                   const Vec& x, double r, int n_probes,
                                   std::uint64_t seed) {
    if (x.empty()) throw std::domain_error("probe center needs coordinates");
    const double fx = weight(x);
    if (!(fx > 0.0)) throw std::domain_error("probe center lies on the excluded set");
    if (!(r > 0.0) || !(r < fx))
        throw std::domain_error("probe radius must satisfy 0 < r < F(center)");
    if (n_probes < 2) throw std::domain_error("need at least two probes");

    const int dim = static_cast<int>(x.size());
    double hi = -std::numeric_limits<double>::infinity();
    double lo = std::numeric_limits<double>::infinity();
    for (int j = 0; j < n_probes; ++j) {
        const Vec u = detail::probe_direction(dim, n_probes, seed, j);
        Vec p(x);
        for (int k = 0; k < dim; ++k)
            p[static_cast<std::size_t>(k)] += r * u[static_cast<std::size_t>(k)];
        const double fp = weight(p);
        if (!(fp > 0.0)) continue;  // probe fell on the excluded set
        // The base distance is r by construction; feeding r (not a
        // recomputed norm) keeps the probe exactly on the sphere.
        const double v = rho(f, r, fx, fp);
        hi = std::max(hi, v);
        lo = std::min(lo, v);
    }
    if (!(lo <= hi)) throw std::domain_error("all probes fell on the excluded set");
    return hi / lo;
}

struct ExtrapolationResult {
    double value = 0.0;
    bool converged = false;
};

/// Takes values sampled on a decreasing geometric radius grid and returns
/// the value at the smallest radius, with a convergence flag: successive
/// differences must shrink by at least sqrt(grid_ratio) each step (plus a
/// few ulps of guard so exactly-converged tails are not penalized).
inline ExtrapolationResult extrapolate_limit(const std::vector<double>& values,
                                             double grid_ratio) {
    if (values.size() < 3)
        throw std::domain_error("extrapolation needs at least three radii");
    if (!(grid_ratio > 0.0) || !(grid_ratio < 1.0))
        throw std::domain_error("grid ratio must lie in (0, 1)");
    double scale = 0.0;
    for (double v : values) scale = std::max(scale, std::abs(v));
    const double guard = 32.0 * std::numeric_limits<double>::epsilon() * scale;
    const double shrink = std::sqrt(grid_ratio);
    bool ok = true;
    for (std::size_t k = 0; k + 2 < values.size(); ++k) {
        const double d0 = std::abs(values[k + 1] - values[k]);
        const double d1 = std::abs(values[k + 2] - values[k + 1]);
        if (d1 > shrink * d0 + guard) { ok = false; break; }
    }
    return ExtrapolationResult{values.back(), ok};
}

/// Dilatation sweep at one center over a decreasing geometric grid of
/// radius fractions of F(center). h_env is the analytic envelope ratio;
/// h_hat the sphere-probe estimate (empty when empirical probing is
/// skipped). extrapolated reports the envelope series limit.
struct DilatationProfile {
    Vec center;
    double center_weight = 0.0;
    std::vector<double> radii;  // absolute radii, decreasing
    std::vector<double> h_hat;
    std::vector<double> h_env;
    ExtrapolationResult extrapolated;
    Family family;
    BoundKind ibr_variant = BoundKind::Fine;
};

inline DilatationProfile dilatation_profile(const Family& f,
                                            const AmbientWeight& weight,
                                            const Vec& center,
                                            const std::vector<double>& fractions,
                                            int n_probes, std::uint64_t seed,
                                            BoundKind ibr_variant = BoundKind::Fine,
                                            bool with_empirical = true) {
    if (fractions.size() < 3)
        throw std::domain_error("radius grid needs at least three entries");
    const double q = fractions[1] / fractions[0];
    if (!(q > 0.0) || !(q < 1.0))
        throw std::domain_error("radius fractions must decrease geometrically");
    for (std::size_t k = 0; k + 1 < fractions.size(); ++k) {
        const double qq = fractions[k + 1] / fractions[k];
        if (std::abs(qq - q) > 1e-9 * q)
            throw std::domain_error("radius fractions must decrease geometrically");
        if (!(fractions[k] > 0.0) || !(fractions[k] < 1.0))
            throw std::domain_error("radius fractions must lie in (0, 1)");
    }
    if (!(fractions.back() > 0.0) || !(fractions.back() < 1.0))
        throw std::domain_error("radius fractions must lie in (0, 1)");

    DilatationProfile prof;
    prof.center = center;
    prof.center_weight = weight(center);
    prof.family = f;
    prof.ibr_variant = ibr_variant;
    for (std::size_t k = 0; k < fractions.size(); ++k) {
        const double r = fractions[k] * prof.center_weight;
        prof.radii.push_back(r);
        prof.h_env.push_back(envelope_ratio(f, r, prof.center_weight, ibr_variant));
        if (with_empirical) {
            const std::uint64_t seed_r = mix64(seed + 0x9E3779B97F4A7C15ULL * (k + 1));
            prof.h_hat.push_back(
                dilatation_empirical(f, weight, center, r, n_probes, seed_r));
        }
    }
    prof.extrapolated = extrapolate_limit(prof.h_env, q);
    return prof;
}

} // namespace hypmet
