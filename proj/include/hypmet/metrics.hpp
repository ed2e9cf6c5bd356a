#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include "hypmet/audit.hpp"

namespace hypmet {

enum class MetricKind { GO, DHV, NA, IBR };

/// Metric family selector. DHV carries its parameter c; the other families
/// ignore it. DHV is a certified metric only for c >= 2 but every family
/// member is constructible (the c < 2 members exist so their triangle
/// failures can be exhibited).
struct Family {
    MetricKind kind = MetricKind::GO;
    double c = 2.0;

    static Family go() { return {MetricKind::GO, 2.0}; }
    static Family na() { return {MetricKind::NA, 2.0}; }
    static Family ibr() { return {MetricKind::IBR, 2.0}; }
    static Family dhv(double c) {
        if (!(c > 0.0) || !std::isfinite(c))
            throw std::domain_error("dhv parameter c must be positive and finite");
        return {MetricKind::DHV, c};
    }
};

inline const char* family_code(MetricKind k) {
    switch (k) {
        case MetricKind::GO: return "go";
        case MetricKind::DHV: return "dhv";
        case MetricKind::NA: return "na";
        default: return "ibr";
    }
}

/// True when the family member is a metric for every admissible input
/// (DHV requires c >= 2; the rest are unconditional).
inline bool metricity_certified(const Family& f) {
    return f.kind != MetricKind::DHV || f.c >= 2.0;
}

/// Variant selector for the IBR-family lower bound and inversion:
/// Fine needs 1-Lipschitz weights and is tight; Coarse holds for arbitrary
/// positive weights.
enum class BoundKind { Fine, Coarse };

namespace detail {

inline void require_pair_inputs(double d, double fx, double fy) {
    if (!(d >= 0.0) || !std::isfinite(d))
        throw std::domain_error("distance must be finite and nonnegative");
    if (!(fx > 0.0) || !std::isfinite(fx) || !(fy > 0.0) || !std::isfinite(fy))
        throw std::domain_error("weights must be finite and strictly positive");
}

} // namespace detail

/// Value of the family metric at distance d and endpoint weights Fx, Fy.
///
/// Evaluations are arranged as log1p of a nonnegative quantity, so values
/// stay accurate for d much smaller than the weights, and symmetrically in
/// (Fx, Fy), so rho(d, Fx, Fy) == rho(d, Fy, Fx) bitwise.
inline double rho(const Family& f, double d, double fx, double fy) {
    detail::require_pair_inputs(d, fx, fy);
    switch (f.kind) {
        case MetricKind::GO:
            return 0.5 * (std::log1p(d / fx) + std::log1p(d / fy));
        case MetricKind::DHV:
            return std::log1p(f.c * d / std::sqrt(fx * fy));
        case MetricKind::NA: {
            const double sx = std::sqrt(fx);
            const double sy = std::sqrt(fy);
            const double g = sx - sy;  // (sx-sy)^2 absorbs the weight gap exactly
            return 2.0 * std::log1p((g * g + d) / (2.0 * (sx * sy)));
        }
        default: {
            const double sx = std::sqrt(fx);
            const double sy = std::sqrt(fy);
            const double hi = std::max(sx, sy);
            const double lo = std::min(sx, sy);
            return 2.0 * std::log1p((d + hi * (hi - lo)) / (hi * lo));
        }
    }
}

/// Comparison functional whose four-point products certify hyperbolicity:
/// DHV: c d + sqrt(Fx Fy); NA: Fx + Fy + d; IBR: d + max{Fx, Fy}.
/// The GO family has none.
inline double comparison_functional(const Family& f, double d, double fx, double fy) {
    detail::require_pair_inputs(d, fx, fy);
    switch (f.kind) {
        case MetricKind::DHV: return f.c * d + std::sqrt(fx * fy);
        case MetricKind::NA: return fx + fy + d;
        case MetricKind::IBR: return d + std::max(fx, fy);
        default:
            throw std::invalid_argument("the GO family has no comparison functional");
    }
}

/// Multiplicative four-point factor for the comparison functional:
/// products of opposite pair values obey max <= factor * median.
inline double multiplicative_factor(const Family& f) {
    switch (f.kind) {
        case MetricKind::DHV: {
            const double t = (2.0 * f.c + 1.0) / f.c;
            return t * t;
        }
        case MetricKind::NA: return 9.0;
        case MetricKind::IBR: return 4.0;
        default:
            throw std::invalid_argument("the GO family has no comparison functional");
    }
}

/// Certified Gromov hyperbolicity constant of the family on any admissible
/// space: GO 1/4 log 24, DHV log(2 + 1/c) for every c > 0, NA log 9,
/// IBR log 4. GO/DHV/NA assume 1-Lipschitz weights; IBR does not.
inline double certified_delta_bound(const Family& f) {
    switch (f.kind) {
        case MetricKind::GO: return 0.25 * std::log(24.0);
        case MetricKind::DHV: return std::log(2.0 + 1.0 / f.c);
        case MetricKind::NA: return std::log(9.0);
        default: return std::log(4.0);
    }
}

namespace detail {

inline void require_radius(double r, double fx, bool strict_upper) {
    if (!(fx > 0.0) || !std::isfinite(fx))
        throw std::domain_error("weight must be finite and strictly positive");
    if (!(r >= 0.0) || !std::isfinite(r))
        throw std::domain_error("radius must be finite and nonnegative");
    if (strict_upper && !(r < fx))
        throw std::domain_error("near-field bound requires r < F(x)");
}

} // namespace detail

/// Largest possible rho(x,y) over y with d(x,y) <= r, for 1-Lipschitz
/// weights. Requires r < F(x). The quotients are expanded algebraically so
/// each bound is a log1p of an exact ratio (no cancelling subtraction).
inline double bound_upper_near(const Family& f, double r, double fx) {
    detail::require_radius(r, fx, true);
    switch (f.kind) {
        case MetricKind::GO:
            return 0.5 * (std::log1p(r / fx) + std::log1p(r / (fx - r)));
        case MetricKind::DHV:
            return std::log1p(f.c * r / std::sqrt(fx * (fx - r)));
        case MetricKind::NA:
            return std::log1p(r * (3.0 * fx + r) / (fx * (fx - r)));
        default:
            return std::log1p(r * (5.0 * fx + 4.0 * r) / (fx * (fx - r)));
    }
}

/// Smallest possible rho(x,y) over y with d(x,y) >= r. Valid for every
/// r >= 0. The IBR Fine variant assumes 1-Lipschitz weights; Coarse holds
/// for arbitrary positive weights.
inline double bound_lower_global(const Family& f, double r, double fx,
                                 BoundKind kind = BoundKind::Fine) {
    detail::require_radius(r, fx, false);
    switch (f.kind) {
        case MetricKind::GO:
            return std::log1p(r / (fx + r));
        case MetricKind::DHV:
            return std::log1p(f.c * r / std::sqrt(fx * (fx + r)));
        case MetricKind::NA:
            return 2.0 * std::log1p(r / (2.0 * std::sqrt(fx * (fx + r))));
        default:
            return kind == BoundKind::Coarse
                       ? std::log1p(r / fx)
                       : 2.0 * std::log1p(r / std::sqrt(fx * (fx + r)));
    }
}

/// Upper bound on the base distance d(x,y) given the metric value and
/// F(x); the exact inverse of bound_lower_global, so it saturates when the
/// weight gap is extremal. GO requires rho_val < log 2 (beyond it the GO
/// value carries no distance information). Assumes 1-Lipschitz weights
/// except for the IBR Coarse variant.
inline double invert_distance_bound(const Family& f, double rho_val, double fx,
                                    BoundKind kind = BoundKind::Fine) {
    if (!(fx > 0.0) || !std::isfinite(fx))
        throw std::domain_error("weight must be finite and strictly positive");
    if (!(rho_val >= 0.0) || !std::isfinite(rho_val))
        throw std::domain_error("metric value must be finite and nonnegative");
    switch (f.kind) {
        case MetricKind::GO: {
            const double h = std::expm1(rho_val);
            if (!(h < 1.0))
                throw std::domain_error("GO inversion requires rho < log 2");
            return fx * h / (1.0 - h);
        }
        case MetricKind::DHV: {
            const double h = std::expm1(rho_val);
            return fx / (2.0 * f.c * f.c) * h *
                   (h + std::sqrt(h * h + 4.0 * f.c * f.c));
        }
        case MetricKind::NA: {
            const double e = std::expm1(0.5 * rho_val);
            return 2.0 * fx * e * (e + std::sqrt(e * e + 1.0));
        }
        default: {
            if (kind == BoundKind::Coarse) return fx * std::expm1(rho_val);
            const double e = std::expm1(0.5 * rho_val);
            return 0.5 * fx * e * (e + std::sqrt(e * e + 4.0));
        }
    }
}

/// Report of the GO additivity probe on a triple (x, z, y): the defect
/// j(x,z) + j(z,y) - j(x,y) and whether each of the three textbook equality
/// conditions holds at the given tolerance. The conditions imply defect 0;
/// the converse direction can fail, which is exactly what the probe makes
/// visible.
struct GoEqualityProbe {
    double additivity_defect = 0.0;
    std::array<bool, 3> conditions{false, false, false};

    bool all_conditions() const {
        return conditions[0] && conditions[1] && conditions[2];
    }
};

inline GoEqualityProbe go_equality_probe(double d_xy, double d_xz, double d_zy,
                                         double fx, double fy, double fz,
                                         double tol = tol_abs) {
    detail::require_pair_inputs(d_xy, fx, fy);
    detail::require_pair_inputs(d_xz, fx, fz);
    detail::require_pair_inputs(d_zy, fz, fy);
    GoEqualityProbe p;
    const Family go = Family::go();
    p.additivity_defect =
        rho(go, d_xz, fx, fz) + rho(go, d_zy, fz, fy) - rho(go, d_xy, fx, fy);
    p.conditions[0] = std::abs(d_xy - (d_xz + d_zy)) <= tol;
    p.conditions[1] = std::abs(fz - (fx + d_xz)) <= tol;
    p.conditions[2] = std::abs(fz - (fy + d_zy)) <= tol;
    return p;
}

} // namespace hypmet
