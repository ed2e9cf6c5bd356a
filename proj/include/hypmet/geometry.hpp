#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace hypmet {

/// Point in R^n. Dimension is the vector length; all points of one space
/// must agree on it.
using Vec = std::vector<double>;

inline double dot(const Vec& a, const Vec& b) {
    if (a.size() != b.size())
        throw std::domain_error("dot: dimension mismatch");
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
    return s;
}

inline double norm(const Vec& a) {
    double s = 0.0;
    for (double v : a) s += v * v;
    return std::sqrt(s);
}

// Written so that euclid(a, b) == euclid(b, a) bitwise: squaring makes the
// sign of each coordinate difference irrelevant.
inline double euclid(const Vec& a, const Vec& b) {
    if (a.size() != b.size())
        throw std::domain_error("euclid: dimension mismatch");
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double t = a[k] - b[k];
        s += t * t;
    }
    return std::sqrt(s);
}

} // namespace hypmet
