#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hypmet/errors.hpp"
#include "hypmet/geometry.hpp"

namespace hypmet {

/// Above this size the n x n distance matrix is not materialized and
/// distances are recomputed per query.
inline constexpr int materialize_cutoff = 4096;

enum class CachePolicy { Auto, Materialize, OnTheFly };

/// Finite sample of a metric space: points labeled 0..n-1 with a symmetric
/// base distance. Coordinates are optional (graph spaces have none).
class SampledSpace {
public:
    SampledSpace() = default;

    /// Euclidean sample; distances derived from the coordinates.
    static SampledSpace from_points(std::vector<Vec> pts,
                                    CachePolicy policy = CachePolicy::Auto) {
        SampledSpace s;
        s.n_ = static_cast<int>(pts.size());
        for (std::size_t i = 1; i < pts.size(); ++i)
            if (pts[i].size() != pts[0].size())
                throw BuildError("point " + std::to_string(i) + " has dimension " +
                                 std::to_string(pts[i].size()) + ", expected " +
                                 std::to_string(pts[0].size()));
        s.points_ = std::move(pts);
        if (decide(policy, s.n_)) s.fill_matrix([&s](int i, int j) {
            return euclid(s.points_[i], s.points_[j]);
        });
        return s;
    }

    /// Precomputed symmetric distance matrix (row-major n x n), e.g. graph
    /// shortest paths. Always materialized.
    static SampledSpace from_matrix(int n, std::vector<double> matrix) {
        if (n < 0 || matrix.size() != static_cast<std::size_t>(n) * n)
            throw BuildError("distance matrix size does not match point count");
        SampledSpace s;
        s.n_ = n;
        s.dmat_ = std::move(matrix);
        return s;
    }

    /// Arbitrary distance oracle; materialized when n is small enough.
    static SampledSpace from_oracle(int n, std::function<double(int, int)> fn,
                                    CachePolicy policy = CachePolicy::Auto) {
        SampledSpace s;
        s.n_ = n;
        if (decide(policy, n)) {
            s.fill_matrix(fn);
        } else {
            s.oracle_ = std::move(fn);
        }
        return s;
    }

    int size() const { return n_; }

    bool has_points() const { return !points_.empty(); }

    const std::vector<Vec>& points() const { return points_; }

    const Vec& point(int i) const { return points_.at(static_cast<std::size_t>(i)); }

    int dim() const { return points_.empty() ? 0 : static_cast<int>(points_[0].size()); }

    bool materialized() const { return !dmat_.empty(); }

    double dist(int i, int j) const {
        if (!dmat_.empty())
            return dmat_[static_cast<std::size_t>(i) * n_ + j];
        if (!points_.empty()) return euclid(points_[i], points_[j]);
        return oracle_(i, j);
    }

private:
    static bool decide(CachePolicy policy, int n) {
        switch (policy) {
            case CachePolicy::Materialize: return true;
            case CachePolicy::OnTheFly: return false;
            default: return n <= materialize_cutoff;
        }
    }

    // Fills the lower triangle by mirroring so the matrix is symmetric
    // bitwise and the diagonal is exactly zero.
    template <class F>
    void fill_matrix(F&& fn) {
        dmat_.assign(static_cast<std::size_t>(n_) * n_, 0.0);
        for (int i = 0; i < n_; ++i)
            for (int j = i + 1; j < n_; ++j) {
                const double d = fn(i, j);
                dmat_[static_cast<std::size_t>(i) * n_ + j] = d;
                dmat_[static_cast<std::size_t>(j) * n_ + i] = d;
            }
    }

    int n_ = 0;
    std::vector<Vec> points_;
    std::vector<double> dmat_;
    std::function<double(int, int)> oracle_;
};

enum class WeightSource { DistToObstacle, CustomTable };

/// Positive weight per sampled point. lipschitz_certified means |F(x)-F(y)|
/// <= d(x,y) is guaranteed: by construction for distance-to-obstacle
/// weights, or by a passing audit for custom tables.
struct WeightFunction {
    std::vector<double> values;
    WeightSource source = WeightSource::CustomTable;
    bool lipschitz_certified = false;

    double operator()(int i) const { return values[static_cast<std::size_t>(i)]; }
};

/// Validates positivity; a zero weight means the point lies on the excluded
/// set and the space should have rejected it at construction.
inline WeightFunction make_weights(std::vector<double> values, WeightSource source,
                                   bool lipschitz_certified = false) {
    for (std::size_t i = 0; i < values.size(); ++i)
        if (!(values[i] > 0.0) || !std::isfinite(values[i]))
            throw std::domain_error("weight " + std::to_string(i) +
                                    " is not strictly positive and finite");
    return WeightFunction{std::move(values), source, lipschitz_certified};
}

} // namespace hypmet
