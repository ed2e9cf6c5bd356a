#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "hypmet/audit.hpp"
#include "hypmet/metrics.hpp"
#include "hypmet/parallel.hpp"
#include "hypmet/rng.hpp"
#include "hypmet/space.hpp"

namespace hypmet {

/// Dense symmetric table of a pair function over sample indices; the scans
/// below want O(1) lookups, not repeated oracle calls. Diagonal entries are
/// zero and are never read by the quadruple scans.
class PairTable {
public:
    template <class F>
    static PairTable build(int n, F&& f) {
        PairTable t;
        t.n_ = n;
        t.v_.assign(static_cast<std::size_t>(n) * n, 0.0);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                const double v = f(i, j);
                if (std::isnan(v))
                    throw EvaluationError("pair function returned NaN", i, j);
                t.v_[static_cast<std::size_t>(i) * n + j] = v;
                t.v_[static_cast<std::size_t>(j) * n + i] = v;
            }
        return t;
    }

    double operator()(int i, int j) const {
        return v_[static_cast<std::size_t>(i) * n_ + j];
    }

    int size() const { return n_; }

private:
    int n_ = 0;
    std::vector<double> v_;
};

/// Gromov product (x|y)_w from the three pair distances.
inline double gromov_product(double d_xw, double d_yw, double d_xy) {
    if (!(d_xw >= 0.0) || !(d_yw >= 0.0) || !(d_xy >= 0.0))
        throw std::domain_error("gromov_product: distances must be nonnegative");
    return 0.5 * (d_xw + d_yw - d_xy);
}

/// The six pair values of a symmetric function on labels {x, y, z, w}.
struct QuadValues {
    double xy, xz, xw, yz, yw, zw;
};

namespace detail {

// Exact median via comparisons only; no rounding enters the defect beyond
// what the two sums already carry.
inline double median3(double a, double b, double c) {
    return std::max(std::min(a, b), std::min(std::max(a, b), c));
}

} // namespace detail

/// Four-point defect: half the gap between the largest and the middle of
/// the three opposite-pair sums. Zero when the two largest sums tie, and
/// invariant under relabeling the four points.
inline double four_point_defect(const QuadValues& q) {
    const double s1 = q.xz + q.yw;
    const double s2 = q.xw + q.yz;
    const double s3 = q.xy + q.zw;
    const double hi = std::max(s1, std::max(s2, s3));
    return 0.5 * (hi - detail::median3(s1, s2, s3));
}

/// Empirical hyperbolicity estimate: the largest four-point defect seen.
/// It lower-bounds the true delta of the sample; certified_bound is the
/// family's a-priori constant, which caps delta_hat whenever
/// bound_certified holds (1-Lipschitz weights, or the IBR family where no
/// hypothesis on F is needed).
struct DeltaEstimate {
    double delta_hat = 0.0;
    std::array<int, 4> witness{-1, -1, -1, -1};
    Mode mode;
    Family family;
    double certified_bound = 0.0;
    bool bound_certified = false;
};

namespace detail {

// Maximum defect under a total order (defect desc, witness lex asc);
// partition-independent for the same reason as WorstSlack.
struct BestDefect {
    double defect = -std::numeric_limits<double>::infinity();
    std::array<int, 4> wit{-1, -1, -1, -1};

    void offer(double d, const std::array<int, 4>& w) {
        if (d > defect || (d == defect && w < wit)) {
            defect = d;
            wit = w;
        }
    }

    void merge(const BestDefect& o) {
        if (o.wit[0] >= 0) offer(o.defect, o.wit);
    }
};

struct QuadScanState {
    std::uint64_t checked = 0;
    std::uint64_t violations = 0;
    BestDefect best;
};

// Runs fn(x,y,z,w,state) over quadruples per mode: all x<y<z<w, or seeded
// draws for sample indices kb..ke (a pure function of seed and k).
template <class Fn>
std::vector<QuadScanState> scan_quadruples(int n, const Mode& mode, int threads,
                                           Fn&& fn) {
    if (mode.exhaustive) {
        return run_partitioned<QuadScanState>(
            static_cast<std::uint64_t>(n), threads,
            [&](std::uint64_t ib, std::uint64_t ie, QuadScanState& st) {
                for (int x = static_cast<int>(ib); x < static_cast<int>(ie); ++x)
                    for (int y = x + 1; y < n; ++y)
                        for (int z = y + 1; z < n; ++z)
                            for (int w = z + 1; w < n; ++w) fn(x, y, z, w, st);
            });
    }
    return run_partitioned<QuadScanState>(
        mode.samples, threads,
        [&](std::uint64_t kb, std::uint64_t ke, QuadScanState& st) {
            for (std::uint64_t k = kb; k < ke; ++k) {
                int idx[4];
                sample_distinct<4>(mode.seed, k, n, idx);
                std::sort(idx, idx + 4);
                fn(idx[0], idx[1], idx[2], idx[3], st);
            }
        });
}

} // namespace detail

/// Builds the pair table of the family metric over the sample.
inline PairTable family_pair_table(const Family& f, const SampledSpace& space,
                                   const WeightFunction& weights) {
    return PairTable::build(space.size(), [&](int i, int j) {
        return rho(f, space.dist(i, j), weights(i), weights(j));
    });
}

/// Re-evaluates the four-point defect of a witness quadruple from scratch;
/// reproduces delta_hat bitwise because the scan stores exactly these
/// evaluations.
inline double quad_defect(const Family& f, const SampledSpace& space,
                          const WeightFunction& weights,
                          const std::array<int, 4>& q) {
    auto v = [&](int i, int j) {
        return rho(f, space.dist(i, j), weights(i), weights(j));
    };
    return four_point_defect(QuadValues{v(q[0], q[1]), v(q[0], q[2]), v(q[0], q[3]),
                                        v(q[1], q[2]), v(q[1], q[3]), v(q[2], q[3])});
}

/// Maximizes the four-point defect of the family metric over quadruples of
/// the sample (all of them, or seeded draws). Bit-deterministic for a fixed
/// seed regardless of thread count.
inline DeltaEstimate delta_estimate(const Family& f, const SampledSpace& space,
                                    const WeightFunction& weights,
                                    Mode mode = Mode::Exhaustive(), int threads = 1) {
    DeltaEstimate est;
    est.mode = mode;
    est.family = f;
    est.certified_bound = certified_delta_bound(f);
    est.bound_certified = f.kind == MetricKind::IBR || weights.lipschitz_certified;
    const int n = space.size();
    if (n < 4) return est;

    const PairTable t = family_pair_table(f, space, weights);
    auto states = detail::scan_quadruples(
        n, mode, threads, [&](int x, int y, int z, int w, detail::QuadScanState& st) {
            st.best.offer(four_point_defect(QuadValues{t(x, y), t(x, z), t(x, w),
                                                       t(y, z), t(y, w), t(z, w)}),
                          {x, y, z, w});
        });
    detail::BestDefect best;
    for (const auto& s : states) best.merge(s.best);
    if (best.wit[0] >= 0) {
        est.delta_hat = std::max(0.0, best.defect);
        est.witness = best.wit;
    }
    return est;
}

/// Checks the multiplicative four-point condition of the comparison
/// functional: over every scanned quadruple, the largest of the three
/// opposite-pair products is at most factor * (median product). The report
/// carries the worst ratio; worst_defect keeps slack semantics
/// (factor - worst_ratio). GO is rejected (no functional).
inline AuditReport multiplicative_four_point_check(const Family& f,
                                                   const SampledSpace& space,
                                                   const WeightFunction& weights,
                                                   Mode mode = Mode::Exhaustive(),
                                                   int threads = 1) {
    const double factor = multiplicative_factor(f);
    AuditReport rep;
    rep.mode = mode;
    rep.tolerance = tol_abs;
    const int n = space.size();
    if (n < 4) {
        rep.worst_ratio = 1.0;
        rep.worst_defect = factor - 1.0;
        return rep;
    }

    const PairTable t = PairTable::build(n, [&](int i, int j) {
        return comparison_functional(f, space.dist(i, j), weights(i), weights(j));
    });

    auto states = detail::scan_quadruples(
        n, mode, threads, [&](int x, int y, int z, int w, detail::QuadScanState& st) {
            const double p1 = t(x, z) * t(y, w);
            const double p2 = t(x, w) * t(y, z);
            const double p3 = t(x, y) * t(z, w);
            const double hi = std::max(p1, std::max(p2, p3));
            const double ratio = hi / detail::median3(p1, p2, p3);
            ++st.checked;
            if (ratio > factor + tol_abs) ++st.violations;
            st.best.offer(ratio, {x, y, z, w});
        });
    detail::BestDefect best;
    for (const auto& s : states) {
        rep.checked += s.checked;
        rep.violations += s.violations;
        best.merge(s.best);
    }
    if (best.wit[0] >= 0) {
        rep.worst_ratio = best.defect;
        rep.worst_defect = factor - best.defect;
        rep.witness.assign(best.wit.begin(), best.wit.end());
    }
    return rep;
}

/// Basepoint hyperbolicity defect at w: the largest failure of
/// (x|z)_w >= min{(x|y)_w, (y|z)_w} - delta over scanned triples, clamped
/// at zero. The witness is the maximizing (endpoint, middle, endpoint)
/// triple before clamping.
struct BasepointDefect {
    double delta_hat = 0.0;
    std::array<int, 3> witness{-1, -1, -1};
};

namespace detail {

template <class Rho>
PairTable validated_pair_table(Rho&& rho_fn, int n) {
    return PairTable::build(n, [&](int i, int j) {
        const double v = rho_fn(i, j);
        if (std::isnan(v)) throw EvaluationError("oracle returned NaN", i, j);
        if (v < 0.0) throw EvaluationError("oracle returned a negative value", i, j);
        return v;
    });
}

} // namespace detail

/// Basepoint defect scan over a prebuilt pair table.
inline BasepointDefect basepoint_defect_from_table(const PairTable& t, int w,
                                                   Mode mode = Mode::Exhaustive(),
                                                   int threads = 1) {
    const int n = t.size();
    if (w < 0 || w >= n) throw std::out_of_range("basepoint index out of range");
    BasepointDefect out;
    if (n < 3) return out;

    auto prod = [&](int i, int j) {
        return gromov_product(t(i, w), t(j, w), t(i, j));
    };

    // For the unordered triple {a,b,c} each element takes the middle slot.
    auto offer_triple = [&](int a, int b, int c, detail::BestDefect& best) {
        const double pab = prod(a, b);
        const double pbc = prod(b, c);
        const double pac = prod(a, c);
        best.offer(std::min(pab, pbc) - pac, {a, b, c, -1});
        best.offer(std::min(pab, pac) - pbc, {b, a, c, -1});
        best.offer(std::min(pac, pbc) - pab, {a, c, b, -1});
    };

    std::vector<detail::BestDefect> states;
    if (mode.exhaustive) {
        auto st = run_partitioned<detail::BestDefect>(
            static_cast<std::uint64_t>(n), threads,
            [&](std::uint64_t ib, std::uint64_t ie, detail::BestDefect& best) {
                for (int a = static_cast<int>(ib); a < static_cast<int>(ie); ++a)
                    for (int b = a + 1; b < n; ++b)
                        for (int c = b + 1; c < n; ++c) offer_triple(a, b, c, best);
            });
        states = std::move(st);
    } else {
        auto st = run_partitioned<detail::BestDefect>(
            mode.samples, threads,
            [&](std::uint64_t kb, std::uint64_t ke, detail::BestDefect& best) {
                for (std::uint64_t k = kb; k < ke; ++k) {
                    int idx[3];
                    sample_distinct<3>(mode.seed, k, n, idx);
                    std::sort(idx, idx + 3);
                    offer_triple(idx[0], idx[1], idx[2], best);
                }
            });
        states = std::move(st);
    }
    detail::BestDefect best;
    for (const auto& s : states) best.merge(s);
    if (best.wit[0] >= 0) {
        out.delta_hat = std::max(0.0, best.defect);
        out.witness = {best.wit[0], best.wit[1], best.wit[2]};
    }
    return out;
}

template <class Rho>
BasepointDefect basepoint_defect(Rho&& rho_fn, const SampledSpace& space, int w,
                                 Mode mode = Mode::Exhaustive(), int threads = 1) {
    const PairTable t = detail::validated_pair_table(rho_fn, space.size());
    return basepoint_defect_from_table(t, w, mode, threads);
}

/// Checks that the basepoint defect depends on the base only up to the
/// standard factor: max_w delta_w <= 2 min_w delta_w + tol. The witness is
/// (argmax w, argmin w) and worst_defect the slack 2 min - max.
template <class Rho>
AuditReport basepoint_transfer_check(Rho&& rho_fn, const SampledSpace& space,
                                     Mode mode = Mode::Exhaustive(), int threads = 1) {
    const int n = space.size();
    AuditReport rep;
    rep.mode = mode;
    rep.tolerance = tol_abs;
    if (n == 0) return rep;

    const PairTable t = detail::validated_pair_table(rho_fn, n);
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    int arg_lo = -1, arg_hi = -1;
    for (int w = 0; w < n; ++w) {
        const double dw = basepoint_defect_from_table(t, w, mode, threads).delta_hat;
        if (dw < lo) { lo = dw; arg_lo = w; }
        if (dw > hi) { hi = dw; arg_hi = w; }
    }
    rep.checked = static_cast<std::uint64_t>(n);
    rep.worst_defect = 2.0 * lo - hi;
    rep.witness = {arg_hi, arg_lo};
    if (rep.worst_defect < -tol_abs) rep.violations = 1;
    return rep;
}

} // namespace hypmet
