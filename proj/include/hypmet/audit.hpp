#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "hypmet/errors.hpp"
#include "hypmet/parallel.hpp"
#include "hypmet/rng.hpp"
#include "hypmet/space.hpp"

namespace hypmet {

/// Absolute slack tolerance for pairwise checks (Lipschitz, symmetry,
/// identity) and for raw triangle defects reported by searches.
inline constexpr double tol_abs = 1e-9;

/// Relative tolerance for triangle audits; the slack is scaled by
/// max(1, rho(x,y)) so tiny and huge metric values are judged alike.
inline constexpr double tol_rel = 1e-12;

/// Scan mode: every tuple, or `samples` seeded draws. The tuple for draw k
/// depends only on (seed, k), so worker count never changes what is seen.
struct Mode {
    bool exhaustive = true;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;

    static Mode Exhaustive() { return Mode{true, 0, 0}; }
    static Mode Sampled(std::uint64_t samples, std::uint64_t seed) {
        return Mode{false, samples, seed};
    }
};

/// Outcome of a scan. worst_defect is the most negative slack seen
/// (+infinity when nothing was checked); the witness indices reproduce it
/// on re-evaluation. worst_ratio is set only by the multiplicative
/// four-point check.
struct AuditReport {
    std::uint64_t checked = 0;
    std::uint64_t violations = 0;
    double worst_defect = std::numeric_limits<double>::infinity();
    std::vector<int> witness;
    Mode mode;
    double tolerance = tol_abs;
    double worst_ratio = std::numeric_limits<double>::quiet_NaN();
};

namespace detail {

// Minimum slack under a total order (slack, then witness lexicographic),
// so merging partial scans is independent of how work was partitioned.
struct WorstSlack {
    double slack = std::numeric_limits<double>::infinity();
    std::array<int, 4> wit{-1, -1, -1, -1};

    void offer(double s, std::array<int, 4> w) {
        if (s < slack || (s == slack && w < wit)) {
            slack = s;
            wit = w;
        }
    }

    void merge(const WorstSlack& o) { offer(o.slack, o.wit); }
};

struct ScanState {
    std::uint64_t checked = 0;
    std::uint64_t violations = 0;
    WorstSlack worst;
};

inline void finish_report(AuditReport& rep, const std::vector<ScanState>& states,
                          int witness_len) {
    ScanState total;
    for (const ScanState& s : states) {
        total.checked += s.checked;
        total.violations += s.violations;
        total.worst.merge(s.worst);
    }
    rep.checked += total.checked;
    rep.violations += total.violations;
    if (total.worst.slack < rep.worst_defect) {
        rep.worst_defect = total.worst.slack;
        rep.witness.assign(total.worst.wit.begin(),
                           total.worst.wit.begin() + witness_len);
    }
}

} // namespace detail

/// Slack of the 1-Lipschitz condition at a pair: d(i,j) - |F(i) - F(j)|.
inline double lipschitz_slack(const SampledSpace& space, const WeightFunction& f,
                              int i, int j) {
    return space.dist(i, j) - std::abs(f(i) - f(j));
}

/// Checks |F(x) - F(y)| <= d(x,y) over pairs. A passing audit certifies the
/// weights (sets lipschitz_certified).
inline AuditReport lipschitz_audit(const SampledSpace& space, WeightFunction& f,
                                   Mode mode = Mode::Exhaustive(), int threads = 1) {
    const int n = space.size();
    AuditReport rep;
    rep.mode = mode;
    rep.tolerance = tol_abs;
    if (n < 2) {
        rep.worst_defect = std::numeric_limits<double>::infinity();
        f.lipschitz_certified = true;
        return rep;
    }

    auto offer_pair = [&](int i, int j, detail::ScanState& st) {
        const double s = lipschitz_slack(space, f, i, j);
        ++st.checked;
        if (s < -tol_abs) ++st.violations;
        st.worst.offer(s, {i, j, -1, -1});
    };

    std::vector<detail::ScanState> states;
    if (mode.exhaustive) {
        states = run_partitioned<detail::ScanState>(
            static_cast<std::uint64_t>(n), threads,
            [&](std::uint64_t ib, std::uint64_t ie, detail::ScanState& st) {
                for (int i = static_cast<int>(ib); i < static_cast<int>(ie); ++i)
                    for (int j = i + 1; j < n; ++j) offer_pair(i, j, st);
            });
    } else {
        states = run_partitioned<detail::ScanState>(
            mode.samples, threads,
            [&](std::uint64_t kb, std::uint64_t ke, detail::ScanState& st) {
                for (std::uint64_t k = kb; k < ke; ++k) {
                    int idx[2];
                    sample_distinct<2>(mode.seed, k, n, idx);
                    offer_pair(std::min(idx[0], idx[1]), std::max(idx[0], idx[1]), st);
                }
            });
    }
    detail::finish_report(rep, states, 2);
    if (rep.violations == 0) f.lipschitz_certified = true;
    return rep;
}

enum class AxiomSet {
    All,          // identity, symmetry, positivity, triangle
    TriangleOnly  // for comparison functionals that are nonzero on the diagonal
};

/// Normalized triangle slack of the directed inequality
/// rho(p,q) <= rho(p,m) + rho(m,q).
template <class Rho>
double triangle_slack(Rho&& rho, int p, int m, int q) {
    const double pq = rho(p, q);
    return (rho(p, m) + rho(m, q) - pq) / std::max(1.0, pq);
}

/// Audits metric axioms of an arbitrary pair oracle over the sample.
/// Identity/symmetry/positivity run over all pairs; the triangle scan is
/// exhaustive or sampled per `mode`. Pair values are cached in a dense
/// table when the space is small enough. NaN or negative oracle values
/// abort with EvaluationError naming the pair.
template <class Rho>
AuditReport metric_axiom_audit(Rho&& rho, const SampledSpace& space,
                               Mode mode = Mode::Exhaustive(),
                               AxiomSet axioms = AxiomSet::All, int threads = 1) {
    const int n = space.size();
    AuditReport rep;
    rep.mode = mode;
    rep.tolerance = tol_rel;
    if (n == 0) return rep;

    auto checked_value = [&](int i, int j) {
        const double v = rho(i, j);
        if (std::isnan(v)) throw EvaluationError("oracle returned NaN", i, j);
        if (v < 0.0) throw EvaluationError("oracle returned a negative value", i, j);
        return v;
    };

    // Dense symmetric cache of the i<j values; diagonal handled separately.
    const bool tabulate = n <= materialize_cutoff;
    std::vector<double> table;
    if (tabulate) {
        table.assign(static_cast<std::size_t>(n) * n, 0.0);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                const double v = checked_value(i, j);
                table[static_cast<std::size_t>(i) * n + j] = v;
                table[static_cast<std::size_t>(j) * n + i] = v;
            }
    }
    auto val = [&](int i, int j) {
        return tabulate ? table[static_cast<std::size_t>(i) * n + j]
                        : checked_value(i, j);
    };

    if (axioms == AxiomSet::All) {
        // Identity: rho(i,i) = 0.
        for (int i = 0; i < n; ++i) {
            const double v = checked_value(i, i);
            ++rep.checked;
            if (std::abs(v) > tol_abs) {
                ++rep.violations;
                if (-std::abs(v) < rep.worst_defect) {
                    rep.worst_defect = -std::abs(v);
                    rep.witness = {i};
                }
            }
        }
        // Symmetry and positivity over all pairs.
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                const double a = val(i, j);
                const double b = checked_value(j, i);
                ++rep.checked;
                if (std::abs(a - b) > tol_abs) {
                    ++rep.violations;
                    if (-std::abs(a - b) < rep.worst_defect) {
                        rep.worst_defect = -std::abs(a - b);
                        rep.witness = {i, j};
                    }
                }
                if (!(a > 0.0)) {
                    ++rep.violations;
                    if (a < rep.worst_defect) {
                        rep.worst_defect = a;
                        rep.witness = {i, j};
                    }
                }
            }
    }

    if (n < 3) return rep;

    // Triangle inequality, three directed variants per unordered triple.
    auto offer_triple = [&](int i, int j, int k, detail::ScanState& st) {
        ++st.checked;
        bool bad = false;
        const std::array<std::array<int, 3>, 3> variants{{{i, j, k}, {j, i, k}, {i, k, j}}};
        for (const auto& v : variants) {
            const double s = triangle_slack(val, v[0], v[1], v[2]);
            if (s < -tol_rel) bad = true;
            st.worst.offer(s, {v[0], v[1], v[2], -1});
        }
        if (bad) ++st.violations;
    };

    std::vector<detail::ScanState> states;
    if (mode.exhaustive) {
        states = run_partitioned<detail::ScanState>(
            static_cast<std::uint64_t>(n), threads,
            [&](std::uint64_t ib, std::uint64_t ie, detail::ScanState& st) {
                for (int i = static_cast<int>(ib); i < static_cast<int>(ie); ++i)
                    for (int j = i + 1; j < n; ++j)
                        for (int k = j + 1; k < n; ++k) offer_triple(i, j, k, st);
            });
    } else {
        states = run_partitioned<detail::ScanState>(
            mode.samples, threads,
            [&](std::uint64_t kb, std::uint64_t ke, detail::ScanState& st) {
                for (std::uint64_t k = kb; k < ke; ++k) {
                    int idx[3];
                    sample_distinct<3>(mode.seed, k, n, idx);
                    std::sort(idx, idx + 3);
                    offer_triple(idx[0], idx[1], idx[2], st);
                }
            });
    }
    detail::finish_report(rep, states, 3);
    return rep;
}

} // namespace hypmet
