// Acceptance checks for the distance-ratio metric toolkit. Each check
// prints one line; the process exits nonzero if any fail. The thresholds
// are the certified constants with a 1e-9 numerical allowance.

#include <array>
#include <cmath>
#include <exception>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "hypmet/hypmet.hpp"
#include "support/test_spaces.hpp"

using namespace hypmet;

namespace {

constexpr double kTol = 1e-9;
constexpr int kThreads = 2;

struct Failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void expect(bool cond, const std::string& msg) {
    if (!cond) throw Failure(msg);
}

std::string fmt(double v, int digits = 6) {
    std::ostringstream os;
    os.precision(digits);
    os << v;
    return os.str();
}

double slack(double v) { return kTol * std::max(1.0, std::abs(v)); }

// 1. GO four-point defects on Lipschitz-weighted samples.
std::string check_go_delta(const std::vector<testsup::NamedSpace>& spaces) {
    double worst = -1.0;
    std::string where;
    const Family go = Family::go();
    for (const auto& sp : spaces) {
        const DeltaEstimate est = delta_estimate(go, sp.built.space, sp.built.weights,
                                                 Mode::Exhaustive(), kThreads);
        expect(est.bound_certified, sp.name + ": bound not certified");
        expect(est.delta_hat <= est.certified_bound + kTol,
               sp.name + ": delta " + fmt(est.delta_hat) + " exceeds " +
                   fmt(est.certified_bound));
        if (est.delta_hat > worst) {
            worst = est.delta_hat;
            where = sp.name;
        }
    }
    return "worst delta " + fmt(worst) + " on " + where + ", bound " +
           fmt(certified_delta_bound(go));
}

// 2. DHV four-point defects across the parameter sweep.
std::string check_dhv_delta(const std::vector<testsup::NamedSpace>& spaces) {
    double min_margin = 1e300;
    std::string where;
    for (double c : {0.5, 1.0, 2.0, 5.0}) {
        const Family f = Family::dhv(c);
        for (const auto& sp : spaces) {
            const DeltaEstimate est = delta_estimate(f, sp.built.space, sp.built.weights,
                                                     Mode::Exhaustive(), kThreads);
            expect(est.delta_hat <= est.certified_bound + kTol,
                   sp.name + " at c=" + fmt(c) + ": delta " + fmt(est.delta_hat) +
                       " exceeds " + fmt(est.certified_bound));
            const double margin = est.certified_bound - est.delta_hat;
            if (margin < min_margin) {
                min_margin = margin;
                where = sp.name + " at c=" + fmt(c);
            }
        }
    }
    return "smallest margin " + fmt(min_margin) + " on " + where;
}

// 3. NA deltas and opposite-pair products.
std::string check_na(const std::vector<testsup::NamedSpace>& spaces) {
    const Family na = Family::na();
    double worst_delta = -1.0, worst_ratio = -1.0;
    for (const auto& sp : spaces) {
        const DeltaEstimate est = delta_estimate(na, sp.built.space, sp.built.weights,
                                                 Mode::Exhaustive(), kThreads);
        expect(est.delta_hat <= est.certified_bound + kTol,
               sp.name + ": delta " + fmt(est.delta_hat) + " exceeds " +
                   fmt(est.certified_bound));
        const AuditReport rep = multiplicative_four_point_check(
            na, sp.built.space, sp.built.weights, Mode::Exhaustive(), kThreads);
        expect(rep.violations == 0,
               sp.name + ": " + std::to_string(rep.violations) + " product violations");
        expect(rep.worst_ratio <= multiplicative_factor(na) + kTol,
               sp.name + ": product ratio " + fmt(rep.worst_ratio) + " exceeds 9");
        worst_delta = std::max(worst_delta, est.delta_hat);
        worst_ratio = std::max(worst_ratio, rep.worst_ratio);
    }
    return "worst delta " + fmt(worst_delta) + " (bound " + fmt(std::log(9.0)) +
           "), worst product ratio " + fmt(worst_ratio) + " (factor 9)";
}

// 4. IBR deltas and products under arbitrary positive weights.
std::string check_ibr_random_weights(const std::vector<testsup::NamedSpace>& spaces) {
    const Family ibr = Family::ibr();
    double worst_delta = -1.0, worst_ratio = -1.0;
    int assignments = 0;
    for (const auto& sp : spaces) {
        for (std::uint64_t seed = 1; seed <= 20; ++seed) {
            const WeightFunction w =
                testsup::random_positive_weights(sp.built.space.size(), seed);
            const DeltaEstimate est =
                delta_estimate(ibr, sp.built.space, w, Mode::Exhaustive(), kThreads);
            expect(est.bound_certified, sp.name + ": IBR bound needs no weight hypothesis");
            expect(est.delta_hat <= est.certified_bound + kTol,
                   sp.name + " seed " + std::to_string(seed) + ": delta " +
                       fmt(est.delta_hat) + " exceeds " + fmt(est.certified_bound));
            const AuditReport rep = multiplicative_four_point_check(
                ibr, sp.built.space, w, Mode::Exhaustive(), kThreads);
            expect(rep.violations == 0 &&
                       rep.worst_ratio <= multiplicative_factor(ibr) + kTol,
                   sp.name + " seed " + std::to_string(seed) + ": product ratio " +
                       fmt(rep.worst_ratio) + " exceeds 4");
            worst_delta = std::max(worst_delta, est.delta_hat);
            worst_ratio = std::max(worst_ratio, rep.worst_ratio);
            ++assignments;
        }
    }
    return std::to_string(assignments) + " weight assignments, worst delta " +
           fmt(worst_delta) + " (bound " + fmt(std::log(4.0)) +
           "), worst product ratio " + fmt(worst_ratio) + " (factor 4)";
}

// 5. Exhaustive metric-axiom audits on the larger samples.
std::string check_axiom_audits(const std::vector<testsup::NamedSpace>& spaces) {
    std::uint64_t checked = 0;
    int audits = 0;
    std::uint64_t space_idx = 0;
    for (const auto& sp : spaces) {
        ++space_idx;
        const auto audit_family = [&](const Family& f, const WeightFunction& w) {
            auto rho_fn = [&](int i, int j) {
                return rho(f, sp.built.space.dist(i, j), w(i), w(j));
            };
            const AuditReport rep = metric_axiom_audit(
                rho_fn, sp.built.space, Mode::Exhaustive(), AxiomSet::All, kThreads);
            expect(rep.violations == 0,
                   sp.name + "/" + family_code(f.kind) + ": " +
                       std::to_string(rep.violations) + " axiom violations");
            checked += rep.checked;
            ++audits;
        };
        audit_family(Family::go(), sp.built.weights);
        audit_family(Family::dhv(2.0), sp.built.weights);
        audit_family(Family::na(), sp.built.weights);

        const WeightFunction wr =
            testsup::random_positive_weights(sp.built.space.size(), 99 + space_idx);
        audit_family(Family::ibr(), wr);

        // The comparison functional is nonzero on the diagonal, so only its
        // triangle inequality is audited; it must hold for these weights too.
        const Family ibr = Family::ibr();
        auto mu_fn = [&](int i, int j) {
            return comparison_functional(ibr, sp.built.space.dist(i, j), wr(i), wr(j));
        };
        const AuditReport mu_rep =
            metric_axiom_audit(mu_fn, sp.built.space, Mode::Exhaustive(),
                               AxiomSet::TriangleOnly, kThreads);
        expect(mu_rep.violations == 0,
               sp.name + "/mu: " + std::to_string(mu_rep.violations) +
                   " triangle violations");
        checked += mu_rep.checked;
        ++audits;
    }
    return std::to_string(audits) + " audits, " + std::to_string(checked) +
           " checks, zero violations";
}

// 6. The unit-disk triangle search straddles the metricity threshold.
std::string check_counterexample_search() {
    const CounterexampleReport hit = find_triangle_violation(Family::dhv(1.0), 100, 0);
    expect(hit.found, "no violation found at c=1");
    expect(hit.evaluated == 1, "violation not found on the first configuration");
    expect(hit.defect <= -0.5,
           "c=1 defect " + fmt(hit.defect) + " is weaker than -0.5");

    const std::uint64_t budget = 10000000;
    const CounterexampleReport clean = find_triangle_violation(Family::dhv(2.0), budget, 0);
    expect(!clean.found, "unexpected violation at c=2 with defect " + fmt(clean.defect));
    expect(clean.evaluated == budget, "search stopped early");
    expect(clean.defect >= -kTol,
           "c=2 worst slack " + fmt(clean.defect) + " dips below tolerance");
    return "c=1 violated immediately (defect " + fmt(hit.defect) + "); c=2 clean over " +
           std::to_string(budget) + " triples";
}

// 7. Envelope ratio limits and sphere-probe agreement on the punctured plane.
std::string check_dilatation_limits() {
    struct Case {
        Family f;
        BoundKind kind;
        double limit;
    };
    const std::vector<Case> cases = {
        {Family::go(), BoundKind::Fine, 1.0},
        {Family::dhv(0.5), BoundKind::Fine, 1.0},
        {Family::dhv(2.0), BoundKind::Fine, 1.0},
        {Family::na(), BoundKind::Fine, 3.0},
        {Family::ibr(), BoundKind::Fine, 2.5},
        {Family::ibr(), BoundKind::Coarse, 5.0},
    };
    const double fx = 2.0;
    double worst_env_err = 0.0;
    for (const auto& cs : cases) {
        std::vector<double> vals;
        double t = 0.1;
        for (int k = 0; k < 6; ++k, t *= 0.1)
            vals.push_back(envelope_ratio(cs.f, t * fx, fx, cs.kind));
        const ExtrapolationResult ex = extrapolate_limit(vals, 0.1);
        expect(ex.converged, std::string(family_code(cs.f.kind)) +
                                 ": envelope series did not converge");
        const double err = std::abs(ex.value - cs.limit);
        expect(err <= 1e-3, std::string(family_code(cs.f.kind)) + ": envelope limit " +
                                fmt(ex.value) + " misses " + fmt(cs.limit));
        worst_env_err = std::max(worst_env_err, err);
    }

    const AmbientWeight w = AmbientWeight::obstacle(ObstacleSet{{SinglePoint{{0.0, 0.0}}}});
    const Vec center{2.0, 0.0};
    const double u = 2.0, r = 2e-3;
    double worst_probe_err = 0.0;
    for (const Family& f : {Family::go(), Family::dhv(0.5), Family::dhv(2.0),
                            Family::na(), Family::ibr()}) {
        const double hat = dilatation_empirical(f, w, center, r, 4096, 11);
        const double closed = testsup::punctured_dilatation_closed_form(f, u, r);
        const double rel = std::abs(hat / closed - 1.0);
        expect(rel <= 0.01, std::string(family_code(f.kind)) + ": probe estimate " +
                                fmt(hat) + " vs closed form " + fmt(closed));
        expect(hat <= envelope_ratio(f, r, u, BoundKind::Fine) + kTol,
               std::string(family_code(f.kind)) + ": probe estimate exceeds envelope");
        worst_probe_err = std::max(worst_probe_err, rel);
    }
    return "six limits within " + fmt(worst_env_err, 3) +
           ", probe estimates within " + fmt(worst_probe_err, 3) + " relative";
}

// 8. Pointwise envelopes and the inverted distance bound on every pair.
std::string check_envelope_sandwich(const std::vector<testsup::NamedSpace>& small,
                                    const std::vector<testsup::NamedSpace>& large) {
    struct Combo {
        Family f;
        BoundKind kind;
    };
    const std::vector<Combo> combos = {
        {Family::go(), BoundKind::Fine},    {Family::dhv(0.5), BoundKind::Fine},
        {Family::dhv(2.0), BoundKind::Fine}, {Family::na(), BoundKind::Fine},
        {Family::ibr(), BoundKind::Fine},   {Family::ibr(), BoundKind::Coarse},
    };
    const double go_gate = std::log(2.0) - 1e-6;
    std::uint64_t pairs = 0;

    const auto sweep = [&](const testsup::NamedSpace& sp, const WeightFunction& w,
                           bool coarse_only) {
        const int n = sp.built.space.size();
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                const double d = sp.built.space.dist(i, j);
                for (const auto& cb : combos) {
                    if (coarse_only &&
                        !(cb.f.kind == MetricKind::IBR && cb.kind == BoundKind::Coarse))
                        continue;
                    const double v = rho(cb.f, d, w(i), w(j));
                    for (double fe : {w(i), w(j)}) {
                        const double lo = bound_lower_global(cb.f, d, fe, cb.kind);
                        expect(v >= lo - slack(v),
                               sp.name + "/" + family_code(cb.f.kind) +
                                   ": value below the lower envelope");
                        if (!coarse_only && d < fe) {
                            const double up = bound_upper_near(cb.f, d, fe);
                            expect(v <= up + slack(v),
                                   sp.name + "/" + family_code(cb.f.kind) +
                                       ": value above the upper envelope");
                        }
                        if (cb.f.kind == MetricKind::GO && v >= go_gate) continue;
                        const double dmax = invert_distance_bound(cb.f, v, fe, cb.kind);
                        expect(d <= dmax + slack(d),
                               sp.name + "/" + family_code(cb.f.kind) +
                                   ": distance " + fmt(d) + " exceeds inverted bound " +
                                   fmt(dmax));
                    }
                }
                ++pairs;
            }
    };

    for (const auto& sp : small) sweep(sp, sp.built.weights, false);
    for (const auto& sp : large) sweep(sp, sp.built.weights, false);
    // The coarse IBR bounds carry no weight hypothesis at all.
    const WeightFunction wr =
        testsup::random_positive_weights(small.front().built.space.size(), 5);
    sweep(small.front(), wr, true);
    return std::to_string(pairs) + " pairs checked against six bound variants";
}

// 9. The GO additivity probe and its equality conditions.
std::string check_additivity_probe() {
    const GoEqualityProbe p = go_equality_probe(3.0, 2.0, 1.0, 4.0, 1.0, 2.0);
    expect(std::abs(p.additivity_defect - 0.12565721414045317) <= kTol,
           "defect " + fmt(p.additivity_defect, 17) + " is off");
    expect(p.conditions[0] && !p.conditions[1] && p.conditions[2],
           "equality conditions misreported");
    expect(!p.all_conditions(), "conditions cannot all hold here");

    const GoEqualityProbe z = go_equality_probe(2.0, 1.0, 1.0, 1.0, 1.0, 2.0);
    expect(z.all_conditions(), "aligned configuration must satisfy all conditions");
    expect(std::abs(z.additivity_defect) <= 1e-12,
           "aligned defect " + fmt(z.additivity_defect, 17) + " is nonzero");
    return "positive defect " + fmt(p.additivity_defect) +
           " with one condition failing; aligned triple is exactly additive";
}

// 10. Byte-identical reports across repeats and thread counts.
std::string check_report_determinism() {
    const std::string specs = std::string(HYPMET_SOURCE_DIR) + "/specs";

    ExperimentConfig delta;
    delta.command = "delta";
    delta.family = "go";
    delta.space_path = specs + "/halfplane.json";
    delta.mode = "sampled";
    delta.samples = 50000;
    delta.seed = 21;
    delta.threads = 1;
    const RunOutcome a = run(delta);
    const RunOutcome b = run(delta);
    delta.threads = 4;
    const RunOutcome c = run(delta);
    expect(a.exit_code == 0, "delta run failed");
    expect(a.report == b.report, "delta reports differ between repeats");
    expect(a.report == c.report, "delta reports differ across thread counts");

    ExperimentConfig audit;
    audit.command = "audit";
    audit.family = "na";
    audit.space_path = specs + "/punctured_plane.json";
    audit.mode = "sampled";
    audit.samples = 40000;
    audit.seed = 8;
    audit.threads = 1;
    const RunOutcome a1 = run(audit);
    audit.threads = 3;
    const RunOutcome a2 = run(audit);
    expect(a1.exit_code == 0 && a1.report == a2.report,
           "audit reports differ across thread counts");

    ExperimentConfig dila;
    dila.command = "dilatation";
    dila.family = "ibr";
    dila.space_path = specs + "/punctured_plane.json";
    dila.center = "2,0";
    dila.format = "csv";
    const RunOutcome d1 = run(dila);
    const RunOutcome d2 = run(dila);
    expect(d1.exit_code == 0 && d1.report == d2.report,
           "dilatation csv differs between repeats");
    return "3 commands, " + std::to_string(a.report.size()) + "/" +
           std::to_string(a1.report.size()) + "/" + std::to_string(d1.report.size()) +
           " report bytes, all byte-identical";
}

} // namespace

int main() {
    const std::vector<testsup::NamedSpace> small = testsup::delta_spaces();
    const std::vector<testsup::NamedSpace> large = testsup::audit_spaces();

    struct Check {
        std::string description;
        std::function<std::string()> run;
    };
    const std::vector<Check> checks = {
        {"GO four-point defects stay within 1/4 log 24",
         [&] { return check_go_delta(small); }},
        {"DHV four-point defects stay within log(2 + 1/c) for c in {0.5, 1, 2, 5}",
         [&] { return check_dhv_delta(small); }},
        {"NA defects within log 9 and pair products within factor 9",
         [&] { return check_na(small); }},
        {"IBR defects within log 4 and products within factor 4 for arbitrary weights",
         [&] { return check_ibr_random_weights(small); }},
        {"exhaustive metric-axiom audits pass on the large samples",
         [&] { return check_axiom_audits(large); }},
        {"the unit-disk triangle search straddles the c=2 metricity threshold",
         [&] { return check_counterexample_search(); }},
        {"envelope ratios reach their small-radius limits and match sphere probes",
         [&] { return check_dilatation_limits(); }},
        {"every sampled pair respects the envelopes and the inverted distance bound",
         [&] { return check_envelope_sandwich(small, large); }},
        {"the GO additivity probe reproduces the equality conditions",
         [&] { return check_additivity_probe(); }},
        {"reports are byte-identical across repeats and thread counts",
         [&] { return check_report_determinism(); }},
    };

    int failed = 0;
    for (std::size_t k = 0; k < checks.size(); ++k) {
        std::string verdict, detail;
        try {
            detail = checks[k].run();
            verdict = "[PASS]";
        } catch (const std::exception& e) {
            detail = e.what();
            verdict = "[FAIL]";
            ++failed;
        }
        std::cout << verdict << " " << (k + 1) << ". " << checks[k].description
                  << ": " << detail << "\n";
    }
    std::cout << (checks.size() - static_cast<std::size_t>(failed)) << "/"
              << checks.size() << " acceptance checks passed\n";
    return failed == 0 ? 0 : 1;
}
