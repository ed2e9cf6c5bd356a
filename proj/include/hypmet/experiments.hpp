#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <json.hpp>

#include "hypmet/audit.hpp"
#include "hypmet/builders.hpp"
#include "hypmet/counterexample.hpp"
#include "hypmet/errors.hpp"
#include "hypmet/format.hpp"
#include "hypmet/gromov.hpp"
#include "hypmet/metrics.hpp"
#include "hypmet/qc.hpp"
#include "hypmet/spec_io.hpp"
#include "hypmet/version.hpp"

namespace hypmet {

/// Exhaustive scans above this many tuples fall back to seeded sampling
/// when the mode is left on auto.
inline constexpr std::uint64_t auto_exhaustive_cutoff = 500000;

/// One experiment as configured from the command line. String fields keep
/// the user's spelling so reports echo exactly what was asked. `samples`
/// doubles as the counterexample triple budget. Thread count is resolved
/// at run time and deliberately never echoed: it must not change a single
/// reported byte.
struct ExperimentConfig {
    std::string command;
    std::string family = "go";
    double c = 2.0;
    std::string space_path;
    std::string mode = "auto";  // auto | exhaustive | sampled
    std::uint64_t samples = 1000000;
    std::uint64_t seed = 0;
    std::string r_grid = "geom:1e-1:0.1:6";
    int probes = 0;   // 0: 512 in 2-D, 2048 in higher dimension
    int threads = 0;  // 0: machine parallelism
    std::string out_path;
    std::string format = "json";
    std::string ibr_bound = "fine";
    std::string center;  // dilatation probe center, comma-separated

    // eval inputs: sample indices (with --space) or a raw triple
    int x = -1, y = -1;
    double d = std::numeric_limits<double>::quiet_NaN();
    double fx = std::numeric_limits<double>::quiet_NaN();
    double fy = std::numeric_limits<double>::quiet_NaN();
};

struct RunOutcome {
    int exit_code = 0;
    std::string report;
};

namespace detail {

inline int resolve_threads(int requested) {
    if (requested > 0) return requested;
    const unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

inline Family make_family(const std::string& code, double c) {
    if (code == "go") return Family::go();
    if (code == "dhv") return Family::dhv(c);
    if (code == "na") return Family::na();
    if (code == "ibr") return Family::ibr();
    throw BuildError("unknown family '" + code + "' (expected go|dhv|na|ibr)");
}

inline BoundKind parse_bound_kind(const std::string& s) {
    if (s == "fine") return BoundKind::Fine;
    if (s == "coarse") return BoundKind::Coarse;
    throw BuildError("unknown bound variant '" + s + "' (expected fine|coarse)");
}

inline std::uint64_t count_tuples(int n, int k) {
    if (n < k) return 0;
    std::uint64_t r = 1;
    for (int i = 1; i <= k; ++i)
        r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
    return r;
}

inline Mode resolve_mode(const std::string& mode, std::uint64_t total_tuples,
                         std::uint64_t samples, std::uint64_t seed) {
    if (mode == "exhaustive") return Mode::Exhaustive();
    if (mode == "sampled") return Mode::Sampled(samples, seed);
    if (mode == "auto")
        return total_tuples <= auto_exhaustive_cutoff ? Mode::Exhaustive()
                                                      : Mode::Sampled(samples, seed);
    throw BuildError("unknown mode '" + mode + "' (expected auto|exhaustive|sampled)");
}

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (std::size_t k = 0; k <= s.size(); ++k)
        if (k == s.size() || s[k] == sep) {
            out.push_back(s.substr(start, k - start));
            start = k + 1;
        }
    return out;
}

inline double parse_number(const std::string& s, const std::string& where) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size() || !std::isfinite(v)) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw BuildError(where + ": cannot parse number '" + s + "'");
    }
}

/// Radius-fraction grid: either `geom:<start>:<ratio>:<count>` or an
/// explicit comma list. Fractions are of F(center), must lie in (0, 1) and
/// decrease; the profile additionally requires a geometric progression.
inline std::vector<double> parse_r_grid(const std::string& s) {
    std::vector<double> out;
    if (s.rfind("geom:", 0) == 0) {
        const auto tok = split(s, ':');
        if (tok.size() != 4)
            throw BuildError("geometric r-grid must be geom:<start>:<ratio>:<count>");
        const double start = parse_number(tok[1], "--r-grid start");
        const double ratio = parse_number(tok[2], "--r-grid ratio");
        const double count_f = parse_number(tok[3], "--r-grid count");
        const int count = static_cast<int>(count_f);
        if (count != count_f || count < 3 || count > 64)
            throw BuildError("--r-grid count must be an integer in [3, 64]");
        if (!(ratio > 0.0) || !(ratio < 1.0))
            throw BuildError("--r-grid ratio must lie in (0, 1)");
        double f = start;
        for (int k = 0; k < count; ++k, f *= ratio) out.push_back(f);
    } else {
        for (const std::string& t : split(s, ','))
            out.push_back(parse_number(t, "--r-grid"));
    }
    if (out.size() < 3) throw BuildError("--r-grid needs at least three radii");
    for (std::size_t k = 0; k < out.size(); ++k) {
        if (!(out[k] > 0.0) || !(out[k] < 1.0))
            throw BuildError("--r-grid fractions must lie in (0, 1)");
        if (k && !(out[k] < out[k - 1]))
            throw BuildError("--r-grid fractions must strictly decrease");
    }
    return out;
}

inline Vec parse_center(const std::string& s) {
    if (s.empty()) throw BuildError("dilatation needs --center <comma-separated point>");
    Vec v;
    for (const std::string& t : split(s, ','))
        v.push_back(parse_number(t, "--center"));
    return v;
}

inline nlohmann::ordered_json json_num(double v) {
    if (!std::isfinite(v)) return nullptr;
    return v;
}

inline nlohmann::ordered_json mode_json(const Mode& m) {
    nlohmann::ordered_json j;
    j["kind"] = m.exhaustive ? "exhaustive" : "sampled";
    if (!m.exhaustive) j["samples"] = m.samples;
    return j;
}

inline nlohmann::ordered_json config_echo(const ExperimentConfig& cfg,
                                          const Family& fam) {
    nlohmann::ordered_json e;
    e["family"] = family_code(fam.kind);
    if (fam.kind == MetricKind::DHV) e["c"] = fam.c;
    if (!cfg.space_path.empty()) e["space"] = cfg.space_path;
    if (cfg.command == "audit" || cfg.command == "delta") {
        e["mode"] = cfg.mode;
        e["samples"] = cfg.samples;
    }
    if (cfg.command == "counterexample") e["budget"] = cfg.samples;
    if (cfg.command == "dilatation") {
        e["center"] = cfg.center;
        e["r_grid"] = cfg.r_grid;
        e["probes"] = cfg.probes;
        if (fam.kind == MetricKind::IBR) e["ibr_bound"] = cfg.ibr_bound;
    }
    if (cfg.command == "eval") {
        if (cfg.x >= 0) e["x"] = cfg.x;
        if (cfg.y >= 0) e["y"] = cfg.y;
        if (!std::isnan(cfg.d)) e["d"] = cfg.d;
        if (!std::isnan(cfg.fx)) e["fx"] = cfg.fx;
        if (!std::isnan(cfg.fy)) e["fy"] = cfg.fy;
    }
    e["seed"] = cfg.seed;
    return e;
}

inline nlohmann::ordered_json report_skeleton(const ExperimentConfig& cfg,
                                              const Family& fam) {
    nlohmann::ordered_json j;
    j["tool"] = nlohmann::ordered_json{{"name", "hypmet"}, {"version", version_string}};
    j["command"] = cfg.command;
    j["config"] = config_echo(cfg, fam);
    j["seed"] = cfg.seed;
    j["certified_bounds"] = nlohmann::ordered_json{
        {"go", certified_delta_bound(Family::go())},
        {"dhv", certified_delta_bound(Family::dhv(cfg.c))},
        {"na", certified_delta_bound(Family::na())},
        {"ibr", certified_delta_bound(Family::ibr())}};
    return j;
}

inline RunOutcome finish(nlohmann::ordered_json j, const std::string& status,
                         int exit_code) {
    j["status"] = status;
    return RunOutcome{exit_code, j.dump(2) + "\n"};
}

inline BuiltSpace built_from(const ExperimentConfig& cfg) {
    if (cfg.space_path.empty())
        throw BuildError(cfg.command + " needs --space <spec file>");
    return build(load_space_spec(cfg.space_path));
}

inline bool relabeled(const std::vector<int>& labels) {
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (labels[i] != static_cast<int>(i)) return true;
    return false;
}

inline RunOutcome run_eval(const ExperimentConfig& cfg, const Family& fam) {
    const bool have_raw =
        !std::isnan(cfg.d) || !std::isnan(cfg.fx) || !std::isnan(cfg.fy);
    double d = cfg.d, fx = cfg.fx, fy = cfg.fy;
    if (!cfg.space_path.empty()) {
        if (have_raw)
            throw BuildError(
                "eval takes either --space with --x/--y or raw --d/--fx/--fy, not both");
        if (cfg.x < 0 || cfg.y < 0)
            throw BuildError("eval with --space needs --x and --y sample indices");
        const BuiltSpace built = built_from(cfg);
        if (cfg.x >= built.space.size() || cfg.y >= built.space.size())
            throw BuildError("eval index out of range (sample size " +
                             std::to_string(built.space.size()) + ")");
        d = built.space.dist(cfg.x, cfg.y);
        fx = built.weights(cfg.x);
        fy = built.weights(cfg.y);
    } else if (std::isnan(cfg.d) || std::isnan(cfg.fx) || std::isnan(cfg.fy)) {
        throw BuildError("eval needs --d, --fx and --fy (or --space with --x/--y)");
    }

    const double value = rho(fam, d, fx, fy);
    auto j = report_skeleton(cfg, fam);
    nlohmann::ordered_json res;
    if (cfg.x >= 0) res["x"] = cfg.x;
    if (cfg.y >= 0) res["y"] = cfg.y;
    res["d"] = d;
    res["fx"] = fx;
    res["fy"] = fy;
    res["value"] = value;
    res["metricity_certified"] = metricity_certified(fam);
    j["result"] = std::move(res);
    return finish(std::move(j), "ok", 0);
}

inline RunOutcome run_audit(const ExperimentConfig& cfg, const Family& fam) {
    BuiltSpace built = built_from(cfg);
    const int n = built.space.size();
    const int threads = resolve_threads(cfg.threads);
    const Mode m = resolve_mode(cfg.mode, count_tuples(n, 3), cfg.samples, cfg.seed);

    // Custom weight tables start uncertified; a clean pair scan certifies
    // them so the report can say which hypothesis the family actually got.
    if (!built.weights.lipschitz_certified)
        lipschitz_audit(built.space, built.weights, Mode::Exhaustive(), threads);

    auto rho_fn = [&](int i, int j) {
        return rho(fam, built.space.dist(i, j), built.weights(i), built.weights(j));
    };
    const AuditReport rep =
        metric_axiom_audit(rho_fn, built.space, m, AxiomSet::All, threads);

    auto j = report_skeleton(cfg, fam);
    nlohmann::ordered_json res;
    res["n"] = n;
    res["axioms"] = "all";
    res["mode"] = mode_json(rep.mode);
    res["checked"] = rep.checked;
    res["violations"] = rep.violations;
    res["worst_slack"] = json_num(rep.worst_defect);
    if (!rep.witness.empty()) res["witness"] = rep.witness;
    res["tolerance"] = nlohmann::ordered_json{{"abs", tol_abs}, {"rel", tol_rel}};
    res["weights_lipschitz_certified"] = built.weights.lipschitz_certified;
    res["metricity_certified"] = metricity_certified(fam);
    j["result"] = std::move(res);
    const bool ok = rep.violations == 0;
    return finish(std::move(j), ok ? "ok" : "violation", ok ? 0 : 2);
}

inline RunOutcome run_delta(const ExperimentConfig& cfg, const Family& fam) {
    BuiltSpace built = built_from(cfg);
    const int n = built.space.size();
    const int threads = resolve_threads(cfg.threads);
    const Mode m = resolve_mode(cfg.mode, count_tuples(n, 4), cfg.samples, cfg.seed);

    if (!built.weights.lipschitz_certified)
        lipschitz_audit(built.space, built.weights, Mode::Exhaustive(), threads);

    const DeltaEstimate est = delta_estimate(fam, built.space, built.weights, m, threads);
    const bool within = est.delta_hat <= est.certified_bound + tol_abs;

    auto j = report_skeleton(cfg, fam);
    nlohmann::ordered_json res;
    res["n"] = n;
    res["mode"] = mode_json(est.mode);
    res["delta_hat"] = est.delta_hat;
    if (est.witness[0] >= 0) {
        res["witness"] = est.witness;
        if (relabeled(built.labels)) {
            std::vector<int> wl;
            for (int w : est.witness) wl.push_back(built.labels[static_cast<std::size_t>(w)]);
            res["witness_labels"] = wl;
        }
    }
    res["certified_bound"] = est.certified_bound;
    res["bound_certified"] = est.bound_certified;
    res["within_bound"] = within;
    res["weights_lipschitz_certified"] = built.weights.lipschitz_certified;
    j["result"] = std::move(res);
    const bool ok = within || !est.bound_certified;
    return finish(std::move(j), ok ? "ok" : "violation", ok ? 0 : 2);
}

inline RunOutcome run_dilatation(const ExperimentConfig& cfg, const Family& fam) {
    const BuiltSpace built = built_from(cfg);
    if (!built.space.has_points())
        throw BuildError("dilatation requires a Euclidean space, not a graph");
    if (built.weights.source != WeightSource::DistToObstacle)
        throw BuildError("dilatation requires distance-to-obstacle weights");
    const Vec center = parse_center(cfg.center);
    if (static_cast<int>(center.size()) != built.space.dim())
        throw BuildError("--center dimension does not match the space");
    const std::vector<double> fractions = parse_r_grid(cfg.r_grid);
    const int probes =
        cfg.probes > 0 ? cfg.probes : (built.space.dim() <= 2 ? 512 : 2048);
    const BoundKind kind = parse_bound_kind(cfg.ibr_bound);

    const DilatationProfile prof =
        dilatation_profile(fam, AmbientWeight::obstacle(built.obstacle), center,
                           fractions, probes, cfg.seed, kind, true);

    std::uint64_t violations = 0;
    for (std::size_t k = 0; k < prof.radii.size(); ++k)
        if (prof.h_hat[k] > prof.h_env[k] + tol_abs + tol_rel * prof.h_env[k])
            ++violations;

    if (cfg.format == "csv") {
        std::string csv = "r,H_hat,H_env\n";
        for (std::size_t k = 0; k < prof.radii.size(); ++k)
            csv += csv_row({prof.radii[k], prof.h_hat[k], prof.h_env[k]});
        return RunOutcome{violations == 0 ? 0 : 2, std::move(csv)};
    }

    auto j = report_skeleton(cfg, fam);
    nlohmann::ordered_json res;
    res["center"] = prof.center;
    res["center_weight"] = prof.center_weight;
    res["probes"] = probes;
    if (fam.kind == MetricKind::IBR) res["ibr_bound"] = cfg.ibr_bound;
    auto rows = nlohmann::ordered_json::array();
    for (std::size_t k = 0; k < prof.radii.size(); ++k) {
        nlohmann::ordered_json row;
        row["fraction"] = fractions[k];
        row["r"] = prof.radii[k];
        row["h_hat"] = prof.h_hat[k];
        row["h_env"] = prof.h_env[k];
        rows.push_back(std::move(row));
    }
    res["rows"] = std::move(rows);
    res["extrapolated"] = nlohmann::ordered_json{{"value", prof.extrapolated.value},
                                                 {"converged", prof.extrapolated.converged}};
    res["within_envelope"] = violations == 0;
    j["result"] = std::move(res);
    const bool ok = violations == 0;
    return finish(std::move(j), ok ? "ok" : "violation", ok ? 0 : 2);
}

inline RunOutcome run_counterexample(const ExperimentConfig& cfg, const Family& fam) {
    // The search space is the continuum unit disk; a --space file, when
    // given, only pins the intent and must therefore be a unit_disk spec.
    if (!cfg.space_path.empty()) {
        const SpaceSpec spec = load_space_spec(cfg.space_path);
        if (spec.kind != SpaceKind::UnitDisk)
            throw BuildError("the counterexample search runs on the unit disk; "
                             "--space must be a unit_disk spec");
    }
    const CounterexampleReport rep =
        find_triangle_violation(fam, cfg.samples, cfg.seed);

    auto j = report_skeleton(cfg, fam);
    nlohmann::ordered_json res;
    res["found"] = rep.found;
    res["evaluated"] = rep.evaluated;
    res["budget"] = rep.budget;
    res["defect"] = json_num(rep.defect);
    if (rep.evaluated > 0) {
        res["witness"] = rep.witness;
        res["witness_weights"] = rep.witness_weights;
    }
    res["metricity_certified"] = metricity_certified(fam);
    j["result"] = std::move(res);
    return finish(std::move(j), rep.found ? "found" : "not_found", 0);
}

} // namespace detail

/// Executes one configured experiment and renders its report. Exit code 0:
/// the audited invariants hold, or a search completed either way (the
/// report's status field discriminates found from not_found); 2: an
/// invariant was violated;
/// usage and IO problems throw and the CLI maps them to exit 1.
inline RunOutcome run(const ExperimentConfig& cfg) {
    if (!(cfg.c > 0.0) || !std::isfinite(cfg.c))
        throw BuildError("--c must be positive and finite");
    const Family fam = detail::make_family(cfg.family, cfg.c);
    if (cfg.format != "json" && cfg.format != "csv")
        throw BuildError("unknown format '" + cfg.format + "' (expected json|csv)");
    if (cfg.format == "csv" && cfg.command != "dilatation")
        throw BuildError("csv output is only defined for dilatation profiles");
    if (cfg.command == "eval") return detail::run_eval(cfg, fam);
    if (cfg.command == "audit") return detail::run_audit(cfg, fam);
    if (cfg.command == "delta") return detail::run_delta(cfg, fam);
    if (cfg.command == "dilatation") return detail::run_dilatation(cfg, fam);
    if (cfg.command == "counterexample") return detail::run_counterexample(cfg, fam);
    throw BuildError("unknown command '" + cfg.command + "'");
}

} // namespace hypmet
