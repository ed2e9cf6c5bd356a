#include <cstdio>
#include <exception>
#include <fstream>
#include <string>

#include <CLI11.hpp>

#include "hypmet/experiments.hpp"
#include "hypmet/version.hpp"

namespace {

void add_common(CLI::App* cmd, hypmet::ExperimentConfig& cfg) {
    cmd->add_option("--family", cfg.family, "Metric family: go|dhv|na|ibr")
        ->capture_default_str();
    cmd->add_option("--c", cfg.c,
                    "DHV parameter (any c > 0 evaluates; a metric needs c >= 2)")
        ->capture_default_str();
    cmd->add_option("--space", cfg.space_path, "Space description (JSON file)");
    cmd->add_option("--mode", cfg.mode, "Scan mode: auto|exhaustive|sampled")
        ->capture_default_str();
    cmd->add_option("--samples", cfg.samples,
                    "Draws in sampled mode; triple budget for counterexample")
        ->capture_default_str();
    cmd->add_option("--seed", cfg.seed, "RNG seed, recorded in the report")
        ->capture_default_str();
    cmd->add_option("--threads", cfg.threads,
                    "Worker threads, 0 = machine parallelism; never changes "
                    "any reported number")
        ->capture_default_str();
    cmd->add_option("--out", cfg.out_path, "Write the report to this file");
    cmd->add_option("--format", cfg.format,
                    "Report format: json, or csv (dilatation only)")
        ->capture_default_str();
}

int write_report(const hypmet::RunOutcome& out, const std::string& path) {
    if (path.empty()) {
        std::fwrite(out.report.data(), 1, out.report.size(), stdout);
        return out.exit_code;
    }
    std::ofstream f(path, std::ios::binary);
    f.write(out.report.data(), static_cast<std::streamsize>(out.report.size()));
    if (!f) {
        std::fprintf(stderr, "hypmet: cannot write report to %s\n", path.c_str());
        return 1;
    }
    return out.exit_code;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Weighted hyperbolic-type metrics on sampled spaces: "
                 "evaluation, axiom audits, hyperbolicity estimates, "
                 "dilatation sweeps, and counterexample search."};
    app.set_version_flag("--version", hypmet::version_string);
    app.require_subcommand(1);
    app.footer(
        "Exit status:\n"
        "  0  invariants hold, or a search completed (for counterexample the\n"
        "     report's status says found/not_found; finding one is success)\n"
        "  2  an audited invariant was violated\n"
        "  1  usage or IO error");

    hypmet::ExperimentConfig cfg;

    CLI::App* eval = app.add_subcommand(
        "eval", "Evaluate the family metric at one pair: raw --d/--fx/--fy, "
                "or --space with --x/--y sample indices");
    add_common(eval, cfg);
    eval->add_option("--x", cfg.x, "First sample index");
    eval->add_option("--y", cfg.y, "Second sample index");
    eval->add_option("--d", cfg.d, "Base distance of the pair");
    eval->add_option("--fx", cfg.fx, "Weight at the first point");
    eval->add_option("--fy", cfg.fy, "Weight at the second point");

    CLI::App* audit = app.add_subcommand(
        "audit", "Audit metric axioms (identity, symmetry, positivity, "
                 "triangle) of the family on a sampled space");
    add_common(audit, cfg);

    CLI::App* delta = app.add_subcommand(
        "delta", "Four-point hyperbolicity estimate, compared against the "
                 "family's certified constant");
    add_common(delta, cfg);

    CLI::App* dil = app.add_subcommand(
        "dilatation", "Sphere-probe dilatation sweep at --center over a "
                      "radius-fraction grid, with the analytic envelope");
    add_common(dil, cfg);
    dil->add_option("--center", cfg.center, "Probe center, comma-separated");
    dil->add_option("--r-grid", cfg.r_grid,
                    "Radius fractions of F(center): geom:<start>:<ratio>:<count> "
                    "or a decreasing comma list")
        ->capture_default_str();
    dil->add_option("--probes", cfg.probes,
                    "Probe directions per radius (0 = 512 in 2-D, 2048 above)")
        ->capture_default_str();
    dil->add_option("--ibr-bound", cfg.ibr_bound,
                    "IBR lower-bound variant: fine (1-Lipschitz weights) or coarse")
        ->capture_default_str();

    CLI::App* cx = app.add_subcommand(
        "counterexample", "Hunt for a triangle violation on the unit disk "
                          "with boundary-distance weights (exists for dhv "
                          "with 0 < c < 2)");
    add_common(cx, cfg);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    cfg.command = app.get_subcommands().front()->get_name();

    try {
        return write_report(hypmet::run(cfg), cfg.out_path);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "hypmet: %s\n", e.what());
        return 1;
    }
}
