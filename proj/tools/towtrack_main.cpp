#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "towtrack/cli.hpp"

namespace {

towtrack::Mode parse_mode(const std::string& s) {
    if (s == "reference") return towtrack::Mode::ReferenceOnly;
    if (s == "qp") return towtrack::Mode::QpFiltered;
    throw CLI::ValidationError("--mode", "expected 'reference' or 'qp'");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Singularity-avoiding trajectory tracking for an underactuated "
                 "surface vessel: backstepping reference controller with a "
                 "CBF-based QP safety filter"};
    app.set_version_flag("--version", std::string("towtrack ") + towtrack::cli::kVersion);
    app.require_subcommand(1);

    std::string scenario;
    std::string out_dir = ".";
    std::string mode_str;
    double dt = 0.0;
    double duration = 0.0;

    CLI::App* run = app.add_subcommand("run", "simulate one scenario and write CSV + report");
    run->add_option("--scenario", scenario, "scenario JSON file")->required();
    run->add_option("--mode", mode_str, "controller mode: reference | qp")->required();
    run->add_option("--out", out_dir, "output directory");
    CLI::Option* run_dt = run->add_option("--dt", dt, "override integration period [s]");
    CLI::Option* run_dur = run->add_option("--duration", duration, "override run length [s]");

    std::string mode_a = "reference";
    std::string mode_b = "qp";
    CLI::App* cmp = app.add_subcommand("compare", "run both modes and write a side-by-side summary");
    cmp->add_option("--scenario", scenario, "scenario JSON file")->required();
    cmp->add_option("--out", out_dir, "output directory");
    cmp->add_option("--mode-a", mode_a, "first mode (default reference)");
    cmp->add_option("--mode-b", mode_b, "second mode (default qp)");
    CLI::Option* cmp_dt = cmp->add_option("--dt", dt, "override integration period [s]");
    CLI::Option* cmp_dur = cmp->add_option("--duration", duration, "override run length [s]");

    try {
        app.parse(argc, argv);

        if (run->parsed()) {
            towtrack::cli::RunOptions opts;
            opts.scenario_path = scenario;
            opts.mode = parse_mode(mode_str);
            opts.out_dir = out_dir;
            if (run_dt->count() > 0) opts.dt = dt;
            if (run_dur->count() > 0) opts.duration = duration;
            return towtrack::cli::cmd_run(opts);
        }
        if (cmp->parsed()) {
            towtrack::cli::CompareOptions opts;
            opts.scenario_path = scenario;
            opts.out_dir = out_dir;
            opts.mode_a = parse_mode(mode_a);
            opts.mode_b = parse_mode(mode_b);
            if (cmp_dt->count() > 0) opts.dt = dt;
            if (cmp_dur->count() > 0) opts.duration = duration;
            return towtrack::cli::cmd_compare(opts);
        }
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }
    return 1;
}
