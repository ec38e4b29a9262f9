#include "towtrack/cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <json.hpp>

#include "towtrack/csv_io.hpp"
#include "towtrack/scenario_io.hpp"

namespace towtrack::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

RunReport build_report(const SimLog& log, const ScenarioConfig& cfg,
                       const std::string& csv_path) {
    RunReport rep;
    rep.mode = cfg.mode;
    rep.outcome = log.outcome;
    rep.steps_logged = log.records.size();
    rep.csv_path = csv_path;
    if (!log.records.empty()) {
        const SimRecord& last = log.records.back();
        rep.final_p_e = last.bundle.p_e;
        rep.final_psi_le = last.psi_le;
    }
    std::size_t active = 0;
    for (const SimRecord& r : log.records)
        if (r.flags.qp_active) ++active;
    rep.qp_active_fraction =
        log.records.empty() ? 0.0
                            : static_cast<double>(active) /
                                  static_cast<double>(log.records.size());
    for (const Event& e : detect_events(log, cfg.cbf))
        ++rep.event_counts[event_label(e.type)];
    return rep;
}

json report_to_json(const RunReport& rep, const ScenarioConfig& cfg) {
    json j;
    j["mode"] = mode_name(rep.mode);
    j["outcome"] = rep.outcome.completed() ? "completed" : "breakdown";
    if (!rep.outcome.completed()) {
        j["breakdown_t"] = rep.outcome.t;
        j["breakdown_reason"] = rep.outcome.reason;
    }
    j["dt"] = cfg.dt;
    j["duration"] = cfg.duration;
    j["steps_logged"] = rep.steps_logged;
    j["final_p_e"] = rep.final_p_e;
    j["final_psi_le"] = rep.final_psi_le;
    j["qp_active_fraction"] = rep.qp_active_fraction;
    j["event_counts"] = rep.event_counts;
    j["csv"] = rep.csv_path;
    return j;
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string());
    out << text;
}

/// Runs one mode and writes its log and report; returns the report.
RunReport run_one(ScenarioConfig cfg, Mode mode, const fs::path& out_dir) {
    cfg.mode = mode;
    const SimLog log = simulate(cfg);
    const fs::path csv_path = out_dir / ("log_" + mode_name(mode) + ".csv");
    write_csv(log, csv_path.string());
    RunReport rep = build_report(log, cfg, csv_path.string());
    write_text(out_dir / ("report_" + mode_name(mode) + ".json"),
               report_to_json(rep, cfg).dump(2) + "\n");
    return rep;
}

ScenarioConfig load_with_overrides(const std::string& path,
                                   const std::optional<double>& dt,
                                   const std::optional<double>& duration) {
    ScenarioConfig cfg = load_scenario(path);
    if (dt) cfg.dt = *dt;
    if (duration) cfg.duration = *duration;
    cfg.validate();
    return cfg;
}

}  // namespace

std::string mode_name(Mode m) {
    return m == Mode::QpFiltered ? "qp" : "reference";
}

int cmd_run(const RunOptions& opts) {
    try {
        ScenarioConfig cfg =
            load_with_overrides(opts.scenario_path, opts.dt, opts.duration);
        fs::create_directories(opts.out_dir);
        const RunReport rep = run_one(cfg, opts.mode, opts.out_dir);

        if (rep.outcome.completed()) {
            std::cout << "completed " << cfg.duration << " s, " << rep.steps_logged
                      << " samples, final p_e = " << rep.final_p_e << " m\n";
            return 0;
        }
        std::cout << "breakdown at t = " << rep.outcome.t << " s ("
                  << rep.outcome.reason << ")\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}

int cmd_compare(const CompareOptions& opts) {
    if (opts.mode_a == opts.mode_b) {
        std::cerr << "error: compare needs two distinct modes\n";
        return 1;
    }
    try {
        ScenarioConfig cfg =
            load_with_overrides(opts.scenario_path, opts.dt, opts.duration);
        fs::create_directories(opts.out_dir);

        const RunReport a = run_one(cfg, opts.mode_a, opts.out_dir);
        const RunReport b = run_one(cfg, opts.mode_b, opts.out_dir);

        json j;
        j["scenario"] = opts.scenario_path;
        j[mode_name(opts.mode_a)] = report_to_json(a, cfg);
        j[mode_name(opts.mode_b)] = report_to_json(b, cfg);
        write_text(fs::path(opts.out_dir) / "compare.json", j.dump(2) + "\n");

        auto describe = [](const RunReport& r) {
            return r.outcome.completed()
                       ? "completed (final p_e " + std::to_string(r.final_p_e) + " m)"
                       : "breakdown at t = " + std::to_string(r.outcome.t) + " s";
        };
        std::cout << mode_name(opts.mode_a) << ": " << describe(a) << '\n'
                  << mode_name(opts.mode_b) << ": " << describe(b) << '\n';
        for (const RunReport* r : {&a, &b})
            if (r->mode == Mode::QpFiltered)
                std::cout << "qp activation fraction: " << r->qp_active_fraction
                          << '\n';
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace towtrack::cli
