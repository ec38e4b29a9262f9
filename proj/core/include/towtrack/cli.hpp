#pragma once

#include <map>
#include <optional>
#include <string>

#include "towtrack/harness.hpp"

namespace towtrack::cli {

inline constexpr const char* kVersion = "0.1.0";

struct RunOptions {
    std::string scenario_path;
    Mode mode = Mode::QpFiltered;
    std::string out_dir = ".";
    std::optional<double> dt;        // overrides the scenario when set
    std::optional<double> duration;  // overrides the scenario when set
};

struct CompareOptions {
    std::string scenario_path;
    std::string out_dir = ".";
    Mode mode_a = Mode::ReferenceOnly;
    Mode mode_b = Mode::QpFiltered;
    std::optional<double> dt;
    std::optional<double> duration;
};

/// Summary of one simulation written next to its CSV.
struct RunReport {
    Mode mode = Mode::QpFiltered;
    RunOutcome outcome;
    std::size_t steps_logged = 0;
    double final_p_e = 0.0;
    double final_psi_le = 0.0;
    double qp_active_fraction = 0.0;
    std::map<std::string, std::size_t> event_counts;
    std::string csv_path;
};

std::string mode_name(Mode m);

/// Runs one scenario, writes <out>/log_<mode>.csv and
/// <out>/report_<mode>.json. Exit codes: 0 completed, 2 breakdown,
/// 1 usage or configuration error.
int cmd_run(const RunOptions& opts);

/// Runs the scenario under both modes and writes the two logs plus
/// <out>/compare.json. Refuses identical modes (exit 1). Exit 0 once both
/// runs executed and files were written, whatever their outcomes.
int cmd_compare(const CompareOptions& opts);

}  // namespace towtrack::cli
