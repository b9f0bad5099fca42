#ifndef QCURV_RUNNER_HPP
#define QCURV_RUNNER_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qcurv/io.hpp"

// Scenario execution: resolves metric sources, runs the requested tasks,
// writes reports, and accumulates a pass/fail summary.

namespace qcurv::io {

struct RunOptions {
    std::string out_dir = ".";
    int quad_order = 24;
    std::optional<std::pair<double, double>> t_window;
};

struct RunResult {
    bool ok = true;
    std::vector<std::string> summary;  // one line per check
    std::vector<std::string> files;    // paths written
};

RunResult run_scenario(const Scenario& s, const RunOptions& opt);

// The built-in regression suite; deterministic output, byte-identical
// across runs.
RunResult verify_all(const RunOptions& opt);

// The scenarios verify_all runs, exposed for tests.
std::vector<Scenario> builtin_scenarios();

}  // namespace qcurv::io

#endif
