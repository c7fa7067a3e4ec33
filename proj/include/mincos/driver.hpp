#pragma once

#include <string>
#include <vector>

#include "mincos/accel.hpp"
#include "mincos/config.hpp"
#include "mincos/iteration.hpp"

namespace mincos {

enum class RunStatus { converged, maxiter, stagnated, degenerate };

std::string to_string(RunStatus status);

struct RunResult {
    DenseMat x;
    std::vector<ConvergenceRecord> history;
    RunStatus status = RunStatus::maxiter;
    double final_merit = 0.0;
    std::size_t iterations = 0; // base iterations executed by this run
    double elapsed = 0.0;       // seconds
    std::string message;        // diagnostic for stagnated / degenerate runs
};

/**
 * Iterates until merit <= eps or the iteration counter reaches maxiter.
 *
 * Step failures (vanishing steplength denominator, degenerate projection)
 * end the run with the matching status; the history up to that point is
 * kept and its last row is flagged. Reaching maxiter flags the last row.
 */
RunResult run(MinCosIteration& it, const SolverConfig& cfg, AccelHook& hook);

/// As above with the hook built from cfg; accel = stea2 runs the restarted
/// extrapolation driver with (cfg.ncycle, cfg.mcol).
RunResult run(MinCosIteration& it, const SolverConfig& cfg);

/// Square SPD operator, X0 = (sqrt(n)/||A||_F) I.
RunResult run_spd(const SparseOp& a, const SolverConfig& cfg);
/// Normal equations of a tall operator, X0 = (sqrt(n)/||A||_F^2) I.
RunResult run_ls(const SparseOp& a, const SolverConfig& cfg);

} // namespace mincos
