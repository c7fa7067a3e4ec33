#include "mincos/driver.hpp"

#include <chrono>

#include "mincos/mincos.hpp"
#include "mincos/mincos_ls.hpp"
#include "mincos/stea.hpp"

namespace mincos {

std::string to_string(RunStatus status) {
    switch (status) {
    case RunStatus::converged: return "converged";
    case RunStatus::maxiter: return "maxiter";
    case RunStatus::stagnated: return "stagnated";
    case RunStatus::degenerate: return "degenerate";
    }
    return "unknown";
}

RunResult run(MinCosIteration& it, const SolverConfig& cfg, AccelHook& hook) {
    cfg.validate();
    using clock = std::chrono::steady_clock;
    const auto start = clock::now();
    const std::size_t k0 = it.iteration();

    RunResult result;
    auto fail = [&](RunStatus status, Flag flag, const Error& e) {
        result.status = status;
        result.message = e.what();
        if (!result.history.empty()) result.history.back().flags |= flag;
    };

    while (true) {
        if (it.merit() <= cfg.eps || it.at_solution()) {
            result.status = RunStatus::converged;
            break;
        }
        if (it.iteration() >= cfg.maxiter) {
            result.status = RunStatus::maxiter;
            if (!result.history.empty()) result.history.back().flags |= Flag::maxiter;
            break;
        }
        try {
            const double alpha_opt = it.optimal_alpha();
            const SteplengthChoice choice = hook.steplength(it, alpha_opt);
            ConvergenceRecord rec = it.step(choice.alpha);
            rec.step_kind = choice.kind;
            rec.elapsed = std::chrono::duration<double>(clock::now() - start).count();
            if (cfg.residual) rec.residual = it.residual();
            result.history.push_back(rec);
        } catch (const StagnationError& e) {
            fail(RunStatus::stagnated, Flag::stagnation, e);
            break;
        } catch (const DegenerateError& e) {
            fail(RunStatus::degenerate, Flag::degenerate, e);
            break;
        }
    }

    result.x = it.iterate();
    result.final_merit = it.merit();
    result.iterations = it.iteration() - k0;
    result.elapsed = std::chrono::duration<double>(clock::now() - start).count();
    return result;
}

RunResult run(MinCosIteration& it, const SolverConfig& cfg) {
    if (cfg.accel == AccelMode::stea2) {
        SteaConfig stea{.ncycle = cfg.ncycle, .mcol = cfg.mcol, .functional = {}};
        return restarted_drive(it, stea, cfg);
    }
    AccelHook hook = AccelHook::from_config(cfg);
    return run(it, cfg, hook);
}

RunResult run_spd(const SparseOp& a, const SolverConfig& cfg) {
    MinCosSolver solver(a, cfg.symmetrize);
    return run(solver, cfg);
}

RunResult run_ls(const SparseOp& a, const SolverConfig& cfg) {
    MinCosLSSolver solver(a);
    return run(solver, cfg);
}

} // namespace mincos
