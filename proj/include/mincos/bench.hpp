#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mincos/config.hpp"
#include "mincos/driver.hpp"
#include "mincos/gallery.hpp"

namespace mincos::bench {

enum class Mode { spd, ls };

std::string to_string(Mode mode);
Mode parse_mode(std::string_view name);

inline constexpr const char* csv_header = "k,merit,alpha,step_kind,elapsed_s,flags";

/// One row per record. With `residual_column` a trailing `residual` column is added.
void write_history_csv(std::ostream& out, std::span<const ConvergenceRecord> history,
                       bool residual_column = false);

/// 0 when merit <= eps was reached, 2 when maxiter was hit, 1 otherwise.
int exit_code(RunStatus status);

struct ScenarioResult {
    std::optional<RunResult> run; // absent when the scenario failed before iterating
    int exit_code = 1;
    std::string summary;
    std::string error;
};

/// Builds the matrix, runs it in the requested mode and writes the history
/// CSV to `csv_out` when given. Module errors are caught and reported with
/// exit code 1.
ScenarioResult run_scenario(const gallery::MatrixSpec& spec, const SolverConfig& cfg, Mode mode,
                            const std::optional<std::filesystem::path>& csv_out = std::nullopt);
ScenarioResult run_scenario(const SparseOp& a, const std::string& label, const SolverConfig& cfg,
                            Mode mode,
                            const std::optional<std::filesystem::path>& csv_out = std::nullopt);

struct ComparisonRow {
    AccelMode accel;
    ScenarioResult result;
    std::optional<std::size_t> iterations_to_eps;
    std::optional<std::filesystem::path> csv;
};

/**
 * Runs every mode in `accels` on the same matrix, seed and tolerances. Runs
 * are independent and execute concurrently. With `out_prefix`, history i is
 * written to `<prefix>_<mode>.csv`. A failing run does not stop the others.
 */
std::vector<ComparisonRow> compare_scenarios(
    const gallery::MatrixSpec& spec, const SolverConfig& base, std::span<const AccelMode> accels,
    Mode mode, const std::optional<std::filesystem::path>& out_prefix = std::nullopt);

/// `accel,status,iterations_to_eps,final_merit,wall_s`
void write_comparison_csv(std::ostream& out, std::span<const ComparisonRow> rows);

} // namespace mincos::bench
