#include "mincos/bench.hpp"

#include <cstdio>
#include <fstream>
#include <future>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "mincos/mincos.hpp"
#include "mincos/mincos_ls.hpp"

namespace mincos::bench {

namespace {

std::string format_double(double v, const char* fmt = "%.17g") {
    char buf[64];
    std::snprintf(buf, sizeof buf, fmt, v);
    return buf;
}

std::string summarize(const std::string& label, Mode mode, const SolverConfig& cfg,
                      const RunResult& r) {
    std::ostringstream s;
    s << "matrix=" << label << " mode=" << to_string(mode) << " accel=" << to_string(cfg.accel)
      << " status=" << to_string(r.status) << " iterations=" << r.iterations
      << " final_merit=" << format_double(r.final_merit, "%.6e")
      << " wall_s=" << format_double(r.elapsed, "%.3f");
    if (!r.message.empty()) s << " message=\"" << r.message << '"';
    return s.str();
}

} // namespace

std::string to_string(Mode mode) {
    return mode == Mode::spd ? "spd" : "ls";
}

Mode parse_mode(std::string_view name) {
    if (name == "spd") return Mode::spd;
    if (name == "ls") return Mode::ls;
    throw std::invalid_argument("unknown mode '" + std::string(name) + "'");
}

void write_history_csv(std::ostream& out, std::span<const ConvergenceRecord> history,
                       bool residual_column) {
    out << csv_header << (residual_column ? ",residual" : "") << '\n';
    for (const auto& r : history) {
        out << r.k << ',' << format_double(r.merit) << ',' << format_double(r.alpha) << ','
            << to_string(r.step_kind) << ',' << format_double(r.elapsed, "%.6f") << ','
            << to_string(r.flags);
        if (residual_column) out << ',' << (r.residual ? format_double(*r.residual) : "");
        out << '\n';
    }
}

int exit_code(RunStatus status) {
    switch (status) {
    case RunStatus::converged: return 0;
    case RunStatus::maxiter: return 2;
    default: return 1;
    }
}

ScenarioResult run_scenario(const SparseOp& a, const std::string& label, const SolverConfig& cfg,
                            Mode mode, const std::optional<std::filesystem::path>& csv_out) {
    ScenarioResult out;
    try {
        cfg.validate();
        if (mode == Mode::spd && !a.square())
            throw DimensionError("spd mode needs a square matrix, got " +
                                 std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
        RunResult r = mode == Mode::spd ? run_spd(a, cfg) : run_ls(a, cfg);
        if (csv_out) {
            std::ofstream f(*csv_out);
            if (!f) throw Error("cannot write " + csv_out->string());
            write_history_csv(f, r.history, cfg.residual);
        }
        out.exit_code = exit_code(r.status);
        out.summary = summarize(label, mode, cfg, r);
        if (out.exit_code == 1) out.error = r.message;
        out.run = std::move(r);
    } catch (const std::exception& e) {
        out.exit_code = 1;
        out.error = e.what();
        out.summary = "matrix=" + label + " mode=" + to_string(mode) +
                      " accel=" + to_string(cfg.accel) + " status=error";
    }
    return out;
}

ScenarioResult run_scenario(const gallery::MatrixSpec& spec, const SolverConfig& cfg, Mode mode,
                            const std::optional<std::filesystem::path>& csv_out) {
    SparseOp a;
    try {
        a = gallery::build(spec);
    } catch (const std::exception& e) {
        ScenarioResult out;
        out.error = e.what();
        out.summary = "matrix=" + spec.describe() + " status=error";
        return out;
    }
    return run_scenario(a, spec.describe(), cfg, mode, csv_out);
}

std::vector<ComparisonRow> compare_scenarios(
    const gallery::MatrixSpec& spec, const SolverConfig& base, std::span<const AccelMode> accels,
    Mode mode, const std::optional<std::filesystem::path>& out_prefix) {
    std::vector<ComparisonRow> rows;
    SparseOp a;
    try {
        a = gallery::build(spec);
    } catch (const std::exception& e) {
        for (AccelMode accel : accels) {
            ComparisonRow row{accel, {}, std::nullopt, std::nullopt};
            row.result.error = e.what();
            row.result.summary = "matrix=" + spec.describe() + " status=error";
            rows.push_back(std::move(row));
        }
        return rows;
    }

    std::vector<std::future<ScenarioResult>> jobs;
    for (AccelMode accel : accels) {
        SolverConfig cfg = base;
        cfg.accel = accel;
        std::optional<std::filesystem::path> csv;
        if (out_prefix) csv = out_prefix->string() + "_" + to_string(accel) + ".csv";
        rows.push_back({accel, {}, std::nullopt, csv});
        jobs.push_back(std::async(std::launch::async, [&a, &spec, cfg, mode, csv] {
            return run_scenario(a, spec.describe(), cfg, mode, csv);
        }));
    }
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        rows[i].result = jobs[i].get();
        const auto& r = rows[i].result.run;
        if (r && r->status == RunStatus::converged) rows[i].iterations_to_eps = r->iterations;
    }
    return rows;
}

void write_comparison_csv(std::ostream& out, std::span<const ComparisonRow> rows) {
    out << "accel,status,iterations_to_eps,final_merit,wall_s\n";
    for (const auto& row : rows) {
        const auto& r = row.result.run;
        out << to_string(row.accel) << ',' << (r ? to_string(r->status) : "error") << ','
            << (row.iterations_to_eps ? std::to_string(*row.iterations_to_eps) : "") << ','
            << (r ? format_double(r->final_merit) : "") << ','
            << (r ? format_double(r->elapsed, "%.6f") : "") << '\n';
    }
}

} // namespace mincos::bench
