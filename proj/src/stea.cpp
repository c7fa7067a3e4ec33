#include "mincos/stea.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "mincos/rng.hpp"

namespace mincos {

namespace {

/// b - a, or nothing when the difference is lost to cancellation.
std::optional<double> safe_difference(double a, double b) {
    const double diff = b - a;
    const double scale = std::max(std::abs(a), std::abs(b));
    if (!(std::abs(diff) > 1e3 * unit_roundoff * scale)) return std::nullopt;
    return diff;
}

} // namespace

ScalarEpsilonTable::ScalarEpsilonTable(std::span<const double> seq) : terms_(seq.size()) {
    if (seq.empty()) throw DimensionError("epsilon table needs at least one term");
    cols_.emplace_back(seq.begin(), seq.end());
    for (std::size_t k = 0; k + 1 < terms_; ++k) {
        const auto& cur = cols_[k];
        std::vector<std::optional<double>> next(terms_ - k - 1);
        for (std::size_t n = 0; n < next.size(); ++n) {
            if (!cur[n] || !cur[n + 1]) continue;
            const auto diff = safe_difference(*cur[n], *cur[n + 1]);
            if (!diff) continue;
            double prev = 0.0; // eps_{-1}
            if (k > 0) {
                const auto& p = cols_[k - 1][n + 1];
                if (!p) continue;
                prev = *p;
            }
            const double v = prev + 1.0 / *diff;
            if (std::isfinite(v)) next[n] = v;
        }
        cols_.push_back(std::move(next));
    }
}

std::optional<double> ScalarEpsilonTable::at(std::size_t k, std::size_t n) const {
    if (k >= cols_.size() || n >= cols_[k].size()) return std::nullopt;
    return cols_[k][n];
}

ScalarEpsilonTable scalar_epsilon(std::span<const double> seq) {
    return ScalarEpsilonTable(seq);
}

LinearFunctional LinearFunctional::random(std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    DenseMat r(n, n);
    for (auto& v : r.values()) v = rng.normal();
    LinearFunctional y;
    y.weights_ = std::move(r);
    return y;
}

double LinearFunctional::operator()(const DenseMat& s) const {
    return weights_ ? fro_inner(*weights_, s) : trace(s);
}

EpsilonTable stea2_table(std::span<const DenseMat> seq, const LinearFunctional& y) {
    if (seq.empty()) throw DimensionError("extrapolation needs at least one term");
    for (const auto& s : seq)
        if (s.rows() != seq.front().rows() || s.cols() != seq.front().cols())
            throw DimensionError("extrapolation terms differ in shape");

    std::vector<double> scalars;
    scalars.reserve(seq.size());
    for (const auto& s : seq) scalars.push_back(y(s));

    EpsilonTable table{ScalarEpsilonTable(scalars), {}};
    const auto& eps = table.scalar;
    const std::size_t terms = seq.size();

    table.matrix_cols.emplace_back(seq.begin(), seq.end());
    for (std::size_t k = 0; 2 * k + 2 < terms; ++k) {
        const auto& cur = table.matrix_cols[k];
        std::vector<std::optional<DenseMat>> next(terms - 2 * k - 2);
        for (std::size_t n = 0; n < next.size(); ++n) {
            const auto top = eps.at(2 * k + 2, n);
            const auto e1 = eps.at(2 * k, n + 1);
            const auto e2 = eps.at(2 * k, n + 2);
            if (!top || !e1 || !e2 || !cur[n + 1] || !cur[n + 2]) continue;
            const auto den = safe_difference(*e1, *e2);
            if (!den) continue;
            const double coef = (*top - *e1) / *den;
            if (!std::isfinite(coef)) continue;
            DenseMat v = axpy(coef, *cur[n + 2] - *cur[n + 1], *cur[n + 1]);
            if (v.all_finite()) next[n] = std::move(v);
        }
        table.matrix_cols.push_back(std::move(next));
    }
    return table;
}

Extrapolation stea2_extrapolate(std::span<const DenseMat> seq, const LinearFunctional& y) {
    EpsilonTable table = stea2_table(seq, y);
    for (std::size_t j = table.matrix_cols.size(); j-- > 1;) {
        auto& col = table.matrix_cols[j];
        for (std::size_t n = col.size(); n-- > 0;)
            if (col[n]) return {std::move(*col[n]), 2 * j, true};
    }
    return {seq.back(), 0, false};
}

RunResult restarted_drive(MinCosIteration& it, const SteaConfig& stea, const SolverConfig& cfg) {
    cfg.validate();
    if (stea.ncycle < 1 || stea.mcol < 1)
        throw std::invalid_argument("ncycle and mcol must be positive");
    using clock = std::chrono::steady_clock;
    const auto start = clock::now();
    auto elapsed = [&] { return std::chrono::duration<double>(clock::now() - start).count(); };
    const std::size_t k0 = it.iteration();

    RunResult result;
    result.status = RunStatus::maxiter;
    auto done = [&] { return it.merit() <= cfg.eps || it.at_solution(); };

    bool stop = false;
    for (std::size_t cycle = 0; cycle < stea.ncycle && !stop; ++cycle) {
        if (done()) break;
        std::vector<DenseMat> terms{it.iterate()};
        for (std::size_t j = 0; j < stea.mcol; ++j) {
            if (done()) {
                stop = true;
                break;
            }
            if (it.iteration() >= cfg.maxiter) {
                stop = true;
                break;
            }
            try {
                ConvergenceRecord rec = it.step();
                rec.elapsed = elapsed();
                if (cfg.residual) rec.residual = it.residual();
                result.history.push_back(rec);
            } catch (const StagnationError& e) {
                result.status = RunStatus::stagnated;
                result.message = e.what();
            } catch (const DegenerateError& e) {
                result.status = RunStatus::degenerate;
                result.message = e.what();
            }
            if (result.status != RunStatus::maxiter) {
                if (!result.history.empty())
                    result.history.back().flags |= result.status == RunStatus::stagnated
                                                        ? Flag::stagnation
                                                        : Flag::degenerate;
                stop = true;
                break;
            }
            terms.push_back(it.iterate());
        }
        if (stop || done()) break;

        ConvergenceRecord rec;
        rec.k = it.iteration();
        rec.step_kind = StepKind::extrapolation;
        Extrapolation ex = stea2_extrapolate(terms, stea.functional);
        if (!ex.accelerated) {
            rec.flags |= Flag::no_acceleration;
        } else {
            try {
                auto projected = it.project(ex.value);
                if (projected.merit <= it.merit())
                    it.adopt(std::move(projected));
                else
                    rec.flags |= Flag::discarded;
            } catch (const DegenerateError&) {
                rec.flags |= Flag::discarded | Flag::degenerate;
            }
        }
        rec.merit = it.merit();
        rec.elapsed = elapsed();
        if (cfg.residual) rec.residual = it.residual();
        result.history.push_back(rec);
    }

    if (result.status == RunStatus::maxiter && done()) result.status = RunStatus::converged;
    if (result.status == RunStatus::maxiter && !result.history.empty())
        result.history.back().flags |= Flag::maxiter;

    result.x = it.iterate();
    result.final_merit = it.merit();
    result.iterations = it.iteration() - k0;
    result.elapsed = elapsed();
    return result;
}

} // namespace mincos
