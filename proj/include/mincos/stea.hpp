#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "mincos/config.hpp"
#include "mincos/driver.hpp"
#include "mincos/iteration.hpp"

namespace mincos {

/**
 * Scalar epsilon-algorithm table.
 *
 *   eps_{-1}^(n) = 0,  eps_0^(n) = s_n,
 *   eps_{k+1}^(n) = eps_{k-1}^(n+1) + 1 / (eps_k^(n+1) - eps_k^(n)).
 *
 * Column k holds N - k entries. An entry whose difference is at the
 * cancellation level of its operands is left empty, and so is every entry
 * depending on it.
 */
class ScalarEpsilonTable {
public:
    explicit ScalarEpsilonTable(std::span<const double> seq);

    std::size_t terms() const noexcept { return terms_; }
    std::size_t columns() const noexcept { return cols_.size(); }
    /// Empty when (k, n) lies outside the table or was not computable.
    std::optional<double> at(std::size_t k, std::size_t n) const;

private:
    std::size_t terms_;
    std::vector<std::vector<std::optional<double>>> cols_;
};

ScalarEpsilonTable scalar_epsilon(std::span<const double> seq);

/// Linear functional y(S) = <R, S>_F used to pair the matrix sequence with
/// the scalar table. Default R = I, i.e. y(S) = trace(S).
class LinearFunctional {
public:
    LinearFunctional() = default;
    /// R with i.i.d. standard normal entries from Rng(seed).
    static LinearFunctional random(std::size_t n, std::uint64_t seed);

    double operator()(const DenseMat& s) const;

private:
    std::optional<DenseMat> weights_;
};

/// Full topological table of one extrapolation: the scalar epsilon table of
/// y(S_n) plus the even matrix columns (matrix_cols[j] holds column 2j).
struct EpsilonTable {
    ScalarEpsilonTable scalar;
    std::vector<std::vector<std::optional<DenseMat>>> matrix_cols;
};

/// Second simplified topological epsilon-algorithm:
///   E_{2k+2}^(n) = E_{2k}^(n+1) + (eps_{2k+2}^(n) - eps_{2k}^(n+1)) /
///                  (eps_{2k}^(n+2) - eps_{2k}^(n+1)) * (E_{2k}^(n+2) - E_{2k}^(n+1)),
/// with E_0^(n) = S_n.
EpsilonTable stea2_table(std::span<const DenseMat> seq, const LinearFunctional& y);

struct Extrapolation {
    DenseMat value;
    std::size_t column = 0;   // even column the value was read from, 0 if none
    bool accelerated = false; // false: no column >= 2 was valid, value is the last term
};

/// Deepest valid even column, latest entry within it.
Extrapolation stea2_extrapolate(std::span<const DenseMat> seq,
                                const LinearFunctional& y = LinearFunctional());

struct SteaConfig {
    std::size_t ncycle = 8;
    std::size_t mcol = 8;
    LinearFunctional functional;

    std::size_t max_column() const noexcept { return 2 * (mcol / 2); }
};

/**
 * Restarted extrapolation. Each cycle advances the base iteration mcol
 * steps from the current iterate, extrapolates the mcol + 1 collected
 * matrices, and restarts from the sign-fixed sphere projection of the
 * extrapolate. A projected extrapolate with a larger merit than the last
 * base iterate is discarded (Flag::discarded) and the cycle restarts from the
 * base iterate. Stops as soon as merit <= eps, after ncycle cycles, or when
 * the iteration counter reaches cfg.maxiter.
 *
 * History: one row per base step and one `extrapolation` row per cycle end,
 * carrying the base iteration count reached so far.
 */
RunResult restarted_drive(MinCosIteration& it, const SteaConfig& stea, const SolverConfig& cfg);

} // namespace mincos
