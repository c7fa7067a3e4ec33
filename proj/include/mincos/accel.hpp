#pragma once

#include <cstddef>
#include <deque>
#include <optional>

#include "mincos/config.hpp"
#include "mincos/iteration.hpp"
#include "mincos/rng.hpp"

namespace mincos {

/// Steplength chosen for one step and how it was obtained.
struct SteplengthChoice {
    double alpha;
    StepKind kind;
};

/**
 * In-loop steplength modification.
 *
 *  - none:   the exact line-search steplength.
 *  - random: alpha * theta, theta ~ U(1 - eta, 1 + eta); with `use_tstar`,
 *            theta ~ U(0, t*) whenever the second root t* of phi exists.
 *  - abbmin: adaptive Barzilai-Borwein rule. With S = X_k - X_{k-1} and
 *            Y = D_k - D_{k-1},
 *              BB1 = ||S||^2 / |<S,Y>|,  BB2 = |<S,Y>| / ||Y||^2,
 *            the step is min of the last M+1 BB2 values when BB2/BB1 < tau,
 *            BB1 otherwise.
 *
 * Absolute values are taken because D is a descent direction, so <S,Y> is
 * usually negative. The hook owns its random stream.
 */
class AccelHook {
public:
    enum class Mode { none, random, abbmin };

    AccelHook() = default;
    AccelHook(Mode mode, std::uint64_t seed, double eta = 0.5, bool use_tstar = false,
              double tau = 0.8, std::size_t window = 10);

    /// Hook matching an accel mode of a SolverConfig (stea2 maps to none).
    static AccelHook from_config(const SolverConfig& cfg);

    Mode mode() const noexcept { return mode_; }

    SteplengthChoice steplength(MinCosIteration& it, double alpha_opt);

    double relax_random(double alpha_opt);
    double relax_random_tstar(double alpha_opt, std::optional<double> t_star_val);

    /// ABBmin steplength; falls back to alpha_opt (kind fallback) when the BB
    /// quotients are undefined, or returns alpha_opt (kind optimal) at k = 0.
    SteplengthChoice abbmin_alpha(MinCosIteration& it, double alpha_opt);

    const std::deque<double>& bb2_history() const noexcept { return bb2_; }

private:
    Mode mode_ = Mode::none;
    double eta_ = 0.5;
    bool use_tstar_ = false;
    double tau_ = 0.8;
    std::size_t window_ = 10;
    Rng rng_{0};
    std::deque<double> bb2_;
};

} // namespace mincos
