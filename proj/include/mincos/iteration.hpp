#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

#include "mincos/matcore.hpp"

namespace mincos {

enum class StepKind { optimal, random, abbmin, extrapolation, fallback };

std::string to_string(StepKind kind);

/// Event tags attached to a history row. Combined as a bit set.
enum class Flag : std::uint32_t {
    none = 0,
    sign_flip = 1u << 0,       // s = -1 in the sphere projection
    stagnation = 1u << 1,      // steplength denominator vanished
    no_acceleration = 1u << 2, // extrapolation produced no valid column
    maxiter = 1u << 3,
    degenerate = 1u << 4,      // projection of a numerically zero matrix
    zero_direction = 1u << 5,  // D ~ 0, iterate is the solution
    discarded = 1u << 6,       // extrapolated matrix rejected, base iterate kept
};

constexpr Flag operator|(Flag a, Flag b) {
    return static_cast<Flag>(static_cast<std::uint32_t>(a) | static_cast<std::uint32_t>(b));
}
constexpr Flag& operator|=(Flag& a, Flag b) { return a = a | b; }
constexpr bool has(Flag set, Flag f) {
    return (static_cast<std::uint32_t>(set) & static_cast<std::uint32_t>(f)) != 0;
}

/// Tags joined with '|', empty for Flag::none.
std::string to_string(Flag flags);

/// One row of a convergence history.
struct ConvergenceRecord {
    std::size_t k = 0;
    double merit = 0.0;
    double alpha = 0.0;
    StepKind step_kind = StepKind::optimal;
    double elapsed = 0.0;
    Flag flags = Flag::none;
    std::optional<double> residual;
};

/// Scalars shared by the steplength, t* and the merit along the search line.
/// With image(X) = XA (or X A^T A) and image(D) likewise:
struct LineFactors {
    double w = 0;      // <image(X), I>
    double di = 0;     // <image(D), I>
    double xd = 0;     // <image(X), image(D)>
    double dd = 0;     // ||image(D)||^2
    double sphere = 0; // ||image(X)||^2, equal to n after the first projection
};

/// Exact minimizer of alpha -> 1 - cos(image(X) + alpha image(D), I).
/// Returns +inf when the merit decreases all along the ray (image(D) closer to
/// I than image(X), no finite stationary point); step() then moves to the
/// projection of D. Throws StagnationError when the line is degenerate.
double optimal_steplength(const LineFactors& f);

/// Second root t* > 1 of phi(t) = F(X + t alpha D) - F(X), if any.
std::optional<double> t_star(const LineFactors& f, double alpha);

/**
 * Shared state and step logic of the two MinCos iterations.
 *
 * A derived class supplies the image map Z -> Z A (square SPD case) or
 * Z -> (A Z)^T A (least-squares case) and the per-iterate preparation of the
 * search direction. Everything downstream of the line factors (steplength,
 * sign fix, projection onto ||image(X)||_F = sqrt(n)) lives here so both
 * iterations behave identically for the accelerators and the extrapolation
 * driver.
 */
class MinCosIteration {
public:
    virtual ~MinCosIteration() = default;

    std::size_t order() const noexcept { return n_; }
    std::size_t iteration() const noexcept { return k_; }
    const DenseMat& iterate() const noexcept { return x_; }
    double merit() const noexcept { return merit_; }
    bool symmetrize() const noexcept { return symmetrize_; }

    const DenseMat& direction() { return prepared().direction; }
    const LineFactors& factors() { return prepared().factors; }

    /// True when ||D||_F is at or below the degeneracy threshold, or when the
    /// merit is at that level and image(D) is parallel to image(X).
    bool at_solution();

    double optimal_alpha() { return optimal_steplength(factors()); }

    /// One MinCos step with the exact steplength, or `alpha_override` when given.
    /// At the solution the state is left untouched and the record carries
    /// Flag::zero_direction.
    ConvergenceRecord step(std::optional<double> alpha_override = std::nullopt);

    struct Projection {
        DenseMat x;
        double merit;
    };

    /// Sign-fixed projection of `candidate` (symmetrized first when the
    /// iteration symmetrizes) onto the constraint sphere. Throws DegenerateError.
    Projection project(const DenseMat& candidate) const;

    /// Restarts from a projected iterate. The counter k is unchanged.
    void adopt(Projection p);
    void adopt(const DenseMat& candidate) { adopt(project(candidate)); }

    const std::optional<DenseMat>& previous_iterate() const noexcept { return prev_x_; }
    const std::optional<DenseMat>& previous_direction() const noexcept { return prev_d_; }

    /// image(Z) recomputed from scratch.
    virtual DenseMat image(const DenseMat& z) const = 0;

    /// ||image(X) - I||_F / sqrt(n).
    double residual() const;

protected:
    MinCosIteration(std::size_t n, DenseMat x0, bool symmetrize);

    struct Prepared {
        DenseMat direction;
        DenseMat image_x;
        DenseMat image_d;
        LineFactors factors;
    };

    virtual Prepared prepare() const = 0;

    /// image(Z) for Z = X + alpha D (after optional symmetrization).
    virtual DenseMat step_image(const DenseMat& z, double alpha, const Prepared& p) const;

    /// Caller must set merit after construction via reset_merit().
    void reset_merit();

private:
    Prepared& prepared();

    std::size_t n_;
    bool symmetrize_;
    DenseMat x_;
    std::size_t k_ = 0;
    double merit_ = 0.0;
    std::optional<Prepared> cache_;
    std::optional<DenseMat> prev_x_;
    std::optional<DenseMat> prev_d_;
};

} // namespace mincos
