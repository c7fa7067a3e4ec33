#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace mincos {

enum class AccelMode { none, random, random_tstar, abbmin, stea2 };

std::string to_string(AccelMode mode);
/// Accepts "none", "random", "random-tstar", "abbmin", "stea2".
AccelMode parse_accel_mode(std::string_view name);

/// Parameters of one solver run.
struct SolverConfig {
    double eps = 1e-10;
    std::size_t maxiter = 1000;
    AccelMode accel = AccelMode::none;
    double eta = 0.5;                  // random relaxation half-width
    std::optional<std::uint64_t> seed; // required by the random modes
    double tau = 0.8;                  // ABBmin ratio threshold
    std::size_t window = 10;           // ABBmin memory M
    std::size_t ncycle = 8;            // extrapolation cycles
    std::size_t mcol = 8;              // base steps per cycle
    bool symmetrize = false;
    bool residual = false;             // log ||image(X) - I||_F / sqrt(n) per row

    /// Throws std::invalid_argument when a parameter is out of range or a
    /// parameter required by the acceleration mode is missing.
    void validate() const;
};

} // namespace mincos
