#include "mincos/accel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mincos {

double Rng::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    const double radius = std::sqrt(-2.0 * std::log(uniform()));
    const double angle = 2.0 * std::numbers::pi * uniform();
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
}

std::string to_string(AccelMode mode) {
    switch (mode) {
    case AccelMode::none: return "none";
    case AccelMode::random: return "random";
    case AccelMode::random_tstar: return "random-tstar";
    case AccelMode::abbmin: return "abbmin";
    case AccelMode::stea2: return "stea2";
    }
    return "unknown";
}

AccelMode parse_accel_mode(std::string_view name) {
    for (auto mode : {AccelMode::none, AccelMode::random, AccelMode::random_tstar,
                      AccelMode::abbmin, AccelMode::stea2})
        if (to_string(mode) == name) return mode;
    throw std::invalid_argument("unknown acceleration mode '" + std::string(name) + "'");
}

void SolverConfig::validate() const {
    if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
    if (maxiter < 1) throw std::invalid_argument("maxiter must be at least 1");
    if ((accel == AccelMode::random || accel == AccelMode::random_tstar) && !seed)
        throw std::invalid_argument("random acceleration requires a seed");
    if ((accel == AccelMode::random || accel == AccelMode::random_tstar) && !(eta > 0.0 && eta < 1.0))
        throw std::invalid_argument("eta must lie in (0, 1)");
    if (accel == AccelMode::abbmin && !(tau > 0.0 && tau < 1.0))
        throw std::invalid_argument("tau must lie in (0, 1)");
    if (accel == AccelMode::stea2 && (ncycle < 1 || mcol < 1))
        throw std::invalid_argument("ncycle and mcol must be positive");
}

AccelHook::AccelHook(Mode mode, std::uint64_t seed, double eta, bool use_tstar, double tau,
                     std::size_t window)
    : mode_(mode), eta_(eta), use_tstar_(use_tstar), tau_(tau), window_(window), rng_(seed) {}

AccelHook AccelHook::from_config(const SolverConfig& cfg) {
    switch (cfg.accel) {
    case AccelMode::random:
        return AccelHook(Mode::random, cfg.seed.value_or(0), cfg.eta, false);
    case AccelMode::random_tstar:
        return AccelHook(Mode::random, cfg.seed.value_or(0), cfg.eta, true);
    case AccelMode::abbmin:
        return AccelHook(Mode::abbmin, cfg.seed.value_or(0), cfg.eta, false, cfg.tau, cfg.window);
    case AccelMode::none:
    case AccelMode::stea2:
        break;
    }
    return AccelHook();
}

double AccelHook::relax_random(double alpha_opt) {
    return rng_.uniform(1.0 - eta_, 1.0 + eta_) * alpha_opt;
}

double AccelHook::relax_random_tstar(double alpha_opt, std::optional<double> t_star_val) {
    if (!t_star_val) return relax_random(alpha_opt);
    return rng_.uniform(0.0, *t_star_val) * alpha_opt;
}

SteplengthChoice AccelHook::abbmin_alpha(MinCosIteration& it, double alpha_opt) {
    const auto& prev_x = it.previous_iterate();
    const auto& prev_d = it.previous_direction();
    if (!prev_x || !prev_d) return {alpha_opt, StepKind::optimal};

    const DenseMat s = it.iterate() - *prev_x;
    const DenseMat y = it.direction() - *prev_d;
    const double ss = fro_inner(s, s);
    const double yy = fro_inner(y, y);
    const double sy = std::abs(fro_inner(s, y));
    const double tiny = degeneracy_threshold(s.rows(), s.cols());
    if (!(ss > tiny * tiny) || !(yy > tiny * tiny) ||
        !(sy > 1e3 * unit_roundoff * std::sqrt(ss * yy)))
        return {alpha_opt, StepKind::fallback};

    const double bb1 = ss / sy;
    const double bb2 = sy / yy;
    if (!std::isfinite(bb1) || !std::isfinite(bb2)) return {alpha_opt, StepKind::fallback};

    bb2_.push_back(bb2);
    while (bb2_.size() > window_ + 1) bb2_.pop_front();

    if (bb2 / bb1 < tau_) return {*std::min_element(bb2_.begin(), bb2_.end()), StepKind::abbmin};
    return {bb1, StepKind::abbmin};
}

SteplengthChoice AccelHook::steplength(MinCosIteration& it, double alpha_opt) {
    // The alpha -> inf limit jumps straight to the direction; nothing to relax.
    if (std::isinf(alpha_opt)) return {alpha_opt, StepKind::optimal};
    switch (mode_) {
    case Mode::none:
        return {alpha_opt, StepKind::optimal};
    case Mode::random:
        if (use_tstar_)
            return {relax_random_tstar(alpha_opt, t_star(it.factors(), alpha_opt)), StepKind::random};
        return {relax_random(alpha_opt), StepKind::random};
    case Mode::abbmin:
        return abbmin_alpha(it, alpha_opt);
    }
    return {alpha_opt, StepKind::optimal};
}

} // namespace mincos
