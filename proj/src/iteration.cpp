#include "mincos/iteration.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mincos {

std::string to_string(StepKind kind) {
    switch (kind) {
    case StepKind::optimal: return "optimal";
    case StepKind::random: return "random";
    case StepKind::abbmin: return "abbmin";
    case StepKind::extrapolation: return "extrapolation";
    case StepKind::fallback: return "fallback";
    }
    return "unknown";
}

std::string to_string(Flag flags) {
    static constexpr std::pair<Flag, const char*> names[] = {
        {Flag::sign_flip, "sign-flip"},   {Flag::stagnation, "stagnation"},
        {Flag::no_acceleration, "no-acceleration"}, {Flag::maxiter, "maxiter"},
        {Flag::degenerate, "degenerate"}, {Flag::zero_direction, "zero-direction"},
        {Flag::discarded, "discarded"},
    };
    std::string out;
    for (const auto& [flag, name] : names) {
        if (!has(flags, flag)) continue;
        if (!out.empty()) out += '|';
        out += name;
    }
    return out;
}

double optimal_steplength(const LineFactors& f) {
    // d/dalpha of (w + alpha di) / sqrt(sphere + 2 alpha xd + alpha^2 dd) vanishes at
    // alpha = -(sphere di - w xd) / (di xd - w dd).
    const double num = f.sphere * f.di - f.w * f.xd;
    const double den = f.di * f.xd - f.w * f.dd;
    const double tol = 1e3 * unit_roundoff;
    if (!(std::abs(den) > tol * (std::abs(f.di * f.xd) + std::abs(f.w * f.dd)))) {
        // No finite stationary point. If the line is not degenerate and the
        // cosine keeps growing, the infimum is the limit alpha -> inf, i.e. the
        // direction itself.
        const bool flat = !(std::abs(num) > tol * (std::abs(f.sphere * f.di) + std::abs(f.w * f.xd)));
        if (!flat && f.dd > 0.0 && f.sphere > 0.0 &&
            f.di / std::sqrt(f.dd) > f.w / std::sqrt(f.sphere) * (1.0 + tol))
            return std::numeric_limits<double>::infinity();
        throw StagnationError("steplength denominator vanished (" + std::to_string(den) + ")");
    }
    const double alpha = std::abs(num / den);
    if (!(alpha > 0.0) || !std::isfinite(alpha))
        throw StagnationError("steplength is not a positive finite number");
    return alpha;
}

std::optional<double> t_star(const LineFactors& f, double alpha) {
    // phi(t) = 0 with t != 0, from sphere (w + t a di)^2 = w^2 (sphere + 2 t a xd + t^2 a^2 dd).
    const double w2 = f.w * f.w;
    const double num = 2.0 * f.w * (f.sphere * f.di - f.w * f.xd);
    const double den = alpha * (w2 * f.dd - f.sphere * f.di * f.di);
    const double scale = alpha * (std::abs(w2 * f.dd) + std::abs(f.sphere * f.di * f.di));
    if (!(std::abs(den) > 1e3 * unit_roundoff * scale)) return std::nullopt;
    const double t = num / den;
    if (!std::isfinite(t) || !(t > 1.0)) return std::nullopt;
    // Squaring admits a root where the cosine changes sign; reject it.
    if (!(f.w + t * alpha * f.di > 0.0)) return std::nullopt;
    return t;
}

MinCosIteration::MinCosIteration(std::size_t n, DenseMat x0, bool symmetrize)
    : n_(n), symmetrize_(symmetrize), x_(std::move(x0)) {
    if (x_.rows() != n || x_.cols() != n)
        throw DimensionError("initial iterate must be " + std::to_string(n) + "x" +
                             std::to_string(n));
}

void MinCosIteration::reset_merit() {
    merit_ = mincos::merit(image(x_));
}

MinCosIteration::Prepared& MinCosIteration::prepared() {
    if (!cache_) cache_ = prepare();
    return *cache_;
}

bool MinCosIteration::at_solution() {
    if (fro_norm(direction()) <= degeneracy_threshold(n_, 1)) return true;
    // Off the sphere, image(X) proportional to I leaves D != 0 but parallel to
    // X in image space: the search line only rescales X.
    const LineFactors& f = factors();
    const double tol = 1e3 * unit_roundoff;
    return merit_ <= degeneracy_threshold(n_, 1) &&
           f.sphere * f.dd - f.xd * f.xd <= tol * f.sphere * f.dd;
}

DenseMat MinCosIteration::step_image(const DenseMat& z, double, const Prepared&) const {
    return image(z);
}

ConvergenceRecord MinCosIteration::step(std::optional<double> alpha_override) {
    Prepared& p = prepared();
    ConvergenceRecord rec;
    rec.k = k_;
    rec.merit = merit_;
    if (at_solution()) {
        rec.flags = Flag::zero_direction;
        return rec;
    }

    const double alpha = alpha_override ? *alpha_override : optimal_steplength(p.factors);
    if (!(alpha > 0.0)) throw StagnationError("steplength must be positive");
    // alpha = inf is the limit of the normalized X + alpha D, i.e. D itself.
    const bool limit = std::isinf(alpha);
    DenseMat z = limit ? p.direction : axpy(alpha, p.direction, x_);
    if (symmetrize_) z = sym_part(z);
    const DenseMat z_image = limit ? image(z) : step_image(z, alpha, p);

    const double norm = fro_norm(z_image);
    const double tr = trace(z_image);
    if (!(norm > degeneracy_threshold(n_, n_)) || !std::isfinite(norm))
        throw DegenerateError("step produced a numerically zero image (norm " +
                              std::to_string(norm) + ")");
    const double s = tr > 0.0 ? 1.0 : -1.0;
    const double root_n = std::sqrt(static_cast<double>(n_));
    z *= s * root_n / norm;
    if (!z.all_finite()) throw DegenerateError("step produced non-finite entries");

    prev_x_ = std::move(x_);
    prev_d_ = std::move(p.direction);
    cache_.reset();
    x_ = std::move(z);
    ++k_;
    merit_ = std::clamp(1.0 - s * tr / (root_n * norm), 0.0, 2.0);

    rec.k = k_;
    rec.merit = merit_;
    rec.alpha = alpha;
    if (s < 0) rec.flags |= Flag::sign_flip;
    return rec;
}

MinCosIteration::Projection MinCosIteration::project(const DenseMat& candidate) const {
    DenseMat z = symmetrize_ ? sym_part(candidate) : candidate;
    const DenseMat z_image = image(z);
    const double norm = fro_norm(z_image);
    if (!(norm > degeneracy_threshold(n_, n_)) || !std::isfinite(norm) || !z.all_finite())
        throw DegenerateError("candidate iterate is numerically zero or non-finite");
    const double tr = trace(z_image);
    const double s = tr > 0.0 ? 1.0 : -1.0;
    const double root_n = std::sqrt(static_cast<double>(n_));
    z *= s * root_n / norm;
    return {std::move(z), std::clamp(1.0 - s * tr / (root_n * norm), 0.0, 2.0)};
}

void MinCosIteration::adopt(Projection p) {
    if (p.x.rows() != n_ || p.x.cols() != n_)
        throw DimensionError("adopted iterate has the wrong shape");
    x_ = std::move(p.x);
    merit_ = p.merit;
    cache_.reset();
    prev_x_.reset();
    prev_d_.reset();
}

double MinCosIteration::residual() const {
    DenseMat r = image(x_);
    for (std::size_t i = 0; i < n_; ++i) r(i, i) -= 1.0;
    return fro_norm(r) / std::sqrt(static_cast<double>(n_));
}

} // namespace mincos
