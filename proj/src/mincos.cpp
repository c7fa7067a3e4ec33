#include "mincos/mincos.hpp"

#include <cmath>

namespace mincos {

namespace {

const SparseOp& checked_square(const SparseOp& a) {
    if (!a.square() || a.rows() == 0)
        throw DimensionError("MinCos needs a square operator, got " + std::to_string(a.rows()) +
                             "x" + std::to_string(a.cols()));
    return a;
}

} // namespace

DenseMat mincos_direction(const DenseMat& image_x, double w) {
    const std::size_t n = image_x.rows();
    const double inv_n = 1.0 / static_cast<double>(n);
    DenseMat d = (-inv_n * w * inv_n) * image_x;
    for (std::size_t i = 0; i < n; ++i) d(i, i) += inv_n;
    return d;
}

double MinCosSolver::initial_scale(const SparseOp& a) {
    checked_square(a);
    const double norm = a.fro_norm();
    if (!(norm > degeneracy_threshold(a.rows(), a.cols())))
        throw DegenerateError("MinCos: ||A||_F is numerically zero");
    return std::sqrt(static_cast<double>(a.rows())) / norm;
}

MinCosSolver::MinCosSolver(SparseOp a, bool symmetrize)
    : MinCosSolver(a, initial_scale(a) * DenseMat::identity(a.rows()), symmetrize) {}

MinCosSolver::MinCosSolver(SparseOp a, DenseMat x0, bool symmetrize)
    : MinCosIteration(checked_square(a).rows(), std::move(x0), symmetrize), a_(std::move(a)) {
    reset_merit();
}

DenseMat MinCosSolver::image(const DenseMat& z) const {
    return rmul(z, a_);
}

MinCosIteration::Prepared MinCosSolver::prepare() const {
    Prepared p;
    p.image_x = rmul(iterate(), a_);
    const double w = trace(p.image_x);
    p.direction = mincos_direction(p.image_x, w);
    p.image_d = rmul(p.direction, a_);
    p.factors = {.w = w,
                 .di = trace(p.image_d),
                 .xd = fro_inner(p.image_x, p.image_d),
                 .dd = fro_inner(p.image_d, p.image_d),
                 .sphere = fro_inner(p.image_x, p.image_x)};
    return p;
}

DenseMat MinCosSolver::step_image(const DenseMat& z, double alpha, const Prepared& p) const {
    if (symmetrize()) return image(z);
    return axpy(alpha, p.image_d, p.image_x);
}

} // namespace mincos
