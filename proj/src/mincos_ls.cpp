#include "mincos/mincos_ls.hpp"

#include <cmath>

#include "mincos/mincos.hpp"

namespace mincos {

namespace {

const SparseOp& checked_tall(const SparseOp& a) {
    if (a.cols() == 0 || a.rows() < a.cols())
        throw DimensionError("MinCos-LS needs m >= n >= 1, got " + std::to_string(a.rows()) +
                             "x" + std::to_string(a.cols()));
    return a;
}

} // namespace

double MinCosLSSolver::initial_scale(const SparseOp& a) {
    checked_tall(a);
    const double norm = a.fro_norm();
    if (!(norm > degeneracy_threshold(a.rows(), a.cols())))
        throw DegenerateError("MinCos-LS: ||A||_F is numerically zero");
    return std::sqrt(static_cast<double>(a.cols())) / (norm * norm);
}

MinCosLSSolver::MinCosLSSolver(SparseOp a)
    : MinCosLSSolver(a, initial_scale(a) * DenseMat::identity(a.cols())) {}

MinCosLSSolver::MinCosLSSolver(SparseOp a, DenseMat x0)
    : MinCosIteration(checked_tall(a).cols(), std::move(x0), true), a_(std::move(a)) {
    reset_merit();
}

DenseMat MinCosLSSolver::image(const DenseMat& z) const {
    return rmul(transpose(spmm(a_, z)), a_);
}

MinCosIteration::Prepared MinCosLSSolver::prepare() const {
    Prepared p;
    const DenseMat c = spmm(a_, iterate());
    const double w = fro_inner(c, a_);
    p.image_x = rmul(transpose(c), a_);
    p.direction = mincos_direction(p.image_x, w);
    const DenseMat b = spmm(a_, p.direction);
    p.image_d = rmul(transpose(b), a_);
    p.factors = {.w = w,
                 .di = fro_inner(b, a_),
                 .xd = fro_inner(p.image_d, p.image_x),
                 .dd = fro_inner(p.image_d, p.image_d),
                 .sphere = fro_inner(p.image_x, p.image_x)};
    return p;
}

double MinCosLSSolver::direction_asymmetry() {
    const DenseMat& d = direction();
    return fro_norm(d - transpose(d));
}

} // namespace mincos
