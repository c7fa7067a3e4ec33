#pragma once

#include "mincos/iteration.hpp"

namespace mincos {

/**
 * MinCos for a square SPD operator A: minimizes F(X) = 1 - cos(XA, I) and
 * converges to A^{-1}.
 *
 * Each step forms XA and DA once (two products with A) and reuses them for
 * w, the steplength and the projection Z A = XA + alpha DA. With
 * `symmetrize` set, Z is replaced by (Z + Z^T)/2 and ZA is recomputed.
 * SPD-ness of A is the caller's responsibility.
 */
class MinCosSolver final : public MinCosIteration {
public:
    /// X0 = (sqrt(n) / ||A||_F) I.
    explicit MinCosSolver(SparseOp a, bool symmetrize = false);
    /// Starts from an explicit X0 (used as given, not projected).
    MinCosSolver(SparseOp a, DenseMat x0, bool symmetrize = false);

    const SparseOp& op() const noexcept { return a_; }

    static double initial_scale(const SparseOp& a);

    DenseMat image(const DenseMat& z) const override;

protected:
    Prepared prepare() const override;
    DenseMat step_image(const DenseMat& z, double alpha, const Prepared& p) const override;

private:
    SparseOp a_;
};

/// -(1/n)((w/n) M - I) for the n x n image M of the current iterate.
DenseMat mincos_direction(const DenseMat& image_x, double w);

} // namespace mincos
