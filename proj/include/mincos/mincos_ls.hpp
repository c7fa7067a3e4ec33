#pragma once

#include "mincos/iteration.hpp"

namespace mincos {

/**
 * MinCos for the normal equations of a full-column-rank m x n operator A
 * (m >= n): minimizes 1 - cos(X A^T A, I) and converges to (A^T A)^{-1}.
 *
 * Only products with A are used. Every trace involving A^T A is regrouped
 * around the dense products C = AX and B = AD:
 *   <X A^T A, I> = <C, A>,  <D A^T A, I> = <B, A>,
 *   <X A^T A, D A^T A> = <B^T A, C^T A>,  ||Y A^T A||_F = ||(A Y)^T A||_F,
 * which hold for symmetric X and D. Z is symmetrized every step to keep
 * X symmetric.
 */
class MinCosLSSolver final : public MinCosIteration {
public:
    /// X0 = (sqrt(n) / ||A||_F^2) I.
    explicit MinCosLSSolver(SparseOp a);
    MinCosLSSolver(SparseOp a, DenseMat x0);

    const SparseOp& op() const noexcept { return a_; }

    static double initial_scale(const SparseOp& a);

    /// (A Z)^T A, which equals Z A^T A for symmetric Z.
    DenseMat image(const DenseMat& z) const override;

    /// ||D - D^T||_F of the current direction; zero in exact arithmetic.
    double direction_asymmetry();

protected:
    Prepared prepare() const override;

private:
    SparseOp a_;
};

} // namespace mincos
