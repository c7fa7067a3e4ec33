#pragma once

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <span>
#include <vector>

#include "mincos/errors.hpp"

namespace mincos {

/// Unit roundoff of IEEE double precision (2^-53).
inline constexpr double unit_roundoff = std::numeric_limits<double>::epsilon() / 2;

/// Scale-aware zero test used throughout: a Frobenius norm of a rows x cols
/// matrix at or below this value is treated as zero.
inline double degeneracy_threshold(std::size_t rows, std::size_t cols) {
    return 1e3 * unit_roundoff * std::sqrt(static_cast<double>(rows * cols));
}

/**
 * Row-major dense matrix of doubles.
 *
 * Holds iterates, search directions and the small n x n images X*A that the
 * MinCos iterations work with. The approximate inverses are dense even when
 * A is sparse, so no sparsity is attempted here.
 */
class DenseMat {
public:
    DenseMat() = default;
    DenseMat(std::size_t rows, std::size_t cols, double fill = 0.0);
    DenseMat(std::size_t rows, std::size_t cols, std::vector<double> values);
    DenseMat(std::initializer_list<std::initializer_list<double>> rows);

    static DenseMat identity(std::size_t n);
    static DenseMat diagonal(std::span<const double> diag);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool square() const noexcept { return rows_ == cols_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<double> values() noexcept { return data_; }
    std::span<const double> values() const noexcept { return data_; }
    std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

    bool all_finite() const noexcept;

    DenseMat& operator*=(double s);

    friend bool operator==(const DenseMat&, const DenseMat&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

struct Triplet {
    std::size_t row;
    std::size_t col;
    double value;
};

/**
 * Read-only compressed sparse row operator.
 *
 * The only products exposed are A*X (spmm) and P*A (rmul, dense times sparse
 * from the right); there is deliberately no transposed product, so code that
 * needs A^T A has to regroup traces around products with A.
 */
class SparseOp {
public:
    SparseOp() = default;

    /// Builds from unordered triplets; duplicates are summed and explicit zeros kept.
    SparseOp(std::size_t rows, std::size_t cols, std::vector<Triplet> entries);

    static SparseOp from_dense(const DenseMat& dense);
    static SparseOp identity(std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t nnz() const noexcept { return values_.size(); }
    bool square() const noexcept { return rows_ == cols_; }

    std::span<const std::size_t> row_extents() const noexcept { return row_ptr_; }
    std::span<const std::size_t> column_indices() const noexcept { return col_idx_; }
    std::span<const double> values() const noexcept { return values_; }

    DenseMat to_dense() const;
    double fro_norm() const;

    friend bool operator==(const SparseOp&, const SparseOp&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<std::size_t> row_ptr_{0};
    std::vector<std::size_t> col_idx_;
    std::vector<double> values_;
};

// Frobenius geometry.

double fro_inner(const DenseMat& p, const DenseMat& q);
/// <P, A>_F against a sparse operator, touching only the stored entries of A.
double fro_inner(const DenseMat& p, const SparseOp& a);
double fro_norm(const DenseMat& p);
double trace(const DenseMat& p);

/// cos(M, I) = trace(M) / (sqrt(n) ||M||_F). Throws DegenerateError when M ~ 0.
double cosine_to_identity(const DenseMat& m);
/// 1 - cosine_to_identity(m), in [0, 2].
double merit(const DenseMat& m);

// Kernels.

DenseMat spmm(const SparseOp& a, const DenseMat& x);
/// P * A, i.e. dense rows combined with rows of the sparse operator.
DenseMat rmul(const DenseMat& p, const SparseOp& a);
DenseMat matmul(const DenseMat& p, const DenseMat& q);
DenseMat transpose(const DenseMat& p);
DenseMat sym_part(const DenseMat& p);
/// alpha * P + Q.
DenseMat axpy(double alpha, const DenseMat& p, const DenseMat& q);
DenseMat operator-(const DenseMat& p, const DenseMat& q);
DenseMat operator+(const DenseMat& p, const DenseMat& q);
DenseMat operator*(double s, DenseMat p);

} // namespace mincos
