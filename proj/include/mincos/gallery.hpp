#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

#include "mincos/matcore.hpp"

namespace mincos::gallery {

/// 5-point Dirichlet Laplacian on a g x g grid, n = g^2.
SparseOp poisson2d(std::size_t g);
/// 7-point Dirichlet Laplacian on a g x g x g grid, n = g^3.
SparseOp poisson3d(std::size_t g);

/**
 * Consistent mass matrix of an N x N grid of 8-node serendipity elements,
 * n = 3N^2 + 4N + 1. Each element matrix is scaled by a density 100 * u
 * with u ~ U(0, 1) drawn from Rng(seed), elements visited row of elements by
 * row of elements.
 */
SparseOp wathen(std::size_t blocks, std::uint64_t seed = 1);

/// L_ij = min(i, j) / max(i, j), 1-based indices.
DenseMat lehmer(std::size_t n);

/// i.i.d. standard normal entries, row-major order, from Rng(seed).
DenseMat randn_mat(std::size_t m, std::size_t n, std::uint64_t seed);

enum class MatrixKind { poisson2d, poisson3d, wathen, lehmer, randn, mtx_file };

std::string to_string(MatrixKind kind);

/// Recipe for a test matrix. `size` is the grid side (poisson), the block
/// count (wathen) or n (lehmer, randn).
struct MatrixSpec {
    MatrixKind kind = MatrixKind::poisson2d;
    std::size_t size = 0;
    std::optional<std::size_t> m; // randn rows
    std::optional<std::string> path;
    std::optional<std::uint64_t> seed;

    /// Throws std::invalid_argument unless exactly the parameters used by `kind` are set.
    void validate() const;
    std::string describe() const;
};

/**
 * Materializes a spec as a sparse operator. randn matrices are oriented so
 * that the larger dimension is the row count, as the least-squares
 * iteration requires m >= n.
 */
SparseOp build(const MatrixSpec& spec);

} // namespace mincos::gallery
