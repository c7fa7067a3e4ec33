#pragma once

#include <filesystem>
#include <iosfwd>

#include "mincos/matcore.hpp"

namespace mincos {

/**
 * Matrix Market reader for real matrices.
 *
 * Accepts `coordinate` and `array` formats with the `general` or `symmetric`
 * qualifier; symmetric input is expanded to full storage. Lines starting
 * with '%' after the banner are skipped. Malformed input raises ParseError
 * carrying the offending line number.
 */
SparseOp read_matrix_market(std::istream& in);
SparseOp read_matrix_market(const std::filesystem::path& path);

/// Coordinate/real/general, 1-based, values printed with 17 significant digits.
void write_matrix_market(std::ostream& out, const SparseOp& a);
void write_matrix_market(const std::filesystem::path& path, const SparseOp& a);

} // namespace mincos
