#include "mincos/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

namespace mincos {

namespace {

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

bool blank(const std::string& line) {
    return std::all_of(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c); });
}

/// Next line that is neither a comment nor blank; false at end of input.
bool next_data_line(std::istream& in, std::string& line, std::size_t& lineno) {
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '%' || blank(line)) continue;
        return true;
    }
    return false;
}

template <typename T>
T parse_number(std::istringstream& fields, std::size_t lineno, const char* what) {
    T v{};
    if (!(fields >> v)) throw ParseError(std::string("expected ") + what, lineno);
    return v;
}

} // namespace

SparseOp read_matrix_market(std::istream& in) {
    std::string line;
    std::size_t lineno = 0;
    if (!std::getline(in, line)) throw ParseError("empty input", 0);
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();

    std::istringstream banner(line);
    std::string magic, object, format, field, symmetry;
    banner >> magic >> object >> format >> field >> symmetry;
    if (magic != "%%MatrixMarket") throw ParseError("missing %%MatrixMarket banner", lineno);
    object = lower(object);
    format = lower(format);
    field = lower(field);
    symmetry = lower(symmetry);
    if (object != "matrix") throw ParseError("unsupported object '" + object + "'", lineno);
    if (format != "coordinate" && format != "array")
        throw ParseError("unsupported format '" + format + "'", lineno);
    if (field != "real") throw ParseError("unsupported field '" + field + "'", lineno);
    if (symmetry != "general" && symmetry != "symmetric")
        throw ParseError("unsupported symmetry '" + symmetry + "'", lineno);
    const bool symmetric = symmetry == "symmetric";
    const bool coordinate = format == "coordinate";

    if (!next_data_line(in, line, lineno)) throw ParseError("missing size line", lineno);
    std::istringstream size_line(line);
    const auto rows = parse_number<std::size_t>(size_line, lineno, "row count");
    const auto cols = parse_number<std::size_t>(size_line, lineno, "column count");
    if (symmetric && rows != cols) throw ParseError("symmetric matrix must be square", lineno);

    std::vector<Triplet> entries;
    auto push = [&](std::size_t i, std::size_t j, double v) {
        entries.push_back({i, j, v});
        if (symmetric && i != j) entries.push_back({j, i, v});
    };

    if (coordinate) {
        const auto nnz = parse_number<std::size_t>(size_line, lineno, "entry count");
        entries.reserve(symmetric ? 2 * nnz : nnz);
        for (std::size_t e = 0; e < nnz; ++e) {
            if (!next_data_line(in, line, lineno))
                throw ParseError("expected " + std::to_string(nnz) + " entries, found " +
                                     std::to_string(e),
                                 lineno);
            std::istringstream f(line);
            const auto i = parse_number<std::size_t>(f, lineno, "row index");
            const auto j = parse_number<std::size_t>(f, lineno, "column index");
            const auto v = parse_number<double>(f, lineno, "value");
            if (i < 1 || i > rows || j < 1 || j > cols)
                throw ParseError("index (" + std::to_string(i) + "," + std::to_string(j) +
                                     ") out of range",
                                 lineno);
            push(i - 1, j - 1, v);
        }
    } else {
        // Column-major; symmetric arrays list the lower triangle only.
        for (std::size_t j = 0; j < cols; ++j)
            for (std::size_t i = symmetric ? j : 0; i < rows; ++i) {
                if (!next_data_line(in, line, lineno))
                    throw ParseError("array data ends early", lineno);
                std::istringstream f(line);
                const auto v = parse_number<double>(f, lineno, "value");
                if (v != 0.0) push(i, j, v);
            }
    }

    if (next_data_line(in, line, lineno)) throw ParseError("more entries than declared", lineno);
    return SparseOp(rows, cols, std::move(entries));
}

SparseOp read_matrix_market(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path.string(), 0);
    return read_matrix_market(in);
}

void write_matrix_market(std::ostream& out, const SparseOp& a) {
    out << "%%MatrixMarket matrix coordinate real general\n";
    out << a.rows() << ' ' << a.cols() << ' ' << a.nnz() << '\n';
    const auto ptr = a.row_extents();
    const auto col = a.column_indices();
    const auto val = a.values();
    out << std::setprecision(std::numeric_limits<double>::max_digits10);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t p = ptr[i]; p < ptr[i + 1]; ++p)
            out << i + 1 << ' ' << col[p] + 1 << ' ' << val[p] << '\n';
}

void write_matrix_market(const std::filesystem::path& path, const SparseOp& a) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path.string());
    write_matrix_market(out, a);
}

} // namespace mincos
