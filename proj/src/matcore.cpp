#include "mincos/matcore.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace mincos {

namespace {

std::string shape(std::size_t r, std::size_t c) {
    return std::to_string(r) + "x" + std::to_string(c);
}

void require_same_shape(const DenseMat& p, const DenseMat& q, const char* op) {
    if (p.rows() != q.rows() || p.cols() != q.cols())
        throw DimensionError(std::string(op) + ": shape mismatch " + shape(p.rows(), p.cols()) +
                             " vs " + shape(q.rows(), q.cols()));
}

} // namespace

DenseMat::DenseMat(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

DenseMat::DenseMat(std::size_t rows, std::size_t cols, std::vector<double> values)
    : rows_(rows), cols_(cols), data_(std::move(values)) {
    if (data_.size() != rows * cols)
        throw DimensionError("DenseMat: " + std::to_string(data_.size()) +
                             " values for shape " + shape(rows, cols));
}

DenseMat::DenseMat(std::initializer_list<std::initializer_list<double>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw DimensionError("DenseMat: ragged initializer");
        data_.insert(data_.end(), r.begin(), r.end());
    }
}

DenseMat DenseMat::identity(std::size_t n) {
    DenseMat id(n, n);
    for (std::size_t i = 0; i < n; ++i) id(i, i) = 1.0;
    return id;
}

DenseMat DenseMat::diagonal(std::span<const double> diag) {
    DenseMat d(diag.size(), diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) d(i, i) = diag[i];
    return d;
}

bool DenseMat::all_finite() const noexcept {
    return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
}

DenseMat& DenseMat::operator*=(double s) {
    for (auto& v : data_) v *= s;
    return *this;
}

SparseOp::SparseOp(std::size_t rows, std::size_t cols, std::vector<Triplet> entries)
    : rows_(rows), cols_(cols) {
    for (const auto& t : entries)
        if (t.row >= rows || t.col >= cols)
            throw DimensionError("SparseOp: entry (" + std::to_string(t.row) + "," +
                                 std::to_string(t.col) + ") outside " + shape(rows, cols));

    std::sort(entries.begin(), entries.end(), [](const Triplet& a, const Triplet& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });

    row_ptr_.assign(rows + 1, 0);
    col_idx_.reserve(entries.size());
    values_.reserve(entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const auto& t = entries[i];
        if (i > 0 && entries[i - 1].row == t.row && entries[i - 1].col == t.col) {
            values_.back() += t.value;
            continue;
        }
        col_idx_.push_back(t.col);
        values_.push_back(t.value);
        ++row_ptr_[t.row + 1];
    }
    std::partial_sum(row_ptr_.begin(), row_ptr_.end(), row_ptr_.begin());
}

SparseOp SparseOp::from_dense(const DenseMat& dense) {
    std::vector<Triplet> entries;
    for (std::size_t i = 0; i < dense.rows(); ++i)
        for (std::size_t j = 0; j < dense.cols(); ++j)
            if (dense(i, j) != 0.0) entries.push_back({i, j, dense(i, j)});
    return SparseOp(dense.rows(), dense.cols(), std::move(entries));
}

SparseOp SparseOp::identity(std::size_t n) {
    std::vector<Triplet> entries;
    entries.reserve(n);
    for (std::size_t i = 0; i < n; ++i) entries.push_back({i, i, 1.0});
    return SparseOp(n, n, std::move(entries));
}

DenseMat SparseOp::to_dense() const {
    DenseMat d(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p) d(i, col_idx_[p]) = values_[p];
    return d;
}

double SparseOp::fro_norm() const {
    double s = 0.0;
    for (double v : values_) s += v * v;
    return std::sqrt(s);
}

double fro_inner(const DenseMat& p, const DenseMat& q) {
    require_same_shape(p, q, "fro_inner");
    const auto a = p.values();
    const auto b = q.values();
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double fro_inner(const DenseMat& p, const SparseOp& a) {
    if (p.rows() != a.rows() || p.cols() != a.cols())
        throw DimensionError("fro_inner: shape mismatch " + shape(p.rows(), p.cols()) + " vs " +
                             shape(a.rows(), a.cols()));
    const auto ptr = a.row_extents();
    const auto col = a.column_indices();
    const auto val = a.values();
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = ptr[i]; k < ptr[i + 1]; ++k) s += p(i, col[k]) * val[k];
    return s;
}

double fro_norm(const DenseMat& p) {
    return std::sqrt(fro_inner(p, p));
}

double trace(const DenseMat& p) {
    if (!p.square()) throw DimensionError("trace: matrix is " + shape(p.rows(), p.cols()));
    double s = 0.0;
    for (std::size_t i = 0; i < p.rows(); ++i) s += p(i, i);
    return s;
}

double cosine_to_identity(const DenseMat& m) {
    if (!m.square())
        throw DimensionError("cosine_to_identity: matrix is " + shape(m.rows(), m.cols()));
    const double norm = fro_norm(m);
    if (!(norm > degeneracy_threshold(m.rows(), m.cols())))
        throw DegenerateError("cosine_to_identity: matrix norm " + std::to_string(norm) +
                              " is numerically zero");
    const double c = trace(m) / (std::sqrt(static_cast<double>(m.rows())) * norm);
    return std::clamp(c, -1.0, 1.0);
}

double merit(const DenseMat& m) {
    return 1.0 - cosine_to_identity(m);
}

DenseMat spmm(const SparseOp& a, const DenseMat& x) {
    if (a.cols() != x.rows())
        throw DimensionError("spmm: " + shape(a.rows(), a.cols()) + " times " +
                             shape(x.rows(), x.cols()));
    const auto ptr = a.row_extents();
    const auto col = a.column_indices();
    const auto val = a.values();
    const std::size_t p = x.cols();
    DenseMat out(a.rows(), p);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        double* dst = &out(i, 0);
        for (std::size_t k = ptr[i]; k < ptr[i + 1]; ++k) {
            const double aik = val[k];
            const auto src = x.row(col[k]);
            for (std::size_t j = 0; j < p; ++j) dst[j] += aik * src[j];
        }
    }
    return out;
}

DenseMat rmul(const DenseMat& p, const SparseOp& a) {
    if (p.cols() != a.rows())
        throw DimensionError("rmul: " + shape(p.rows(), p.cols()) + " times " +
                             shape(a.rows(), a.cols()));
    const auto ptr = a.row_extents();
    const auto col = a.column_indices();
    const auto val = a.values();
    DenseMat out(p.rows(), a.cols());
    for (std::size_t i = 0; i < p.rows(); ++i) {
        const auto src = p.row(i);
        double* dst = &out(i, 0);
        for (std::size_t k = 0; k < a.rows(); ++k) {
            const double pik = src[k];
            if (pik == 0.0) continue;
            for (std::size_t q = ptr[k]; q < ptr[k + 1]; ++q) dst[col[q]] += pik * val[q];
        }
    }
    return out;
}

DenseMat matmul(const DenseMat& p, const DenseMat& q) {
    if (p.cols() != q.rows())
        throw DimensionError("matmul: " + shape(p.rows(), p.cols()) + " times " +
                             shape(q.rows(), q.cols()));
    DenseMat out(p.rows(), q.cols());
    for (std::size_t i = 0; i < p.rows(); ++i) {
        double* dst = &out(i, 0);
        for (std::size_t k = 0; k < p.cols(); ++k) {
            const double pik = p(i, k);
            const auto src = q.row(k);
            for (std::size_t j = 0; j < q.cols(); ++j) dst[j] += pik * src[j];
        }
    }
    return out;
}

DenseMat transpose(const DenseMat& p) {
    DenseMat t(p.cols(), p.rows());
    for (std::size_t i = 0; i < p.rows(); ++i)
        for (std::size_t j = 0; j < p.cols(); ++j) t(j, i) = p(i, j);
    return t;
}

DenseMat sym_part(const DenseMat& p) {
    if (!p.square()) throw DimensionError("sym_part: matrix is " + shape(p.rows(), p.cols()));
    const std::size_t n = p.rows();
    DenseMat s(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        s(i, i) = p(i, i);
        for (std::size_t j = i + 1; j < n; ++j) s(i, j) = s(j, i) = 0.5 * (p(i, j) + p(j, i));
    }
    return s;
}

DenseMat axpy(double alpha, const DenseMat& p, const DenseMat& q) {
    require_same_shape(p, q, "axpy");
    DenseMat out = q;
    auto dst = out.values();
    const auto src = p.values();
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += alpha * src[i];
    return out;
}

DenseMat operator-(const DenseMat& p, const DenseMat& q) {
    return axpy(-1.0, q, p);
}

DenseMat operator+(const DenseMat& p, const DenseMat& q) {
    return axpy(1.0, q, p);
}

DenseMat operator*(double s, DenseMat p) {
    p *= s;
    return p;
}

} // namespace mincos
