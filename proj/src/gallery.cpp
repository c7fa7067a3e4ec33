#include "mincos/gallery.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

#include "mincos/matrix_market.hpp"
#include "mincos/rng.hpp"

namespace mincos::gallery {

namespace {

void require_positive(std::size_t v, const char* what) {
    if (v < 1) throw std::invalid_argument(std::string(what) + " must be at least 1");
}

} // namespace

SparseOp poisson2d(std::size_t g) {
    require_positive(g, "poisson2d grid side");
    const std::size_t n = g * g;
    std::vector<Triplet> t;
    t.reserve(5 * n);
    for (std::size_t i = 0; i < g; ++i)
        for (std::size_t j = 0; j < g; ++j) {
            const std::size_t p = i * g + j;
            t.push_back({p, p, 4.0});
            if (i > 0) t.push_back({p, p - g, -1.0});
            if (i + 1 < g) t.push_back({p, p + g, -1.0});
            if (j > 0) t.push_back({p, p - 1, -1.0});
            if (j + 1 < g) t.push_back({p, p + 1, -1.0});
        }
    return SparseOp(n, n, std::move(t));
}

SparseOp poisson3d(std::size_t g) {
    require_positive(g, "poisson3d grid side");
    const std::size_t n = g * g * g;
    const std::size_t plane = g * g;
    std::vector<Triplet> t;
    t.reserve(7 * n);
    for (std::size_t i = 0; i < g; ++i)
        for (std::size_t j = 0; j < g; ++j)
            for (std::size_t l = 0; l < g; ++l) {
                const std::size_t p = i * plane + j * g + l;
                t.push_back({p, p, 6.0});
                if (i > 0) t.push_back({p, p - plane, -1.0});
                if (i + 1 < g) t.push_back({p, p + plane, -1.0});
                if (j > 0) t.push_back({p, p - g, -1.0});
                if (j + 1 < g) t.push_back({p, p + g, -1.0});
                if (l > 0) t.push_back({p, p - 1, -1.0});
                if (l + 1 < g) t.push_back({p, p + 1, -1.0});
            }
    return SparseOp(n, n, std::move(t));
}

SparseOp wathen(std::size_t blocks, std::uint64_t seed) {
    require_positive(blocks, "wathen block count");
    // Element matrix of the 8-node serendipity element, times 45.
    static constexpr std::array<std::array<double, 4>, 4> e1{{
        {6, -6, 2, -8}, {-6, 32, -6, 20}, {2, -6, 6, -6}, {-8, 20, -6, 32}}};
    static constexpr std::array<std::array<double, 4>, 4> e2{{
        {3, -8, 2, -6}, {-8, 16, -8, 20}, {2, -8, 3, -8}, {-6, 20, -8, 16}}};
    auto element = [](std::size_t r, std::size_t c) {
        if (r < 4 && c < 4) return e1[r][c];
        if (r >= 4 && c >= 4) return e1[r - 4][c - 4];
        if (r < 4) return e2[r][c - 4];
        return e2[c][r - 4]; // lower-left block is e2 transposed
    };

    const std::size_t nx = blocks;
    const std::size_t ny = blocks;
    const std::size_t n = 3 * nx * ny + 2 * nx + 2 * ny + 1;

    Rng rng(seed);
    std::vector<double> rho(nx * ny);
    for (auto& r : rho) r = 100.0 * rng.uniform();

    std::vector<Triplet> t;
    t.reserve(64 * nx * ny);
    for (std::size_t j = 1; j <= ny; ++j)
        for (std::size_t i = 1; i <= nx; ++i) {
            // 1-based global node numbers of the element, counter-clockwise.
            std::array<std::size_t, 8> nn{};
            nn[0] = 3 * j * nx + 2 * i + 2 * j + 1;
            nn[1] = nn[0] - 1;
            nn[2] = nn[1] - 1;
            nn[3] = (3 * j - 1) * nx + 2 * j + i - 1;
            nn[4] = 3 * (j - 1) * nx + 2 * i + 2 * j - 3;
            nn[5] = nn[4] + 1;
            nn[6] = nn[5] + 1;
            nn[7] = nn[3] + 1;
            const double density = rho[(i - 1) * ny + (j - 1)] / 45.0;
            for (std::size_t r = 0; r < 8; ++r)
                for (std::size_t c = 0; c < 8; ++c)
                    t.push_back({nn[r] - 1, nn[c] - 1, density * element(r, c)});
        }
    return SparseOp(n, n, std::move(t));
}

DenseMat lehmer(std::size_t n) {
    require_positive(n, "lehmer order");
    DenseMat l(n, n);
    for (std::size_t i = 1; i <= n; ++i)
        for (std::size_t j = 1; j <= n; ++j)
            l(i - 1, j - 1) = static_cast<double>(std::min(i, j)) / static_cast<double>(std::max(i, j));
    return l;
}

DenseMat randn_mat(std::size_t m, std::size_t n, std::uint64_t seed) {
    require_positive(m, "randn rows");
    require_positive(n, "randn cols");
    Rng rng(seed);
    DenseMat r(m, n);
    for (auto& v : r.values()) v = rng.normal();
    return r;
}

std::string to_string(MatrixKind kind) {
    switch (kind) {
    case MatrixKind::poisson2d: return "poisson2d";
    case MatrixKind::poisson3d: return "poisson3d";
    case MatrixKind::wathen: return "wathen";
    case MatrixKind::lehmer: return "lehmer";
    case MatrixKind::randn: return "randn";
    case MatrixKind::mtx_file: return "mtx-file";
    }
    return "unknown";
}

void MatrixSpec::validate() const {
    const bool file = kind == MatrixKind::mtx_file;
    if (file != path.has_value())
        throw std::invalid_argument(file ? "mtx-file needs a path" : "path is only used by mtx-file");
    if (!file && size < 1) throw std::invalid_argument(to_string(kind) + " needs a size parameter");
    if (m.has_value() != (kind == MatrixKind::randn))
        throw std::invalid_argument(kind == MatrixKind::randn ? "randn needs a row count m"
                                                              : "m is only used by randn");
    if (seed && !(kind == MatrixKind::randn || kind == MatrixKind::wathen))
        throw std::invalid_argument("seed is only used by randn and wathen");
}

std::string MatrixSpec::describe() const {
    switch (kind) {
    case MatrixKind::mtx_file: return *path;
    case MatrixKind::randn:
        return "randn(" + std::to_string(*m) + "," + std::to_string(size) + ")";
    default: return to_string(kind) + "(" + std::to_string(size) + ")";
    }
}

SparseOp build(const MatrixSpec& spec) {
    spec.validate();
    switch (spec.kind) {
    case MatrixKind::poisson2d: return poisson2d(spec.size);
    case MatrixKind::poisson3d: return poisson3d(spec.size);
    case MatrixKind::wathen: return wathen(spec.size, spec.seed.value_or(1));
    case MatrixKind::lehmer: return SparseOp::from_dense(lehmer(spec.size));
    case MatrixKind::randn: {
        DenseMat r = randn_mat(*spec.m, spec.size, spec.seed.value_or(1));
        if (r.rows() < r.cols()) r = transpose(r);
        return SparseOp::from_dense(r);
    }
    case MatrixKind::mtx_file: return read_matrix_market(std::filesystem::path(*spec.path));
    }
    throw std::invalid_argument("unknown matrix kind");
}

} // namespace mincos::gallery
