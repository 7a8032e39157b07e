#pragma once

#include <cstdint>
#include <optional>
#include <vector>

// Dense GF(2) linear algebra, sized for cohomology of desk-scale manifolds
// (a handful of basis monomials per degree).

namespace wucalc::gf2 {

using Row = std::vector<uint8_t>;

struct Matrix {
    size_t rows = 0, cols = 0;
    std::vector<Row> a; // rows x cols, entries 0/1

    Matrix() = default;
    Matrix(size_t r, size_t c) : rows(r), cols(c), a(r, Row(c, 0)) {}
};

inline size_t rank(Matrix m) {
    size_t r = 0;
    for (size_t col = 0; col < m.cols && r < m.rows; ++col) {
        size_t piv = r;
        while (piv < m.rows && !m.a[piv][col]) ++piv;
        if (piv == m.rows) continue;
        std::swap(m.a[piv], m.a[r]);
        for (size_t i = 0; i < m.rows; ++i)
            if (i != r && m.a[i][col])
                for (size_t j = col; j < m.cols; ++j) m.a[i][j] ^= m.a[r][j];
        ++r;
    }
    return r;
}

inline bool invertible(const Matrix& m) { return m.rows == m.cols && rank(m) == m.rows; }

/// Solves m x = rhs when the solution exists and is unique; nullopt otherwise
/// (non-square, singular, or inconsistent systems all count as failure here).
inline std::optional<Row> solve_unique(Matrix m, Row rhs) {
    if (rhs.size() != m.rows) return std::nullopt;
    size_t r = 0;
    std::vector<size_t> pivot_col;
    for (size_t col = 0; col < m.cols && r < m.rows; ++col) {
        size_t piv = r;
        while (piv < m.rows && !m.a[piv][col]) ++piv;
        if (piv == m.rows) continue;
        std::swap(m.a[piv], m.a[r]);
        std::swap(rhs[piv], rhs[r]);
        for (size_t i = 0; i < m.rows; ++i)
            if (i != r && m.a[i][col]) {
                for (size_t j = col; j < m.cols; ++j) m.a[i][j] ^= m.a[r][j];
                rhs[i] ^= rhs[r];
            }
        pivot_col.push_back(col);
        ++r;
    }
    if (r < m.cols) return std::nullopt; // free variables: not unique
    for (size_t i = r; i < m.rows; ++i)
        if (rhs[i]) return std::nullopt; // inconsistent
    Row x(m.cols, 0);
    for (size_t i = 0; i < r; ++i) x[pivot_col[i]] = rhs[i];
    return x;
}

} // namespace wucalc::gf2
