#pragma once

#include "toolkit/exact/matrix.hpp"

namespace toolkit {

// Small dense linear algebra over F_p with int64 entries in [0, p).
struct FpMat {
    Fp f;
    size_t rows = 0, cols = 0;
    std::vector<int64_t> a;

    FpMat(Fp field, size_t r, size_t c) : f(field), rows(r), cols(c), a(r * c, 0) {}
    int64_t& operator()(size_t i, size_t j) { return a[i * cols + j]; }
    int64_t operator()(size_t i, size_t j) const { return a[i * cols + j]; }

    static FpMat identity(Fp field, size_t n) {
        FpMat m(field, n, n);
        for (size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    FpMat mul(const FpMat& o) const {
        FpMat out(f, rows, o.cols);
        for (size_t i = 0; i < rows; ++i)
            for (size_t k = 0; k < cols; ++k) {
                int64_t x = (*this)(i, k);
                if (!x) continue;
                for (size_t j = 0; j < o.cols; ++j)
                    out(i, j) = f.add(out(i, j), f.mul(x, o(k, j)));
            }
        return out;
    }

    std::vector<int64_t> apply(const std::vector<int64_t>& v) const {
        std::vector<int64_t> out(rows, 0);
        for (size_t i = 0; i < rows; ++i)
            for (size_t j = 0; j < cols; ++j) out[i] = f.add(out[i], f.mul((*this)(i, j), v[j]));
        return out;
    }
};

// Reduced row echelon; returns pivot columns.
inline std::vector<size_t> fp_rref(FpMat& m) {
    std::vector<size_t> pivots;
    size_t row = 0;
    for (size_t col = 0; col < m.cols && row < m.rows; ++col) {
        size_t sel = row;
        while (sel < m.rows && m(sel, col) == 0) ++sel;
        if (sel == m.rows) continue;
        if (sel != row)
            for (size_t j = 0; j < m.cols; ++j) std::swap(m(sel, j), m(row, j));
        int64_t pi = m.f.inv(m(row, col));
        for (size_t j = 0; j < m.cols; ++j) m(row, j) = m.f.mul(m(row, j), pi);
        for (size_t i = 0; i < m.rows; ++i) {
            if (i == row || m(i, col) == 0) continue;
            int64_t fac = m(i, col);
            for (size_t j = 0; j < m.cols; ++j)
                m(i, j) = m.f.sub(m(i, j), m.f.mul(fac, m(row, j)));
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

inline size_t fp_rank(FpMat m) { return fp_rref(m).size(); }

// Right kernel basis.
inline std::vector<std::vector<int64_t>> fp_kernel(FpMat m) {
    auto pivots = fp_rref(m);
    std::vector<bool> is_pivot(m.cols, false);
    for (size_t p : pivots) is_pivot[p] = true;
    std::vector<std::vector<int64_t>> basis;
    for (size_t free = 0; free < m.cols; ++free) {
        if (is_pivot[free]) continue;
        std::vector<int64_t> v(m.cols, 0);
        v[free] = 1;
        for (size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = m.f.neg(m(i, free));
        basis.push_back(std::move(v));
    }
    return basis;
}

// Row-space basis as echelon rows.
inline std::vector<std::vector<int64_t>> fp_row_basis(FpMat m) {
    auto pivots = fp_rref(m);
    std::vector<std::vector<int64_t>> rows;
    for (size_t i = 0; i < pivots.size(); ++i) {
        std::vector<int64_t> r(m.cols);
        for (size_t j = 0; j < m.cols; ++j) r[j] = m(i, j);
        rows.push_back(std::move(r));
    }
    return rows;
}

// Is v in the row space of m (m should be echelonized rows)?
inline bool fp_in_span(const std::vector<std::vector<int64_t>>& echelon_rows,
                       std::vector<int64_t> v, Fp f) {
    for (const auto& r : echelon_rows) {
        size_t pc = 0;
        while (pc < r.size() && r[pc] == 0) ++pc;
        if (pc == r.size()) continue;
        if (v[pc] == 0) continue;
        int64_t fac = f.mul(v[pc], f.inv(r[pc]));
        for (size_t j = 0; j < r.size(); ++j) v[j] = f.sub(v[j], f.mul(fac, r[j]));
    }
    for (int64_t x : v)
        if (x % f.p != 0) return false;
    return true;
}

// Solve m x = b; returns false if inconsistent.
inline bool fp_solve(const FpMat& m, const std::vector<int64_t>& b, std::vector<int64_t>& x) {
    FpMat aug(m.f, m.rows, m.cols + 1);
    for (size_t i = 0; i < m.rows; ++i) {
        for (size_t j = 0; j < m.cols; ++j) aug(i, j) = m(i, j);
        aug(i, m.cols) = ((b[i] % m.f.p) + m.f.p) % m.f.p;
    }
    auto pivots = fp_rref(aug);
    for (size_t p : pivots)
        if (p == m.cols) return false;
    x.assign(m.cols, 0);
    for (size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug(i, m.cols);
    return true;
}

} // namespace toolkit
