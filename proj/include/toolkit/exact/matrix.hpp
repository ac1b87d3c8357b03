#pragma once

#include "toolkit/exact/rational.hpp"
#include <vector>
#include <utility>

namespace toolkit {

// Dense matrix over an exact scalar ring.  Field-only operations (rref,
// kernel, solve, inverse) require T to support arithmetic, ==, and inv()
// through field_traits below.
template <class T>
class Mat {
public:
    Mat() : r_(0), c_(0) {}
    Mat(size_t r, size_t c, T fill = T()) : r_(r), c_(c), a_(r * c, fill) {}

    static Mat identity(size_t n, const T& one, const T& zero) {
        Mat m(n, n, zero);
        for (size_t i = 0; i < n; ++i) m(i, i) = one;
        return m;
    }

    size_t rows() const { return r_; }
    size_t cols() const { return c_; }
    T& operator()(size_t i, size_t j) { return a_[i * c_ + j]; }
    const T& operator()(size_t i, size_t j) const { return a_[i * c_ + j]; }

    bool operator==(const Mat& o) const { return r_ == o.r_ && c_ == o.c_ && a_ == o.a_; }

    Mat transpose() const {
        Mat t(c_, r_);
        for (size_t i = 0; i < r_; ++i)
            for (size_t j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    Mat operator*(const Mat& o) const {
        if (c_ != o.r_) throw domain_error("ShapeMismatch", "matrix product shapes");
        Mat out(r_, o.c_);
        for (size_t i = 0; i < r_; ++i)
            for (size_t k = 0; k < c_; ++k) {
                const T& x = (*this)(i, k);
                if (x == T()) continue;
                for (size_t j = 0; j < o.c_; ++j) out(i, j) = out(i, j) + x * o(k, j);
            }
        return out;
    }

    Mat operator+(const Mat& o) const {
        if (r_ != o.r_ || c_ != o.c_) throw domain_error("ShapeMismatch", "matrix sum shapes");
        Mat out(r_, c_);
        for (size_t i = 0; i < a_.size(); ++i) out.a_[i] = a_[i] + o.a_[i];
        return out;
    }

    Mat operator-(const Mat& o) const {
        if (r_ != o.r_ || c_ != o.c_) throw domain_error("ShapeMismatch", "matrix difference shapes");
        Mat out(r_, c_);
        for (size_t i = 0; i < a_.size(); ++i) out.a_[i] = a_[i] - o.a_[i];
        return out;
    }

    std::vector<T> row(size_t i) const {
        return std::vector<T>(a_.begin() + i * c_, a_.begin() + (i + 1) * c_);
    }

    std::vector<T> apply(const std::vector<T>& v) const {
        if (v.size() != c_) throw domain_error("ShapeMismatch", "matrix-vector shapes");
        std::vector<T> out(r_, T());
        for (size_t i = 0; i < r_; ++i)
            for (size_t j = 0; j < c_; ++j) out[i] = out[i] + (*this)(i, j) * v[j];
        return out;
    }

private:
    size_t r_, c_;
    std::vector<T> a_;
};

template <class T>
struct field_traits {
    static T zero() { return T(); }
    static T one() { return T(1); }
    static bool is_zero(const T& x) { return x == T(); }
    static T inv(const T& x) { return T(1) / x; }
};

using QMat = Mat<BigRat>;
using ZMat = Mat<BigInt>;

// Row reduction over a field.  Returns pivot column indices; the matrix is
// left in reduced row echelon form.
template <class T, class FT = field_traits<T>>
std::vector<size_t> rref(Mat<T>& m) {
    std::vector<size_t> pivots;
    size_t row = 0;
    for (size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        size_t sel = row;
        while (sel < m.rows() && FT::is_zero(m(sel, col))) ++sel;
        if (sel == m.rows()) continue;
        if (sel != row)
            for (size_t j = 0; j < m.cols(); ++j) std::swap(m(sel, j), m(row, j));
        T pi = FT::inv(m(row, col));
        for (size_t j = col; j < m.cols(); ++j) m(row, j) = m(row, j) * pi;
        for (size_t i = 0; i < m.rows(); ++i) {
            if (i == row || FT::is_zero(m(i, col))) continue;
            T f = m(i, col);
            for (size_t j = col; j < m.cols(); ++j) m(i, j) = m(i, j) - f * m(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

template <class T, class FT = field_traits<T>>
size_t rank(Mat<T> m) {
    return rref<T, FT>(m).size();
}

// Basis of the right kernel {v : m v = 0}, one vector per column.
template <class T, class FT = field_traits<T>>
std::vector<std::vector<T>> kernel_basis(Mat<T> m) {
    std::vector<size_t> pivots = rref<T, FT>(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (size_t p : pivots) is_pivot[p] = true;
    std::vector<std::vector<T>> basis;
    for (size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        std::vector<T> v(m.cols(), FT::zero());
        v[free] = FT::one();
        for (size_t i = 0; i < pivots.size(); ++i)
            v[pivots[i]] = FT::zero() - m(i, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

// Solve m x = b over a field; returns false if inconsistent.
template <class T, class FT = field_traits<T>>
bool solve(const Mat<T>& m, const std::vector<T>& b, std::vector<T>& x) {
    Mat<T> aug(m.rows(), m.cols() + 1);
    for (size_t i = 0; i < m.rows(); ++i) {
        for (size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
        aug(i, m.cols()) = b[i];
    }
    std::vector<size_t> pivots = rref<T, FT>(aug);
    for (size_t p : pivots)
        if (p == m.cols()) return false;
    x.assign(m.cols(), FT::zero());
    for (size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug(i, m.cols());
    return true;
}

template <class T, class FT = field_traits<T>>
Mat<T> inverse(const Mat<T>& m) {
    if (m.rows() != m.cols()) throw domain_error("ShapeMismatch", "inverse of non-square matrix");
    size_t n = m.rows();
    Mat<T> aug(n, 2 * n, FT::zero());
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
        aug(i, n + i) = FT::one();
    }
    std::vector<size_t> pivots = rref<T, FT>(aug);
    if (pivots.size() != n || pivots.back() != n - 1)
        throw domain_error("SingularMatrix", "matrix not invertible");
    Mat<T> out(n, n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) out(i, j) = aug(i, n + j);
    return out;
}

template <class T, class FT = field_traits<T>>
T determinant(Mat<T> m) {
    if (m.rows() != m.cols()) throw domain_error("ShapeMismatch", "determinant of non-square matrix");
    size_t n = m.rows();
    T det = FT::one();
    for (size_t col = 0, row = 0; col < n && row < n; ++col, ++row) {
        size_t sel = row;
        while (sel < n && FT::is_zero(m(sel, col))) ++sel;
        if (sel == n) return FT::zero();
        if (sel != row) {
            for (size_t j = 0; j < n; ++j) std::swap(m(sel, j), m(row, j));
            det = FT::zero() - det;
        }
        det = det * m(row, col);
        T pi = FT::inv(m(row, col));
        for (size_t i = row + 1; i < n; ++i) {
            if (FT::is_zero(m(i, col))) continue;
            T f = m(i, col) * pi;
            for (size_t j = col; j < n; ++j) m(i, j) = m(i, j) - f * m(row, j);
        }
    }
    return det;
}

// --- integer normal forms ---------------------------------------------

struct HnfResult {
    ZMat h; // row-style HNF: pivots positive, entries above pivots reduced
    ZMat u; // unimodular, h = u * m
};

HnfResult hermite_normal_form(const ZMat& m);

// Diagonal Smith divisors d1 | d2 | ... (nonnegative), length min(rows, cols).
std::vector<BigInt> smith_normal_form(const ZMat& m);

// Monic minimal polynomial of a square rational matrix, as coefficients
// constant-first (size deg+1, leading 1).
std::vector<BigRat> minimal_polynomial(const QMat& m);

} // namespace toolkit
