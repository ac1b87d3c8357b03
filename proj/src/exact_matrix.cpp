#include "toolkit/exact/matrix.hpp"

namespace toolkit {

// Row-style HNF by integer row operations, tracking the unimodular transform.
// Pivot rows are normalized positive and entries above each pivot reduced to
// [0, pivot).
HnfResult hermite_normal_form(const ZMat& m) {
    size_t rows = m.rows(), cols = m.cols();
    ZMat h = m;
    ZMat u = ZMat::identity(rows, BigInt(1), BigInt(0));

    auto swap_rows = [&](size_t a, size_t b) {
        if (a == b) return;
        for (size_t j = 0; j < cols; ++j) std::swap(h(a, j), h(b, j));
        for (size_t j = 0; j < rows; ++j) std::swap(u(a, j), u(b, j));
    };
    auto addmul = [&](size_t dst, size_t src, const BigInt& f) {
        if (f == 0) return;
        for (size_t j = 0; j < cols; ++j) h(dst, j) += f * h(src, j);
        for (size_t j = 0; j < rows; ++j) u(dst, j) += f * u(src, j);
    };
    auto negate_row = [&](size_t i) {
        for (size_t j = 0; j < cols; ++j) h(i, j) = -h(i, j);
        for (size_t j = 0; j < rows; ++j) u(i, j) = -u(i, j);
    };
    // rows a,b -> (s*a + t*b, ...) with [s t; -b/g a/g] unimodular
    auto gcd_rows = [&](size_t a, size_t b, size_t col) {
        BigInt s, t;
        BigInt g = igcdext(h(a, col), h(b, col), s, t);
        BigInt qa = h(a, col) / g, qb = h(b, col) / g;
        for (size_t j = 0; j < cols; ++j) {
            BigInt na = s * h(a, j) + t * h(b, j);
            BigInt nb = qa * h(b, j) - qb * h(a, j);
            h(a, j) = na;
            h(b, j) = nb;
        }
        for (size_t j = 0; j < rows; ++j) {
            BigInt na = s * u(a, j) + t * u(b, j);
            BigInt nb = qa * u(b, j) - qb * u(a, j);
            u(a, j) = na;
            u(b, j) = nb;
        }
    };

    size_t row = 0;
    for (size_t col = 0; col < cols && row < rows; ++col) {
        size_t sel = row;
        while (sel < rows && h(sel, col) == 0) ++sel;
        if (sel == rows) continue;
        swap_rows(row, sel);
        for (size_t i = row + 1; i < rows; ++i)
            if (h(i, col) != 0) gcd_rows(row, i, col);
        if (h(row, col) < 0) negate_row(row);
        for (size_t i = 0; i < row; ++i) {
            BigInt q = ifdiv(h(i, col), h(row, col));
            addmul(i, row, -q);
        }
        ++row;
    }
    return {h, u};
}

std::vector<BigInt> smith_normal_form(const ZMat& m) {
    size_t rows = m.rows(), cols = m.cols();
    ZMat a = m;
    size_t n = std::min(rows, cols);
    std::vector<BigInt> div(n, 0);
    size_t t = 0;
    while (t < n) {
        // find a nonzero entry in the remaining block
        size_t pi = t, pj = t;
        bool found = false;
        for (size_t i = t; i < rows && !found; ++i)
            for (size_t j = t; j < cols && !found; ++j)
                if (a(i, j) != 0) { pi = i; pj = j; found = true; }
        if (!found) break;
        for (size_t j = 0; j < cols; ++j) std::swap(a(t, j), a(pi, j));
        for (size_t i = 0; i < rows; ++i) std::swap(a(i, t), a(i, pj));

        for (;;) {
            bool changed = false;
            for (size_t i = t + 1; i < rows; ++i) {
                if (a(i, t) == 0) continue;
                if (imod(a(i, t), a(t, t)) == 0) {
                    // plain reduction keeps the pivot row fixed
                    BigInt q = a(i, t) / a(t, t);
                    for (size_t j = t; j < cols; ++j) a(i, j) -= q * a(t, j);
                } else {
                    BigInt s, x;
                    BigInt g = igcdext(a(t, t), a(i, t), s, x);
                    BigInt qa = a(t, t) / g, qb = a(i, t) / g;
                    for (size_t j = t; j < cols; ++j) {
                        BigInt na = s * a(t, j) + x * a(i, j);
                        BigInt nb = qa * a(i, j) - qb * a(t, j);
                        a(t, j) = na;
                        a(i, j) = nb;
                    }
                }
                changed = true;
            }
            for (size_t j = t + 1; j < cols; ++j) {
                if (a(t, j) == 0) continue;
                if (imod(a(t, j), a(t, t)) == 0) {
                    BigInt q = a(t, j) / a(t, t);
                    for (size_t i = t; i < rows; ++i) a(i, j) -= q * a(i, t);
                } else {
                    BigInt s, x;
                    BigInt g = igcdext(a(t, t), a(t, j), s, x);
                    BigInt qa = a(t, t) / g, qb = a(t, j) / g;
                    for (size_t i = t; i < rows; ++i) {
                        BigInt na = s * a(i, t) + x * a(i, j);
                        BigInt nb = qa * a(i, j) - qb * a(i, t);
                        a(i, t) = na;
                        a(i, j) = nb;
                    }
                }
                changed = true;
            }
            if (!changed) break;
        }
        // divisibility sweep: a(t,t) must divide everything below-right
        bool redo = false;
        for (size_t i = t + 1; i < rows && !redo; ++i)
            for (size_t j = t + 1; j < cols && !redo; ++j)
                if (imod(a(i, j), a(t, t)) != 0) {
                    for (size_t jj = t; jj < cols; ++jj) a(t, jj) += a(i, jj);
                    redo = true;
                }
        if (redo) continue;
        div[t] = abs(a(t, t));
        ++t;
    }
    return div;
}

std::vector<BigRat> minimal_polynomial(const QMat& m) {
    if (m.rows() != m.cols()) throw domain_error("ShapeMismatch", "minimal polynomial of non-square matrix");
    size_t n = m.rows();
    if (n == 0) return {BigRat(1)}; // empty matrix: minimal polynomial 1
    // Krylov on vectorized powers: find the first power lying in the span of
    // the previous ones.
    std::vector<std::vector<BigRat>> powers; // vectorized I, m, m^2, ...
    QMat cur = QMat::identity(n, BigRat(1), BigRat(0));
    for (size_t deg = 0; deg <= n; ++deg) {
        std::vector<BigRat> vec(n * n);
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) vec[i * n + j] = cur(i, j);
        // try to express vec in span(powers)
        if (!powers.empty()) {
            QMat sys(n * n, powers.size());
            for (size_t c = 0; c < powers.size(); ++c)
                for (size_t r = 0; r < n * n; ++r) sys(r, c) = powers[c][r];
            std::vector<BigRat> coeff;
            if (solve(sys, vec, coeff)) {
                std::vector<BigRat> p(deg + 1);
                for (size_t k = 0; k < deg; ++k) p[k] = -coeff[k];
                p[deg] = 1;
                return p;
            }
        }
        powers.push_back(std::move(vec));
        cur = cur * m;
    }
    throw domain_error("Internal", "minimal polynomial not found within dimension bound");
}

} // namespace toolkit
