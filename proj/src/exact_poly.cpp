#include "toolkit/exact/poly.hpp"
#include "toolkit/exact/matrix.hpp"

namespace toolkit {

BigRat resultant(const QPoly& a, const QPoly& b) {
    if (a.is_zero() || b.is_zero()) return BigRat(0);
    long m = a.degree(), n = b.degree();
    if (m == 0) {
        BigRat r(1);
        for (long i = 0; i < n; ++i) r *= a.c[0];
        return r;
    }
    if (n == 0) {
        BigRat r(1);
        for (long i = 0; i < m; ++i) r *= b.c[0];
        return r;
    }
    QMat s((size_t)(m + n), (size_t)(m + n), BigRat(0));
    for (long i = 0; i < n; ++i)
        for (long j = 0; j <= m; ++j) s((size_t)i, (size_t)(i + j)) = a.c[(size_t)(m - j)];
    for (long i = 0; i < m; ++i)
        for (long j = 0; j <= n; ++j) s((size_t)(n + i), (size_t)(i + j)) = b.c[(size_t)(n - j)];
    return determinant(s);
}

FpPoly fp_add(const FpPoly& a, const FpPoly& b) {
    std::vector<int64_t> r(std::max(a.c.size(), b.c.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) r[i] = a.f.add(a.at(i), b.at(i));
    return FpPoly(a.f, std::move(r));
}

FpPoly fp_sub(const FpPoly& a, const FpPoly& b) {
    std::vector<int64_t> r(std::max(a.c.size(), b.c.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) r[i] = a.f.sub(a.at(i), b.at(i));
    return FpPoly(a.f, std::move(r));
}

FpPoly fp_mul(const FpPoly& a, const FpPoly& b) {
    if (a.is_zero() || b.is_zero()) return FpPoly(a.f);
    std::vector<int64_t> r(a.c.size() + b.c.size() - 1, 0);
    for (size_t i = 0; i < a.c.size(); ++i)
        for (size_t j = 0; j < b.c.size(); ++j)
            r[i + j] = a.f.add(r[i + j], a.f.mul(a.c[i], b.c[j]));
    return FpPoly(a.f, std::move(r));
}

static void fp_divmod(const FpPoly& a, const FpPoly& b, FpPoly& q, FpPoly& r) {
    if (b.is_zero()) throw domain_error("DivisionByZero", "F_p polynomial division by zero");
    const Fp& F = a.f;
    r = a;
    std::vector<int64_t> qc(a.c.size() > b.c.size() ? a.c.size() - b.c.size() + 1 : 1, 0);
    int64_t li = F.inv(b.c.back());
    while (!r.is_zero() && r.degree() >= b.degree()) {
        long shift = r.degree() - b.degree();
        int64_t f = F.mul(r.c.back(), li);
        qc[(size_t)shift] = F.add(qc[(size_t)shift], f);
        for (size_t i = 0; i < b.c.size(); ++i)
            r.c[(size_t)shift + i] = F.sub(r.c[(size_t)shift + i], F.mul(f, b.c[i]));
        r.trim();
    }
    q = FpPoly(a.f, std::move(qc));
}

FpPoly fp_mod(const FpPoly& a, const FpPoly& b) {
    FpPoly q(a.f), r(a.f);
    fp_divmod(a, b, q, r);
    return r;
}

FpPoly fp_gcd(FpPoly a, FpPoly b) {
    while (!b.is_zero()) {
        FpPoly r = fp_mod(a, b);
        a = b;
        b = r;
    }
    return fp_monic(a);
}

FpPoly fp_monic(const FpPoly& a) {
    if (a.is_zero()) return a;
    int64_t li = a.f.inv(a.c.back());
    std::vector<int64_t> r = a.c;
    for (auto& x : r) x = a.f.mul(x, li);
    return FpPoly(a.f, std::move(r));
}

FpPoly fp_powmod(const FpPoly& base, BigInt e, const FpPoly& mod) {
    FpPoly r(base.f, {1});
    FpPoly b = fp_mod(base, mod);
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) r = fp_mod(fp_mul(r, b), mod);
        b = fp_mod(fp_mul(b, b), mod);
        e >>= 1;
    }
    return r;
}

FpPoly fp_derivative(const FpPoly& a) {
    if (a.c.size() <= 1) return FpPoly(a.f);
    std::vector<int64_t> r(a.c.size() - 1);
    for (size_t i = 1; i < a.c.size(); ++i)
        r[i - 1] = a.f.mul(a.c[i], (int64_t)(i % (size_t)a.f.p));
    return FpPoly(a.f, std::move(r));
}

namespace {

// f = g(x^p) with g's coefficients already p-th powers over F_p.
FpPoly fp_pth_root(const FpPoly& a) {
    std::vector<int64_t> r;
    for (size_t i = 0; i < a.c.size(); i += (size_t)a.f.p) r.push_back(a.c[i]);
    return FpPoly(a.f, std::move(r));
}

// Berlekamp: split a squarefree monic polynomial into monic irreducibles.
std::vector<FpPoly> fp_berlekamp(const FpPoly& a) {
    long n = a.degree();
    if (n <= 1) return n == 1 ? std::vector<FpPoly>{a} : std::vector<FpPoly>{};
    const Fp& F = a.f;

    // columns of Q are x^{p*i} mod a
    Mat<int64_t> Q((size_t)n, (size_t)n, 0);
    FpPoly xp = fp_powmod(FpPoly(F, {0, 1}), BigInt(F.p), a);
    FpPoly cur(F, {1});
    for (long i = 0; i < n; ++i) {
        for (long j = 0; j <= cur.degree(); ++j) Q((size_t)j, (size_t)i) = cur.c[(size_t)j];
        cur = fp_mod(fp_mul(cur, xp), a);
    }
    for (long i = 0; i < n; ++i) Q((size_t)i, (size_t)i) = F.sub(Q((size_t)i, (size_t)i), 1);

    // kernel of Q - I over F_p
    size_t dim = (size_t)n;
    std::vector<size_t> pivots;
    {
        size_t row = 0;
        for (size_t col = 0; col < dim && row < dim; ++col) {
            size_t sel = row;
            while (sel < dim && Q(sel, col) == 0) ++sel;
            if (sel == dim) continue;
            if (sel != row)
                for (size_t j = 0; j < dim; ++j) std::swap(Q(sel, j), Q(row, j));
            int64_t pi = F.inv(Q(row, col));
            for (size_t j = 0; j < dim; ++j) Q(row, j) = F.mul(Q(row, j), pi);
            for (size_t i = 0; i < dim; ++i) {
                if (i == row || Q(i, col) == 0) continue;
                int64_t f = Q(i, col);
                for (size_t j = 0; j < dim; ++j) Q(i, j) = F.sub(Q(i, j), F.mul(f, Q(row, j)));
            }
            pivots.push_back(col);
            ++row;
        }
    }
    std::vector<bool> is_pivot(dim, false);
    for (size_t pcol : pivots) is_pivot[pcol] = true;
    std::vector<FpPoly> basis;
    for (size_t free = 0; free < dim; ++free) {
        if (is_pivot[free]) continue;
        std::vector<int64_t> v(dim, 0);
        v[free] = 1;
        for (size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = F.neg(Q(i, free));
        basis.emplace_back(F, std::move(v));
    }
    size_t r = basis.size();
    std::vector<FpPoly> work{a};
    if (r <= 1) return work;
    // any two distinct irreducible factors are separated by some (v, c)
    for (const FpPoly& v : basis) {
        if (work.size() >= r) break;
        std::vector<FpPoly> next;
        for (const FpPoly& w : work) {
            FpPoly leftover = w;
            for (int64_t cval = 0; cval < F.p && leftover.degree() > 0; ++cval) {
                FpPoly g = fp_gcd(leftover, fp_sub(fp_mod(v, w), FpPoly(F, {cval})));
                if (g.degree() > 0 && g.degree() < leftover.degree()) {
                    next.push_back(g);
                    FpPoly q(F), rr(F);
                    fp_divmod(leftover, g, q, rr);
                    leftover = fp_monic(q);
                }
            }
            if (leftover.degree() > 0) next.push_back(leftover);
        }
        work = next;
    }
    return work;
}

} // namespace

std::vector<std::pair<FpPoly, int>> fp_factor(const FpPoly& a0) {
    std::vector<std::pair<FpPoly, int>> result;
    const Fp& F = a0.f;
    FpPoly f = fp_monic(a0);
    int outer_mult = 1;
    while (f.degree() > 0) {
        FpPoly d = fp_derivative(f);
        if (d.is_zero()) {
            f = fp_pth_root(f);
            outer_mult *= (int)F.p;
            continue;
        }
        FpPoly g = fp_gcd(f, d);
        FpPoly w(F), rr(F);
        fp_divmod(f, g, w, rr); // squarefree part
        for (const FpPoly& q : fp_berlekamp(fp_monic(w))) {
            int e = 0;
            for (;;) {
                FpPoly quo(F), rem(F);
                fp_divmod(f, q, quo, rem);
                if (!rem.is_zero()) break;
                f = quo;
                ++e;
            }
            result.push_back({q, e * outer_mult});
        }
        f = fp_monic(f);
    }
    return result;
}

FpPoly fp_reduce(const ZPoly& a, int64_t p) {
    Fp F(p);
    std::vector<int64_t> r(a.c.size());
    for (size_t i = 0; i < a.c.size(); ++i) r[i] = F.reduce(a.c[i]);
    return FpPoly(F, std::move(r));
}

} // namespace toolkit
