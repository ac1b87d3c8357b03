#include "toolkit/numfield/global.hpp"

#include <numeric>

namespace toolkit::numfield {

using padic::ApproxIdempotent;
using padic::center_basis;
using padic::local_invariant;

GaussRat GaussRat::inv() const {
    BigRat n = re * re + im * im;
    if (n == 0) throw domain_error("DivisionByZero", "inverse of zero Gaussian rational");
    return {re / n, -im / n};
}

QuatRat QuatRat::operator*(const QuatRat& o) const {
    return {w * o.w - x * o.x - y * o.y - z * o.z, w * o.x + x * o.w + y * o.z - z * o.y,
            w * o.y - x * o.z + y * o.w + z * o.x, w * o.z + x * o.y - y * o.x + z * o.w};
}

QuatRat QuatRat::inv() const {
    BigRat n = norm();
    if (n == 0) throw domain_error("DivisionByZero", "inverse of zero quaternion");
    QuatRat c = conj();
    return {c.w / n, c.x / n, c.y / n, c.z / n};
}

// --- Hermitian Gram-Schmidt over an involutive scalar ring ---------------

namespace {

template <class S>
struct herm_ops;

template <>
struct herm_ops<BigRat> {
    static BigRat conj(const BigRat& x) { return x; }
    static bool is_zero(const BigRat& x) { return x == 0; }
    static BigRat real(const BigRat& x) { return x; }
    static BigRat mul(const BigRat& a, const BigRat& b) { return a * b; }
    static BigRat inv(const BigRat& x) { return BigRat(1) / x; }
    static FormKind kind() { return FormKind::RealSymmetric; }
};

template <>
struct herm_ops<GaussRat> {
    static GaussRat conj(const GaussRat& x) { return x.conj(); }
    static bool is_zero(const GaussRat& x) { return x.is_zero(); }
    static BigRat real(const GaussRat& x) {
        if (x.im != 0) throw domain_error("BadInput", "Hermitian diagonal must be real");
        return x.re;
    }
    static GaussRat mul(const GaussRat& a, const GaussRat& b) { return a * b; }
    static GaussRat inv(const GaussRat& x) { return x.inv(); }
    static FormKind kind() { return FormKind::ComplexHermitian; }
};

template <>
struct herm_ops<QuatRat> {
    static QuatRat conj(const QuatRat& x) { return x.conj(); }
    static bool is_zero(const QuatRat& x) { return x.is_zero(); }
    static BigRat real(const QuatRat& x) {
        if (x.x != 0 || x.y != 0 || x.z != 0)
            throw domain_error("BadInput", "Hermitian diagonal must be real");
        return x.w;
    }
    static QuatRat mul(const QuatRat& a, const QuatRat& b) { return a * b; }
    static QuatRat inv(const QuatRat& x) { return x.inv(); }
    static FormKind kind() { return FormKind::QuaternionHermitian; }
};

template <class S>
OrbitSignature classify(Mat<S> m) {
    using O = herm_ops<S>;
    size_t n = m.rows();
    if (m.cols() != n) throw domain_error("BadInput", "form must be square");
    // Hermitian check
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            if (!(m(i, j) == O::conj(m(j, i))))
                throw domain_error("BadInput", "form is not Hermitian for its kind");

    OrbitSignature sig;
    sig.kind = O::kind();
    std::vector<bool> done(n, false);
    for (;;) {
        // find a nonzero diagonal entry among the active indices
        size_t piv = n;
        for (size_t i = 0; i < n; ++i)
            if (!done[i] && !O::is_zero(m(i, i))) {
                piv = i;
                break;
            }
        if (piv == n) {
            // all active diagonals vanish; look for an off-diagonal entry
            size_t a = n, b = n;
            for (size_t i = 0; i < n && a == n; ++i) {
                if (done[i]) continue;
                for (size_t j = i + 1; j < n; ++j) {
                    if (done[j]) continue;
                    if (!O::is_zero(m(i, j))) {
                        a = i;
                        b = j;
                        break;
                    }
                }
            }
            if (a == n) break; // remaining block is zero
            // v_a += conj(m_ab) v_b makes the a-diagonal 2|m_ab|^2 > 0
            S c = O::conj(m(a, b));
            for (size_t j = 0; j < n; ++j) m(a, j) = m(a, j) + O::mul(c, m(b, j));
            for (size_t i = 0; i < n; ++i) m(i, a) = m(i, a) + O::mul(m(i, b), O::conj(c));
            continue;
        }
        BigRat dval = O::real(m(piv, piv));
        if (dval > 0) ++sig.dplus;
        else ++sig.dminus;
        S dinv = O::inv(m(piv, piv));
        for (size_t i = 0; i < n; ++i) {
            if (i == piv || done[i] || O::is_zero(m(i, piv))) continue;
            // v_i -= m_{i,piv} d^{-1} v_piv
            S f = O::mul(m(i, piv), dinv);
            for (size_t j = 0; j < n; ++j)
                m(i, j) = m(i, j) - O::mul(f, m(piv, j));
            for (size_t j = 0; j < n; ++j)
                m(j, i) = m(j, i) - O::mul(m(j, piv), O::conj(f));
        }
        done[piv] = true;
    }
    long ranked = sig.dplus + sig.dminus;
    sig.d0 = (long)n - ranked;
    return sig;
}

} // namespace

OrbitSignature signature_classify(const QMat& form) { return classify(form); }
OrbitSignature signature_classify(const Mat<GaussRat>& form) { return classify(form); }
OrbitSignature signature_classify(const Mat<QuatRat>& form) { return classify(form); }

QMat quat_to_regular(const Mat<QuatRat>& m) {
    size_t n = m.rows();
    QMat out(4 * n, 4 * n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < m.cols(); ++j) {
            const QuatRat& q = m(i, j);
            BigRat block[4][4] = {{q.w, -q.x, -q.y, -q.z},
                                  {q.x, q.w, -q.z, q.y},
                                  {q.y, q.z, q.w, -q.x},
                                  {q.z, -q.y, q.x, q.w}};
            for (size_t a = 0; a < 4; ++a)
                for (size_t b = 0; b < 4; ++b) out(4 * i + a, 4 * j + b) = block[a][b];
        }
    return out;
}

Mat<QuatRat> quat_from_regular(const QMat& m) {
    if (m.rows() % 4 != 0 || m.cols() % 4 != 0)
        throw domain_error("BadInput", "regular-representation matrix size must be divisible by 4");
    size_t n = m.rows() / 4, c = m.cols() / 4;
    Mat<QuatRat> out(n, c);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < c; ++j) {
            QuatRat q{m(4 * i, 4 * j), m(4 * i + 1, 4 * j), m(4 * i + 2, 4 * j), m(4 * i + 3, 4 * j)};
            out(i, j) = q;
        }
    // verify the blocks really are regular representations
    QMat back = quat_to_regular(out);
    if (!(back == m))
        throw domain_error("BadInput", "matrix blocks are not quaternion regular representations");
    return out;
}

// --- exact central idempotents --------------------------------------------

std::vector<std::vector<BigRat>> center_idempotents(const StructuredAlgebra& alg) {
    if (!alg.is_semisimple()) throw domain_error("NotSemisimple", "trace form is degenerate");
    QMat zrows = center_basis(alg);
    StructuredAlgebra Z = alg.subalgebra(zrows);
    size_t zn = Z.dim();

    // split the unit by minimal polynomials of center elements
    std::vector<std::vector<BigRat>> idems{Z.unit()};
    for (size_t t = 0; t < zn; ++t) {
        std::vector<BigRat> zt(zn, BigRat(0));
        zt[t] = 1;
        std::vector<std::vector<BigRat>> next;
        for (const auto& u : idems) {
            std::vector<BigRat> v = Z.mul(u, zt);
            // minimal polynomial of v in the block with identity u
            std::vector<std::vector<BigRat>> powers{u};
            std::vector<BigRat> cur = u;
            QPoly minpoly;
            for (size_t deg = 1; deg <= zn + 1; ++deg) {
                cur = Z.mul(cur, v);
                QMat sys(zn, powers.size());
                for (size_t cidx = 0; cidx < powers.size(); ++cidx)
                    for (size_t r = 0; r < zn; ++r) sys(r, cidx) = powers[cidx][r];
                std::vector<BigRat> sol;
                if (solve(sys, cur, sol)) {
                    // check consistency (overdetermined)
                    std::vector<BigRat> chk(zn, BigRat(0));
                    for (size_t cidx = 0; cidx < powers.size(); ++cidx)
                        for (size_t r = 0; r < zn; ++r) chk[r] += sol[cidx] * powers[cidx][r];
                    if (chk == cur) {
                        std::vector<BigRat> mc(powers.size() + 1, BigRat(0));
                        for (size_t kk = 0; kk < sol.size(); ++kk) mc[kk] = -sol[kk];
                        mc[powers.size()] = 1;
                        minpoly = QPoly(std::move(mc));
                        break;
                    }
                }
                powers.push_back(cur);
            }
            if (minpoly.is_zero())
                throw domain_error("Internal", "no minimal polynomial in center block");
            auto fac = q_factor(minpoly);
            for (auto& [f, e] : fac)
                if (e != 1) throw domain_error("NotSemisimple", "center has nilpotents");
            if (fac.size() <= 1) {
                next.push_back(u);
                continue;
            }
            // CRT idempotents: u_i = h_i(v) * (m/f_i)(v) * u with
            // h_i = (m/f_i)^{-1} mod f_i
            for (auto& [f, e] : fac) {
                QPoly cof, rem;
                poly_divmod(minpoly, f, cof, rem);
                QPoly s, tb;
                QPoly g = poly_gcdext(cof, f, s, tb);
                if (g.degree() != 0)
                    throw domain_error("Internal", "center factors not coprime");
                QPoly hi = poly_scale(s, BigRat(1) / g.c[0]);
                QPoly combined = poly_mul(hi, cof);
                // evaluate combined at v within the block (v^0 = u)
                std::vector<BigRat> acc(zn, BigRat(0));
                std::vector<BigRat> pw = u;
                for (size_t kdeg = 0; kdeg < combined.c.size(); ++kdeg) {
                    if (combined.c[kdeg] != 0)
                        for (size_t r = 0; r < zn; ++r) acc[r] += combined.c[kdeg] * pw[r];
                    pw = Z.mul(pw, v);
                }
                next.push_back(std::move(acc));
            }
        }
        idems = std::move(next);
    }
    // sanity: exact idempotents, orthogonal, summing to 1
    std::vector<BigRat> sum(zn, BigRat(0));
    for (size_t a = 0; a < idems.size(); ++a) {
        if (Z.mul(idems[a], idems[a]) != idems[a])
            throw domain_error("Internal", "center idempotent fails e^2 = e");
        for (size_t b = a + 1; b < idems.size(); ++b) {
            auto pr = Z.mul(idems[a], idems[b]);
            for (const BigRat& x : pr)
                if (x != 0) throw domain_error("Internal", "center idempotents not orthogonal");
        }
        for (size_t r = 0; r < zn; ++r) sum[r] += idems[a][r];
    }
    if (sum != Z.unit()) throw domain_error("Internal", "center idempotents do not sum to 1");

    // map back to ambient coordinates
    std::vector<std::vector<BigRat>> out;
    for (const auto& e : idems) {
        std::vector<BigRat> v(alg.dim(), BigRat(0));
        for (size_t i = 0; i < zn; ++i)
            for (size_t k = 0; k < alg.dim(); ++k) v[k] += e[i] * zrows(i, k);
        out.push_back(std::move(v));
    }
    return out;
}

// --- archimedean side ------------------------------------------------------

bool real_splitting(const StructuredAlgebra& alg) {
    if (center_basis(alg).rows() != 1)
        throw domain_error("UnexpectedSignature", "algebra is not central over Q");
    size_t dim = alg.dim();
    long m = 0;
    while ((size_t)((m + 1) * (m + 1)) <= dim) ++m;
    if ((size_t)(m * m) != dim || m % 2 != 0)
        throw domain_error("UnexpectedSignature", "dimension is not (2n)^2");
    long n = m / 2;
    OrbitSignature sig = signature_classify(alg.trace_form());
    if (sig.d0 != 0) throw domain_error("UnexpectedSignature", "trace form is degenerate");
    long plus = 2 * n * n + n, minus = 2 * n * n - n;
    if (sig.dplus == plus && sig.dminus == minus) return true;
    if (sig.dplus == minus && sig.dminus == plus) return false;
    throw domain_error("UnexpectedSignature", "trace-form signature matches neither split case");
}

PlaceCandidates ramified_place_candidates(const StructuredAlgebra& alg,
                                          const std::optional<QMat>& order_basis) {
    size_t n = alg.dim();
    QMat basis(n, n);
    if (order_basis) {
        basis = *order_basis;
    } else {
        // seed a global order: clear denominators of the structure constants
        BigInt den(1);
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j)
                for (size_t k = 0; k < n; ++k) den = ilcm(den, alg.alpha(i, j, k).get_den());
        QMat rows(n + 1, n, BigRat(0));
        for (size_t i = 0; i < n; ++i) rows(i, i) = BigRat(den);
        for (size_t j = 0; j < n; ++j) rows(n, j) = alg.unit()[j];
        BigInt d2(1);
        for (size_t i = 0; i < rows.rows(); ++i)
            for (size_t j = 0; j < n; ++j) d2 = ilcm(d2, rows(i, j).get_den());
        ZMat zi(rows.rows(), n);
        for (size_t i = 0; i < rows.rows(); ++i)
            for (size_t j = 0; j < n; ++j) {
                BigRat v = rows(i, j) * BigRat(d2);
                zi(i, j) = v.get_num();
            }
        auto hnf = hermite_normal_form(zi);
        size_t taken = 0;
        for (size_t i = 0; i < hnf.h.rows() && taken < n; ++i) {
            bool zero = true;
            for (size_t j = 0; j < n; ++j)
                if (hnf.h(i, j) != 0) zero = false;
            if (zero) continue;
            for (size_t j = 0; j < n; ++j) basis(taken, j) = BigRat(hnf.h(i, j), d2);
            ++taken;
        }
        if (taken != n) throw domain_error("Internal", "global order construction failed");
    }
    // trace-form Gram determinant on the order basis
    QMat g(n, n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            g(i, j) = alg.trace_left(alg.mul(basis.row(i), basis.row(j)));
    BigRat det = determinant(g);
    if (det == 0) throw domain_error("DegenerateTraceForm", "trace form discriminant vanishes");
    BigInt disc = abs(det.get_num()) * det.get_den(); // primes of num and den both count
    PlaceCandidates out;
    BigInt rest = disc;
    for (BigInt p(2); p * p <= rest; p = (p == 2) ? BigInt(3) : p + 2) {
        if (imod(rest, p) != 0) continue;
        out.finite.push_back(p);
        while (imod(rest, p) == 0) rest /= p;
    }
    if (rest > 1) out.finite.push_back(rest);
    return out;
}

InvariantTable all_invariants(const StructuredAlgebra& alg) {
    if (center_basis(alg).rows() != 1)
        throw domain_error("BadInput", "all_invariants needs a central simple algebra over Q");
    InvariantTable table;
    size_t dim = alg.dim();
    long m = 0;
    while ((size_t)((m + 1) * (m + 1)) <= dim) ++m;
    if ((size_t)(m * m) != dim)
        throw domain_error("BadInput", "central simple dimension must be a square");
    if (m % 2 == 0) {
        if (!real_splitting(alg)) table["oo"] = {1, 2};
    }
    auto places = ramified_place_candidates(alg);
    for (const BigInt& p : places.finite) {
        ApproxIdempotent one;
        one.element = alg.unit();
        one.ell = p;
        one.precision = 2;
        auto li = local_invariant(alg, p, one);
        if (li.inv_num != 0) table[p.get_str()] = {li.inv_num, li.inv_den};
    }
    return table;
}

GlobalDecomposition decompose(const StructuredAlgebra& alg) {
    if (!alg.is_semisimple()) throw domain_error("NotSemisimple", "trace form is degenerate");
    GlobalDecomposition out;
    auto idems = center_idempotents(alg);
    out.s = (long)idems.size();
    out.idempotents = idems;
    for (const auto& e : idems) {
        // factor subalgebra e*E
        QMat le = alg.left_mult(e);
        // rows of le^T span the image
        QMat lt = le.transpose();
        auto pivots = rref(lt);
        QMat rows(pivots.size(), alg.dim());
        for (size_t i = 0; i < pivots.size(); ++i)
            for (size_t j = 0; j < alg.dim(); ++j) rows(i, j) = lt(i, j);
        StructuredAlgebra Ei = alg.subalgebra(rows);
        long dimE = (long)Ei.dim();
        long z = (long)center_basis(Ei).rows();
        long d = 1;
        InvariantTable table;
        if (Ei.is_commutative()) {
            // field factor: n = 1, d = 1
            if (z != dimE) throw domain_error("Internal", "commutative factor is not its own center");
            out.matrix_sizes.push_back(1);
            out.division_dims.push_back(1);
            out.center_degrees.push_back(z);
            out.invariants.push_back(table);
            continue;
        }
        if (z != 1)
            throw domain_error("UnsupportedBase",
                               "noncommutative factor with center larger than Q (out of scope)");
        table = all_invariants(Ei);
        for (auto& [place, inv] : table) d = std::lcm(d, inv.second);
        long nsq = dimE / (d * d * z);
        if (nsq * d * d * z != dimE)
            throw domain_error("Internal", "factor dimension bookkeeping failed");
        long nn = 0;
        while ((nn + 1) * (nn + 1) <= nsq) ++nn;
        if (nn * nn != nsq) throw domain_error("Internal", "matrix size is not a perfect square");
        out.matrix_sizes.push_back(nn);
        out.division_dims.push_back(d);
        out.center_degrees.push_back(z);
        out.invariants.push_back(table);
    }
    return out;
}

bool kth_power_divisibility(const GlobalDecomposition& dec, long k) {
    if (k <= 0) throw domain_error("BadInput", "k must be positive");
    for (long n : dec.matrix_sizes)
        if (n % k != 0) return false;
    return true;
}

} // namespace toolkit::numfield
