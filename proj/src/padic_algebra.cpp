#include "toolkit/padic/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

namespace toolkit::padic {

// --- StructuredAlgebra ---------------------------------------------------

StructuredAlgebra::StructuredAlgebra(size_t dim, std::vector<BigRat> mult)
    : n_(dim), mult_(std::move(mult)) {
    if (mult_.size() != n_ * n_ * n_)
        throw domain_error("BadInput", "structure constant table has wrong size");
    // solve for the unit: sum_i u_i alpha_ijk = delta_jk
    QMat sys(n_ * n_, n_);
    std::vector<BigRat> rhs(n_ * n_, BigRat(0));
    for (size_t j = 0; j < n_; ++j)
        for (size_t k = 0; k < n_; ++k) {
            for (size_t i = 0; i < n_; ++i) sys(j * n_ + k, i) = alpha(i, j, k);
            rhs[j * n_ + k] = (j == k) ? 1 : 0;
        }
    if (!solve(sys, rhs, unit_))
        throw domain_error("NotUnital", "multiplication table admits no left unit");
}

std::vector<BigRat> StructuredAlgebra::mul(const std::vector<BigRat>& x,
                                           const std::vector<BigRat>& y) const {
    std::vector<BigRat> out(n_, BigRat(0));
    for (size_t i = 0; i < n_; ++i) {
        if (x[i] == 0) continue;
        for (size_t j = 0; j < n_; ++j) {
            if (y[j] == 0) continue;
            BigRat f = x[i] * y[j];
            for (size_t k = 0; k < n_; ++k) {
                const BigRat& a = alpha(i, j, k);
                if (a != 0) out[k] += f * a;
            }
        }
    }
    return out;
}

QMat StructuredAlgebra::left_mult(const std::vector<BigRat>& x) const {
    QMat m(n_, n_);
    for (size_t k = 0; k < n_; ++k)
        for (size_t j = 0; j < n_; ++j) {
            BigRat s(0);
            for (size_t i = 0; i < n_; ++i)
                if (x[i] != 0) s += x[i] * alpha(i, j, k);
            m(k, j) = s;
        }
    return m;
}

QMat StructuredAlgebra::right_mult(const std::vector<BigRat>& x) const {
    QMat m(n_, n_);
    for (size_t k = 0; k < n_; ++k)
        for (size_t i = 0; i < n_; ++i) {
            BigRat s(0);
            for (size_t j = 0; j < n_; ++j)
                if (x[j] != 0) s += x[j] * alpha(i, j, k);
            m(k, i) = s;
        }
    return m;
}

BigRat StructuredAlgebra::trace_left(const std::vector<BigRat>& x) const {
    BigRat t(0);
    for (size_t i = 0; i < n_; ++i) {
        if (x[i] == 0) continue;
        BigRat tau(0);
        for (size_t k = 0; k < n_; ++k) tau += alpha(i, k, k);
        t += x[i] * tau;
    }
    return t;
}

QMat StructuredAlgebra::trace_form() const {
    std::vector<BigRat> tau(n_, BigRat(0));
    for (size_t i = 0; i < n_; ++i)
        for (size_t k = 0; k < n_; ++k) tau[i] += alpha(i, k, k);
    QMat t(n_, n_);
    for (size_t i = 0; i < n_; ++i)
        for (size_t j = 0; j < n_; ++j) {
            BigRat s(0);
            for (size_t k = 0; k < n_; ++k)
                if (alpha(i, j, k) != 0) s += alpha(i, j, k) * tau[k];
            t(i, j) = s;
        }
    return t;
}

bool StructuredAlgebra::is_commutative() const {
    for (size_t i = 0; i < n_; ++i)
        for (size_t j = i + 1; j < n_; ++j)
            for (size_t k = 0; k < n_; ++k)
                if (alpha(i, j, k) != alpha(j, i, k)) return false;
    return true;
}

bool StructuredAlgebra::is_semisimple() const { return determinant(trace_form()) != 0; }

void StructuredAlgebra::verify() const {
    for (size_t i = 0; i < n_; ++i)
        for (size_t j = 0; j < n_; ++j) {
            std::vector<BigRat> ei(n_, BigRat(0)), ej(n_, BigRat(0));
            ei[i] = 1;
            ej[j] = 1;
            std::vector<BigRat> eij = mul(ei, ej);
            for (size_t k = 0; k < n_; ++k) {
                std::vector<BigRat> ek(n_, BigRat(0));
                ek[k] = 1;
                if (mul(eij, ek) != mul(ei, mul(ej, ek)))
                    throw domain_error("NotClosed", "associativity fails on basis triple");
            }
        }
    for (size_t j = 0; j < n_; ++j) {
        std::vector<BigRat> ej(n_, BigRat(0));
        ej[j] = 1;
        if (mul(unit_, ej) != ej || mul(ej, unit_) != ej)
            throw domain_error("NotUnital", "solved unit is not two-sided");
    }
}

StructuredAlgebra StructuredAlgebra::subalgebra(const QMat& rows) const {
    size_t m = rows.rows();
    QMat sysT = rows.transpose();
    std::vector<BigRat> mult(m * m * m, BigRat(0));
    for (size_t a = 0; a < m; ++a)
        for (size_t b = 0; b < m; ++b) {
            std::vector<BigRat> prod = mul(rows.row(a), rows.row(b));
            std::vector<BigRat> c;
            if (!solve(sysT, prod, c))
                throw domain_error("NotClosed", "span is not multiplicatively closed");
            for (size_t k = 0; k < n_; ++k) {
                BigRat s(0);
                for (size_t i = 0; i < m; ++i) s += c[i] * rows(i, k);
                if (s != prod[k])
                    throw domain_error("NotClosed", "span is not multiplicatively closed");
            }
            for (size_t k = 0; k < m; ++k) mult[(a * m + b) * m + k] = c[k];
        }
    return StructuredAlgebra(m, std::move(mult));
}

StructuredAlgebra StructuredAlgebra::matrix_algebra(size_t n) {
    size_t d = n * n;
    std::vector<BigRat> mult(d * d * d, BigRat(0));
    auto idx = [&](size_t a, size_t b) { return a * n + b; };
    for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b)
            for (size_t c = 0; c < n; ++c)
                for (size_t e = 0; e < n; ++e)
                    if (b == c) mult[(idx(a, b) * d + idx(c, e)) * d + idx(a, e)] = 1;
    return StructuredAlgebra(d, std::move(mult));
}

StructuredAlgebra StructuredAlgebra::quaternion(const BigRat& a, const BigRat& b) {
    // basis 1, i, j, k with i^2 = a, j^2 = b, ij = k = -ji
    std::vector<BigRat> m(64, BigRat(0));
    auto set = [&](size_t x, size_t y, size_t k, const BigRat& v) { m[(x * 4 + y) * 4 + k] = v; };
    for (size_t x = 0; x < 4; ++x) {
        set(0, x, x, 1);
        if (x) set(x, 0, x, 1);
    }
    set(1, 1, 0, a);
    set(2, 2, 0, b);
    set(3, 3, 0, -a * b);
    set(1, 2, 3, 1);
    set(2, 1, 3, -1);
    set(1, 3, 2, a);
    set(3, 1, 2, -a);
    set(2, 3, 1, -b);
    set(3, 2, 1, b);
    return StructuredAlgebra(4, std::move(m));
}

StructuredAlgebra StructuredAlgebra::from_polynomial(const QPoly& f) {
    long d = f.degree();
    if (d < 1) throw domain_error("BadInput", "polynomial algebra needs positive degree");
    QPoly monic = poly_scale(f, BigRat(1) / BigRat(f.lead()));
    std::vector<std::vector<BigRat>> pw;
    std::vector<BigRat> cur((size_t)d, BigRat(0));
    cur[0] = 1;
    for (long e = 0; e <= 2 * d - 2; ++e) {
        pw.push_back(cur);
        std::vector<BigRat> next((size_t)d, BigRat(0));
        for (long i = 0; i < d - 1; ++i) next[(size_t)i + 1] = cur[(size_t)i];
        BigRat lead = cur[(size_t)d - 1];
        if (lead != 0)
            for (long i = 0; i < d; ++i) next[(size_t)i] -= lead * monic.c[(size_t)i];
        cur = next;
    }
    std::vector<BigRat> m((size_t)(d * d * d), BigRat(0));
    for (long i = 0; i < d; ++i)
        for (long j = 0; j < d; ++j)
            for (long k = 0; k < d; ++k)
                m[(size_t)((i * d + j) * d + k)] = pw[(size_t)(i + j)][(size_t)k];
    return StructuredAlgebra((size_t)d, std::move(m));
}

StructuredAlgebra StructuredAlgebra::direct_sum(const StructuredAlgebra& a,
                                                const StructuredAlgebra& b) {
    size_t n = a.dim() + b.dim();
    std::vector<BigRat> m(n * n * n, BigRat(0));
    for (size_t i = 0; i < a.dim(); ++i)
        for (size_t j = 0; j < a.dim(); ++j)
            for (size_t k = 0; k < a.dim(); ++k) m[(i * n + j) * n + k] = a.alpha(i, j, k);
    for (size_t i = 0; i < b.dim(); ++i)
        for (size_t j = 0; j < b.dim(); ++j)
            for (size_t k = 0; k < b.dim(); ++k)
                m[((a.dim() + i) * n + a.dim() + j) * n + a.dim() + k] = b.alpha(i, j, k);
    return StructuredAlgebra(n, std::move(m));
}

// --- orders --------------------------------------------------------------

namespace {

QMat lattice_normalize(const QMat& rows, size_t n) {
    BigInt den(1);
    for (size_t i = 0; i < rows.rows(); ++i)
        for (size_t j = 0; j < rows.cols(); ++j) den = ilcm(den, rows(i, j).get_den());
    ZMat zi(rows.rows(), rows.cols());
    for (size_t i = 0; i < rows.rows(); ++i)
        for (size_t j = 0; j < rows.cols(); ++j) {
            BigRat v = rows(i, j) * BigRat(den);
            zi(i, j) = v.get_num();
        }
    auto hnf = hermite_normal_form(zi);
    QMat out(n, rows.cols());
    size_t taken = 0;
    for (size_t i = 0; i < hnf.h.rows() && taken < n; ++i) {
        bool zero = true;
        for (size_t j = 0; j < hnf.h.cols(); ++j)
            if (hnf.h(i, j) != 0) zero = false;
        if (zero) continue;
        for (size_t j = 0; j < hnf.h.cols(); ++j) out(taken, j) = BigRat(hnf.h(i, j), den);
        ++taken;
    }
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < out.cols(); ++j) out(i, j).canonicalize();
    if (taken != n) throw domain_error("BadInput", "lattice spanning set has deficient rank");
    return out;
}

bool ell_integral(const BigRat& x, const BigInt& ell) {
    return x == 0 || rat_valuation(x, ell) >= 0;
}

std::vector<BigRat> coords_in_basis(const QMat& basis, const std::vector<BigRat>& v) {
    std::vector<BigRat> c;
    if (!solve(basis.transpose(), v, c))
        throw domain_error("Internal", "full-rank basis failed to solve");
    return c;
}

int64_t rat_mod_small(const BigRat& x, int64_t m) {
    BigInt num = imod(x.get_num(), BigInt(m));
    BigInt den = imod(x.get_den(), BigInt(m));
    BigInt s, t;
    if (igcdext(den, BigInt(m), s, t) != 1)
        throw domain_error("Internal", "denominator not invertible mod ell^k");
    return imod(num * s, BigInt(m)).get_si();
}

// visit F_l-subspaces of F_l^n of dimension m via echelon bases; stop early
// when the visitor returns true
void enum_subspaces(Fp f, size_t n, size_t m,
                    const std::function<bool(const std::vector<std::vector<int64_t>>&)>& visit) {
    std::vector<size_t> piv(m);
    std::function<bool(size_t, size_t)> choose = [&](size_t pos, size_t start) -> bool {
        if (pos == m) {
            std::vector<std::pair<size_t, size_t>> freepos;
            std::vector<bool> is_piv(n, false);
            for (size_t p : piv) is_piv[p] = true;
            for (size_t i = 0; i < m; ++i)
                for (size_t c = piv[i] + 1; c < n; ++c)
                    if (!is_piv[c]) freepos.push_back({i, c});
            std::vector<std::vector<int64_t>> rows(m, std::vector<int64_t>(n, 0));
            for (size_t i = 0; i < m; ++i) rows[i][piv[i]] = 1;
            std::vector<int64_t> vals(freepos.size(), 0);
            for (;;) {
                for (size_t i = 0; i < freepos.size(); ++i)
                    rows[freepos[i].first][freepos[i].second] = vals[i];
                if (visit(rows)) return true;
                size_t carry = 0;
                while (carry < vals.size()) {
                    if (++vals[carry] < f.p) break;
                    vals[carry] = 0;
                    ++carry;
                }
                if (carry >= vals.size()) break;
                if (vals.empty()) break;
            }
            return false;
        }
        for (size_t c = start; c + (m - pos - 1) < n; ++c) {
            piv[pos] = c;
            if (choose(pos + 1, c + 1)) return true;
        }
        return false;
    };
    choose(0, 0);
}

// arithmetic in an order modulo ell^prec (structure constants l-integral)
struct OrderModRing {
    size_t n;
    BigInt mod;
    std::vector<BigInt> c;
    std::vector<BigInt> unit;

    OrderModRing(const LocalizedOrder& ord, long prec) {
        n = ord.alg.dim();
        mod = ipow(ord.ell, (unsigned long)prec);
        auto cr = order_structure_constants(ord);
        c.resize(cr.size());
        for (size_t t = 0; t < cr.size(); ++t) c[t] = reduce(cr[t]);
        auto uc = coords_in_basis(ord.basis, ord.alg.unit());
        unit.resize(n);
        for (size_t i = 0; i < n; ++i) unit[i] = reduce(uc[i]);
    }

    BigInt reduce(const BigRat& x) const {
        BigInt num = imod(x.get_num(), mod);
        BigInt den = imod(x.get_den(), mod), s, t;
        if (igcdext(den, mod, s, t) != 1)
            throw domain_error("Internal", "denominator not invertible mod ell^k");
        return imod(num * s, mod);
    }

    std::vector<BigInt> mul(const std::vector<BigInt>& x, const std::vector<BigInt>& y) const {
        std::vector<BigInt> out(n, BigInt(0));
        for (size_t i = 0; i < n; ++i) {
            if (x[i] == 0) continue;
            for (size_t j = 0; j < n; ++j) {
                if (y[j] == 0) continue;
                BigInt f = imod(x[i] * y[j], mod);
                for (size_t k = 0; k < n; ++k) {
                    const BigInt& a = c[(i * n + j) * n + k];
                    if (a != 0) out[k] = imod(out[k] + f * a, mod);
                }
            }
        }
        return out;
    }

    std::vector<BigInt> pow_ell(const std::vector<BigInt>& x, int64_t p) const {
        std::vector<BigInt> acc = unit;
        std::vector<BigInt> pw = x;
        int64_t e = p;
        while (e > 0) {
            if (e & 1) acc = mul(acc, pw);
            pw = mul(pw, pw);
            e >>= 1;
        }
        return acc;
    }
};

} // namespace

bool order_contains(const LocalizedOrder& ord, const std::vector<BigRat>& v) {
    auto c = coords_in_basis(ord.basis, v);
    for (const BigRat& x : c)
        if (!ell_integral(x, ord.ell)) return false;
    return true;
}

std::vector<BigRat> order_structure_constants(const LocalizedOrder& ord) {
    size_t n = ord.alg.dim();
    std::vector<BigRat> c(n * n * n);
    QMat bt = ord.basis.transpose();
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            std::vector<BigRat> prod = ord.alg.mul(ord.basis.row(i), ord.basis.row(j));
            std::vector<BigRat> cc;
            if (!solve(bt, prod, cc)) throw domain_error("Internal", "order basis degenerate");
            for (size_t k = 0; k < n; ++k) c[(i * n + j) * n + k] = cc[k];
        }
    return c;
}

LocalizedOrder seed_order(const StructuredAlgebra& alg, const BigInt& ell) {
    size_t n = alg.dim();
    long r = 0;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            for (size_t k = 0; k < n; ++k) {
                const BigRat& a = alg.alpha(i, j, k);
                if (a == 0) continue;
                long v = rat_valuation(a, ell);
                if (-v > r) r = -v;
            }
    BigRat scale(ipow(ell, (unsigned long)r));
    QMat rows(n + 1, n, BigRat(0));
    for (size_t i = 0; i < n; ++i) rows(i, i) = scale;
    for (size_t j = 0; j < n; ++j) rows(n, j) = alg.unit()[j];
    LocalizedOrder ord{alg, ell, lattice_normalize(rows, n)};
    auto c = order_structure_constants(ord);
    for (const BigRat& x : c)
        if (!ell_integral(x, ell))
            throw domain_error("NotClosed", "seed order is not multiplicatively closed");
    return ord;
}

namespace {

// J = l-radical of the order as a full-rank lattice (preimage of J(O/lO))
QMat ell_radical_lattice(const LocalizedOrder& ord) {
    size_t n = ord.alg.dim();
    FpAlgebra a1 = order_mod_ell(ord);
    auto rad = fp_algebra_radical(a1);
    QMat rows(rad.size() + n, n);
    for (size_t t = 0; t < rad.size(); ++t)
        for (size_t j = 0; j < n; ++j) {
            BigRat s(0);
            for (size_t i = 0; i < n; ++i)
                if (rad[t][i]) s += BigRat((long)rad[t][i]) * ord.basis(i, j);
            rows(t, j) = s;
        }
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) rows(rad.size() + i, j) = BigRat(ord.ell) * ord.basis(i, j);
    return lattice_normalize(rows, n);
}

// y-space of the idealizer step: y in F_l^n with (1/l)(y . B) J <= J on both
// sides; the zero space means Id(J) = O
std::vector<std::vector<int64_t>> idealizer_directions(const LocalizedOrder& ord, const QMat& jbasis) {
    size_t n = ord.alg.dim();
    Fp F(ord.ell.get_si());
    QMat jt = jbasis.transpose();
    std::vector<FpMat> rowsets;
    FpMat sys(F, 2 * n * n, n);
    size_t r = 0;
    for (size_t t = 0; t < n; ++t) {
        for (size_t i = 0; i < n; ++i) {
            // B_i * J_t and J_t * B_i, coordinates in J (integral since J is
            // a two-sided O-ideal)
            auto left = ord.alg.mul(ord.basis.row(i), jbasis.row(t));
            auto right = ord.alg.mul(jbasis.row(t), ord.basis.row(i));
            std::vector<BigRat> cl, cr;
            if (!solve(jt, left, cl) || !solve(jt, right, cr))
                throw domain_error("Internal", "radical lattice degenerate");
            for (size_t k = 0; k < n; ++k) {
                if (!ell_integral(cl[k], ord.ell) || !ell_integral(cr[k], ord.ell))
                    throw domain_error("Internal", "radical is not a two-sided ideal");
            }
            for (size_t k = 0; k < n; ++k) {
                sys(2 * (t * n + k), i) = rat_mod_small(cl[k], F.p);
                sys(2 * (t * n + k) + 1, i) = rat_mod_small(cr[k], F.p);
            }
        }
        r += 2 * n;
    }
    (void)r;
    (void)rowsets;
    return fp_kernel(sys);
}

} // namespace

LocalizedOrder maximal_order(const LocalizedOrder& input) {
    const BigInt& ell = input.ell;
    if (determinant(input.alg.trace_form()) == 0)
        throw domain_error("DegenerateTraceForm", "trace pairing singular: algebra not semisimple");
    size_t n = input.alg.dim();
    Fp F(ell.get_si());
    LocalizedOrder ord = input;
    {
        auto c = order_structure_constants(ord);
        for (const BigRat& x : c)
            if (!ell_integral(x, ell))
                throw domain_error("NotClosed", "input lattice is not an order");
    }

    // trace-dual of the seed order bounds every order containing it
    QMat dual(n, n);
    {
        QMat g(n, n);
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j)
                g(i, j) = input.alg.trace_left(input.alg.mul(input.basis.row(i), input.basis.row(j)));
        dual = inverse(g) * input.basis;
    }
    auto within_dual = [&](const QMat& rows) {
        QMat dt = dual.transpose();
        for (size_t i = 0; i < rows.rows(); ++i) {
            std::vector<BigRat> c;
            if (!solve(dt, rows.row(i), c)) return false;
            for (const BigRat& x : c)
                if (!ell_integral(x, ell)) return false;
        }
        return true;
    };

    for (int round = 0;; ++round) {
        if (round > 512)
            throw domain_error("Internal", "maximal order enlargement failed to stabilize");

        // phase 1: radical idealizer
        QMat jbasis = ell_radical_lattice(ord);
        auto dirs = idealizer_directions(ord, jbasis);
        if (!dirs.empty()) {
            QMat rows(n + dirs.size(), n);
            for (size_t i = 0; i < n; ++i)
                for (size_t j = 0; j < n; ++j) rows(i, j) = ord.basis(i, j);
            for (size_t t = 0; t < dirs.size(); ++t)
                for (size_t j = 0; j < n; ++j) {
                    BigRat s(0);
                    for (size_t i = 0; i < n; ++i)
                        if (dirs[t][i]) s += BigRat((long)dirs[t][i]) * ord.basis(i, j);
                    rows(n + t, j) = s / BigRat(ell);
                }
            QMat enlarged = lattice_normalize(rows, n);
            if (!(enlarged == ord.basis)) {
                ord.basis = enlarged;
                continue;
            }
        }

        // phase 2: cyclic candidates x = (1/l) y.B; any enlargement order
        // contains one whose ring closure is again an order
        OrderModRing ringn(ord, (long)n + 1);
        bool enlarged = false;
        std::vector<int64_t> y(n, 0);
        auto advance = [&]() {
            size_t carry = 0;
            while (carry < n) {
                if (++y[carry] < F.p) return true;
                y[carry] = 0;
                ++carry;
            }
            return false;
        };
        while (!enlarged && advance()) {
            // take one representative per projective line: first nonzero = 1
            size_t lead = 0;
            while (lead < n && y[lead] == 0) ++lead;
            if (y[lead] != 1) continue;
            // cheap integrality filter: Tr(x^k) must be l-integral, i.e.
            // Tr(v^k) = 0 mod l^k for v = y.B
            {
                std::vector<BigInt> v(n);
                for (size_t i = 0; i < n; ++i) v[i] = y[i];
                std::vector<BigRat> tau(n);
                for (size_t i = 0; i < n; ++i) tau[i] = ord.alg.trace_left(ord.basis.row(i));
                std::vector<BigInt> cur = v;
                bool ok = true;
                BigInt lk = ell;
                for (size_t k = 1; k <= n && ok; ++k) {
                    // trace of cur in ambient terms: sum cur_i * Tr(B_i)
                    BigRat tr(0);
                    for (size_t i = 0; i < n; ++i)
                        if (cur[i] != 0) tr += BigRat(imod(cur[i], ringn.mod)) * tau[i];
                    // need v_l(tr) >= k
                    if (tr != 0) {
                        BigRat scaled = tr / BigRat(lk);
                        if (!ell_integral(scaled, ell)) ok = false;
                    }
                    if (k < n) {
                        cur = ringn.mul(cur, v);
                        lk *= ell;
                    }
                }
                if (!ok) continue;
            }
            // ring closure of O[x]
            QMat rows(n + 1, n);
            for (size_t i = 0; i < n; ++i)
                for (size_t j = 0; j < n; ++j) rows(i, j) = ord.basis(i, j);
            for (size_t j = 0; j < n; ++j) {
                BigRat s(0);
                for (size_t i = 0; i < n; ++i)
                    if (y[i]) s += BigRat((long)y[i]) * ord.basis(i, j);
                rows(n, j) = s / BigRat(ell);
            }
            QMat L = lattice_normalize(rows, n);
            if (L == ord.basis) continue;
            bool is_order = false;
            for (size_t it = 0; it < 64; ++it) {
                if (!within_dual(L)) break;
                QMat prods(n + n * n, n);
                for (size_t i = 0; i < n; ++i)
                    for (size_t j = 0; j < n; ++j) prods(i, j) = L(i, j);
                for (size_t i = 0; i < n; ++i)
                    for (size_t j = 0; j < n; ++j) {
                        auto pr = ord.alg.mul(L.row(i), L.row(j));
                        for (size_t k = 0; k < n; ++k) prods(n + i * n + j, k) = pr[k];
                    }
                QMat L2 = lattice_normalize(prods, n);
                if (L2 == L) {
                    is_order = true;
                    break;
                }
                L = L2;
            }
            if (is_order && within_dual(L)) {
                ord.basis = L;
                enlarged = true;
            }
        }
        if (!enlarged) return ord;
    }
}

bool has_enlargement_by_subspace_sweep(const LocalizedOrder& ord) {
    const BigInt& ell = ord.ell;
    size_t n = ord.alg.dim();
    Fp F(ell.get_si());
    int64_t ell2 = F.p * F.p;
    auto c = order_structure_constants(ord);
    std::vector<int64_t> c2(n * n * n);
    for (size_t t = 0; t < c.size(); ++t) c2[t] = rat_mod_small(c[t], ell2);

    auto closed = [&](const std::vector<std::vector<int64_t>>& w) -> bool {
        FpMat wm(F, w.size(), n);
        for (size_t i = 0; i < w.size(); ++i)
            for (size_t j = 0; j < n; ++j) wm(i, j) = w[i][j];
        auto wech = fp_row_basis(wm);
        int64_t p = F.p;
        for (const auto& wa : w)
            for (const auto& wb : w) {
                std::vector<int64_t> v(n, 0);
                for (size_t i = 0; i < n; ++i) {
                    if (!wa[i]) continue;
                    for (size_t j = 0; j < n; ++j) {
                        if (!wb[j]) continue;
                        int64_t fij = (wa[i] * wb[j]) % ell2;
                        for (size_t k = 0; k < n; ++k)
                            v[k] = (v[k] + fij * c2[(i * n + j) * n + k]) % ell2;
                    }
                }
                std::vector<int64_t> u(n);
                for (size_t k = 0; k < n; ++k) {
                    if (v[k] % p != 0) return false;
                    u[k] = (v[k] / p) % p;
                }
                if (!fp_in_span(wech, u, F)) return false;
            }
        for (const auto& wa : w)
            for (size_t j = 0; j < n; ++j) {
                std::vector<int64_t> v1(n, 0), v2(n, 0);
                for (size_t i = 0; i < n; ++i) {
                    if (!wa[i]) continue;
                    for (size_t k = 0; k < n; ++k) {
                        v1[k] = (v1[k] + wa[i] * c2[(i * n + j) * n + k]) % ell2;
                        v2[k] = (v2[k] + wa[i] * c2[(j * n + i) * n + k]) % ell2;
                    }
                }
                for (auto& x : v1) x %= p;
                for (auto& x : v2) x %= p;
                if (!fp_in_span(wech, v1, F)) return false;
                if (!fp_in_span(wech, v2, F)) return false;
            }
        return true;
    };

    for (size_t m = 1; m <= n; ++m) {
        bool found = false;
        enum_subspaces(F, n, m, [&](const std::vector<std::vector<int64_t>>& w) {
            if (closed(w)) {
                found = true;
                return true;
            }
            return false;
        });
        if (found) return true;
    }
    return false;
}

QMat center_basis(const StructuredAlgebra& alg) {
    size_t n = alg.dim();
    QMat sys(n * n, n, BigRat(0));
    size_t r = 0;
    for (size_t j = 0; j < n; ++j)
        for (size_t k = 0; k < n; ++k) {
            for (size_t i = 0; i < n; ++i) sys(r, i) = alg.alpha(i, j, k) - alg.alpha(j, i, k);
            ++r;
        }
    auto ker = kernel_basis(sys);
    QMat rows(ker.size(), n);
    for (size_t i = 0; i < ker.size(); ++i)
        for (size_t j = 0; j < n; ++j) rows(i, j) = ker[i][j];
    return rows;
}

// --- finite algebras -----------------------------------------------------

std::vector<int64_t> FpAlgebra::mul(const std::vector<int64_t>& x,
                                    const std::vector<int64_t>& y) const {
    std::vector<int64_t> out(dim, 0);
    for (size_t i = 0; i < dim; ++i) {
        if (!x[i]) continue;
        for (size_t j = 0; j < dim; ++j) {
            if (!y[j]) continue;
            int64_t fij = f.mul(x[i], y[j]);
            for (size_t k = 0; k < dim; ++k)
                out[k] = f.add(out[k], f.mul(fij, alpha(i, j, k)));
        }
    }
    return out;
}

FpMat FpAlgebra::left_mult(const std::vector<int64_t>& x) const {
    FpMat m(f, dim, dim);
    for (size_t k = 0; k < dim; ++k)
        for (size_t j = 0; j < dim; ++j) {
            int64_t s = 0;
            for (size_t i = 0; i < dim; ++i)
                if (x[i]) s = f.add(s, f.mul(x[i], alpha(i, j, k)));
            m(k, j) = s;
        }
    return m;
}

FpMat FpAlgebra::right_mult(const std::vector<int64_t>& x) const {
    FpMat m(f, dim, dim);
    for (size_t k = 0; k < dim; ++k)
        for (size_t i = 0; i < dim; ++i) {
            int64_t s = 0;
            for (size_t j = 0; j < dim; ++j)
                if (x[j]) s = f.add(s, f.mul(x[j], alpha(i, j, k)));
            m(k, i) = s;
        }
    return m;
}

std::vector<int64_t> FpAlgebra::pow(std::vector<int64_t> x, BigInt e) const {
    std::vector<int64_t> r = unit;
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) r = mul(r, x);
        x = mul(x, x);
        e >>= 1;
    }
    return r;
}

FpAlgebra order_mod_ell(const LocalizedOrder& ord) {
    size_t n = ord.alg.dim();
    int64_t p = ord.ell.get_si();
    FpAlgebra a{Fp(p), n, std::vector<int64_t>(n * n * n), {}};
    auto c = order_structure_constants(ord);
    for (size_t t = 0; t < c.size(); ++t) a.mult[t] = rat_mod_small(c[t], p);
    auto uc = coords_in_basis(ord.basis, ord.alg.unit());
    a.unit.resize(n);
    for (size_t i = 0; i < n; ++i) {
        if (!ell_integral(uc[i], ord.ell))
            throw domain_error("NotClosed", "order does not contain the unit");
        a.unit[i] = rat_mod_small(uc[i], p);
    }
    return a;
}

// Friedl-Ronyai iterated p-trace radical.
std::vector<std::vector<int64_t>> fp_algebra_radical(const FpAlgebra& a) {
    size_t n = a.dim;
    int64_t p = a.f.p;
    auto lift_matrix = [&](const std::vector<int64_t>& x) {
        ZMat m(n, n);
        for (size_t k = 0; k < n; ++k)
            for (size_t j = 0; j < n; ++j) {
                int64_t s = 0;
                for (size_t i = 0; i < n; ++i)
                    if (x[i]) s = a.f.add(s, a.f.mul(x[i], a.alpha(i, j, k)));
                m(k, j) = s;
            }
        return m;
    };
    auto tau = [&](const std::vector<int64_t>& x, long i) -> int64_t {
        ZMat m = lift_matrix(x);
        ZMat r = ZMat::identity(n, BigInt(1), BigInt(0));
        ZMat b = m;
        BigInt ee = ipow(BigInt(p), (unsigned long)i);
        while (ee > 0) {
            if (mpz_odd_p(ee.get_mpz_t())) r = r * b;
            b = b * b;
            ee >>= 1;
        }
        BigInt tr(0);
        for (size_t k = 0; k < n; ++k) tr += r(k, k);
        BigInt mod = ipow(BigInt(p), (unsigned long)(i + 1));
        BigInt red = imod(tr, mod);
        BigInt pi = ipow(BigInt(p), (unsigned long)i);
        if (imod(red, pi) != 0)
            throw domain_error("Internal", "p-trace not divisible as expected");
        return imod(red / pi, BigInt(p)).get_si();
    };

    long k = 0;
    {
        int64_t pk = 1;
        while ((size_t)pk < n) {
            pk *= p;
            ++k;
        }
    }
    std::vector<std::vector<int64_t>> basis(n, std::vector<int64_t>(n, 0));
    for (size_t i = 0; i < n; ++i) basis[i][i] = 1;

    for (long i = 0; i <= k; ++i) {
        if (basis.empty()) break;
        FpMat sys(a.f, basis.size(), basis.size());
        for (size_t yi = 0; yi < basis.size(); ++yi)
            for (size_t xi = 0; xi < basis.size(); ++xi)
                sys(yi, xi) = tau(a.mul(basis[xi], basis[yi]), i);
        auto ker = fp_kernel(sys);
        std::vector<std::vector<int64_t>> next;
        for (const auto& kv : ker) {
            std::vector<int64_t> v(n, 0);
            for (size_t t = 0; t < basis.size(); ++t)
                if (kv[t])
                    for (size_t j = 0; j < n; ++j) v[j] = a.f.add(v[j], a.f.mul(kv[t], basis[t][j]));
            next.push_back(std::move(v));
        }
        basis = std::move(next);
    }
    if (basis.empty()) return basis;
    FpMat m(a.f, basis.size(), n);
    for (size_t i = 0; i < basis.size(); ++i)
        for (size_t j = 0; j < n; ++j) m(i, j) = basis[i][j];
    return fp_row_basis(m);
}

FpQuotient fp_algebra_quotient(const FpAlgebra& a, const std::vector<std::vector<int64_t>>& ideal) {
    size_t n = a.dim;
    std::vector<std::vector<int64_t>> ech;
    if (!ideal.empty()) {
        FpMat m(a.f, ideal.size(), n);
        for (size_t i = 0; i < ideal.size(); ++i)
            for (size_t j = 0; j < n; ++j) m(i, j) = ideal[i][j];
        ech = fp_row_basis(m);
    }
    std::vector<bool> is_piv(n, false);
    for (const auto& r : ech) {
        size_t pc = 0;
        while (pc < n && r[pc] == 0) ++pc;
        if (pc < n) is_piv[pc] = true;
    }
    std::vector<size_t> comp;
    for (size_t j = 0; j < n; ++j)
        if (!is_piv[j]) comp.push_back(j);
    size_t m = comp.size();

    FpMat proj(a.f, m, n);
    for (size_t j = 0; j < n; ++j) {
        std::vector<int64_t> v(n, 0);
        v[j] = 1;
        for (const auto& r : ech) {
            size_t pc = 0;
            while (pc < n && r[pc] == 0) ++pc;
            if (pc == n || v[pc] == 0) continue;
            int64_t fac = a.f.mul(v[pc], a.f.inv(r[pc]));
            for (size_t t = 0; t < n; ++t) v[t] = a.f.sub(v[t], a.f.mul(fac, r[t]));
        }
        for (size_t i = 0; i < m; ++i) proj(i, j) = v[comp[i]];
    }
    FpMat lift(a.f, n, m);
    for (size_t i = 0; i < m; ++i) lift(comp[i], i) = 1;

    FpAlgebra q{a.f, m, std::vector<int64_t>(m * m * m, 0), {}};
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < m; ++j) {
            std::vector<int64_t> xi(n, 0), xj(n, 0);
            xi[comp[i]] = 1;
            xj[comp[j]] = 1;
            auto prod = a.mul(xi, xj);
            auto pc = proj.apply(prod);
            for (size_t kk = 0; kk < m; ++kk) q.mult[(i * m + j) * m + kk] = pc[kk];
        }
    q.unit = proj.apply(a.unit);
    return FpQuotient{std::move(q), std::move(proj), std::move(lift)};
}

FpCut fp_algebra_cut(const FpAlgebra& a, const std::vector<int64_t>& idem) {
    size_t n = a.dim;
    FpMat span(a.f, n, n);
    for (size_t j = 0; j < n; ++j) {
        std::vector<int64_t> ej(n, 0);
        ej[j] = 1;
        auto v = a.mul(idem, ej);
        for (size_t t = 0; t < n; ++t) span(j, t) = v[t];
    }
    auto rows = fp_row_basis(span);
    size_t m = rows.size();
    FpMat inc(a.f, m, n);
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < n; ++j) inc(i, j) = rows[i][j];
    FpMat incT(a.f, n, m);
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < n; ++j) incT(j, i) = rows[i][j];
    auto coords = [&](const std::vector<int64_t>& v) {
        std::vector<int64_t> c;
        if (!fp_solve(incT, v, c))
            throw domain_error("PrecisionTooLow", "idempotent cut is not well-defined mod ell");
        return c;
    };
    FpAlgebra cut{a.f, m, std::vector<int64_t>(m * m * m, 0), {}};
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < m; ++j) {
            auto prod = a.mul(rows[i], rows[j]);
            auto c = coords(prod);
            for (size_t kk = 0; kk < m; ++kk) cut.mult[(i * m + j) * m + kk] = c[kk];
        }
    cut.unit = coords(a.mul(idem, idem));
    return FpCut{std::move(cut), std::move(inc)};
}

std::vector<std::vector<int64_t>> fp_algebra_center(const FpAlgebra& a) {
    size_t n = a.dim;
    FpMat sys(a.f, n * n, n);
    for (size_t j = 0; j < n; ++j) {
        std::vector<int64_t> ej(n, 0);
        ej[j] = 1;
        FpMat L = a.left_mult(ej), R = a.right_mult(ej);
        // z*e_j - e_j*z as a function of z's coordinates
        for (size_t k = 0; k < n; ++k)
            for (size_t i = 0; i < n; ++i) sys(j * n + k, i) = a.f.sub(R(k, i), L(k, i));
    }
    auto ker = fp_kernel(sys);
    if (ker.empty()) return ker;
    FpMat m(a.f, ker.size(), n);
    for (size_t i = 0; i < ker.size(); ++i)
        for (size_t j = 0; j < n; ++j) m(i, j) = ker[i][j];
    return fp_row_basis(m);
}

// --- etale splitting -----------------------------------------------------

EtaleSplit split_etale(const StructuredAlgebra& alg, const BigInt& ell, long precision) {
    if (!alg.is_commutative())
        throw domain_error("NotCommutative", "split_etale needs a commutative algebra");
    if (!alg.is_semisimple())
        throw domain_error("NotEtale", "nilpotents detected (degenerate trace form)");
    if (precision < 1) throw domain_error("BadInput", "precision must be >= 1");

    LocalizedOrder ord = maximal_order(seed_order(alg, ell));
    FpAlgebra a1 = order_mod_ell(ord);
    Fp F = a1.f;
    size_t n = a1.dim;

    auto rad = fp_algebra_radical(a1);
    FpQuotient q = fp_algebra_quotient(a1, rad);
    const FpAlgebra& B = q.algebra;
    size_t nb = B.dim;

    // Frobenius-fixed subalgebra T = ker(x -> x^l - x), a split etale algebra
    FpMat frob(F, nb, nb);
    for (size_t j = 0; j < nb; ++j) {
        std::vector<int64_t> ej(nb, 0);
        ej[j] = 1;
        auto fj = B.pow(ej, BigInt(F.p));
        for (size_t k = 0; k < nb; ++k) frob(k, j) = F.sub(fj[k], (j == k) ? 1 : 0);
    }
    auto tker = fp_kernel(frob);
    size_t s = tker.size();

    // refine the unit into elementary idempotents by Lagrange interpolation
    std::vector<std::vector<int64_t>> idems{B.unit};
    for (const auto& t : tker) {
        std::vector<std::vector<int64_t>> next;
        for (const auto& u : idems) {
            auto v = B.mul(u, t);
            std::vector<std::vector<int64_t>> powers{u};
            std::vector<int64_t> cur = u;
            std::vector<int64_t> dep;
            for (size_t deg = 1; deg <= s + 1; ++deg) {
                cur = B.mul(cur, v);
                FpMat sys(F, nb, powers.size());
                for (size_t cidx = 0; cidx < powers.size(); ++cidx)
                    for (size_t r = 0; r < nb; ++r) sys(r, cidx) = powers[cidx][r];
                std::vector<int64_t> sol;
                if (fp_solve(sys, cur, sol)) {
                    dep = sol;
                    break;
                }
                powers.push_back(cur);
            }
            if (dep.empty()) throw domain_error("Internal", "no minimal polynomial found in block");
            std::vector<int64_t> mc(powers.size() + 1, 0);
            for (size_t kk = 0; kk < dep.size(); ++kk) mc[kk] = F.neg(dep[kk]);
            mc[powers.size()] = 1;
            auto fac = fp_factor(FpPoly(F, mc));
            if (fac.size() <= 1) {
                next.push_back(u);
                continue;
            }
            for (auto& [fq, e] : fac)
                if (fq.degree() != 1 || e != 1)
                    throw domain_error("Internal", "block minimal polynomial not split squarefree");
            for (auto& [fq, e] : fac) {
                int64_t root = F.neg(fq.c[0]);
                std::vector<int64_t> w = u;
                int64_t denom = 1;
                for (auto& [fq2, e2] : fac) {
                    if (&fq2 == &fq) continue;
                    int64_t other = F.neg(fq2.c[0]);
                    std::vector<int64_t> diff(nb);
                    for (size_t r = 0; r < nb; ++r)
                        diff[r] = F.sub(v[r], F.mul(other, u[r]));
                    w = B.mul(w, diff);
                    denom = F.mul(denom, F.sub(root, other));
                }
                int64_t di = F.inv(denom);
                for (auto& x : w) x = F.mul(x, di);
                next.push_back(std::move(w));
            }
        }
        idems = std::move(next);
    }
    if (idems.size() != s) throw domain_error("Internal", "idempotent splitting incomplete");

    long guard = (long)alg.dim();
    OrderModRing ring(ord, precision + guard);
    BigInt modN = ipow(ell, (unsigned long)precision);

    std::vector<ApproxIdempotent> out;
    for (const auto& e : idems) {
        std::vector<int64_t> a1c(n, 0);
        for (size_t t = 0; t < q.lift.rows; ++t)
            for (size_t j = 0; j < e.size(); ++j)
                a1c[t] = F.add(a1c[t], F.mul(q.lift(t, j), e[j]));
        std::vector<BigInt> cur(n);
        for (size_t i = 0; i < n; ++i) cur[i] = a1c[i];
        long iters = (precision + guard) * (long)alg.dim() + 8;
        for (long it = 0; it < iters; ++it) {
            auto nxt = ring.pow_ell(cur, F.p);
            bool stable = true;
            for (size_t i = 0; i < n; ++i)
                if (nxt[i] != cur[i]) stable = false;
            cur = std::move(nxt);
            if (stable) break;
        }
        ApproxIdempotent ai;
        ai.ell = ell;
        ai.precision = precision;
        ai.order_coords.resize(n);
        for (size_t i = 0; i < n; ++i) ai.order_coords[i] = imod(cur[i], modN);
        ai.element.assign(alg.dim(), BigRat(0));
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < alg.dim(); ++j)
                ai.element[j] += BigRat(ai.order_coords[i]) * ord.basis(i, j);
        out.push_back(std::move(ai));
    }

    // contract checks at precision N
    {
        OrderModRing rn(ord, precision);
        std::vector<std::vector<BigInt>> es;
        for (auto& ai : out) {
            std::vector<BigInt> v(ai.order_coords.begin(), ai.order_coords.end());
            es.push_back(v);
        }
        std::vector<BigInt> sum(n, BigInt(0));
        for (size_t a = 0; a < es.size(); ++a) {
            auto sq = rn.mul(es[a], es[a]);
            for (size_t i = 0; i < n; ++i)
                if (imod(sq[i] - es[a][i], rn.mod) != 0)
                    throw domain_error("Internal", "refined idempotent fails e^2 = e");
            for (size_t b = a + 1; b < es.size(); ++b) {
                auto pr = rn.mul(es[a], es[b]);
                for (size_t i = 0; i < n; ++i)
                    if (imod(pr[i], rn.mod) != 0)
                        throw domain_error("Internal", "refined idempotents not orthogonal");
            }
            for (size_t i = 0; i < n; ++i) sum[i] = imod(sum[i] + es[a][i], rn.mod);
        }
        for (size_t i = 0; i < n; ++i)
            if (imod(sum[i] - rn.unit[i], rn.mod) != 0)
                throw domain_error("Internal", "refined idempotents do not sum to 1");
    }
    return EtaleSplit{std::move(ord), std::move(out)};
}

// --- local invariants ----------------------------------------------------

LocalInvariant local_invariant(const StructuredAlgebra& alg, const BigInt& ell,
                               const ApproxIdempotent& idem) {
    if (idem.precision < 1)
        throw domain_error("PrecisionTooLow", "need idempotent at precision >= 1");
    if (!alg.is_semisimple()) throw domain_error("DegenerateTraceForm", "algebra not semisimple");
    LocalizedOrder ord = maximal_order(seed_order(alg, ell));
    FpAlgebra a1 = order_mod_ell(ord);
    Fp F = a1.f;
    size_t n = a1.dim;

    auto ec = coords_in_basis(ord.basis, idem.element);
    std::vector<int64_t> ebar(n);
    for (size_t i = 0; i < n; ++i) {
        if (!ell_integral(ec[i], ell))
            throw domain_error("PrecisionTooLow", "idempotent does not lie in the maximal order");
        ebar[i] = rat_mod_small(ec[i], F.p);
    }
    {
        auto sq = a1.mul(ebar, ebar);
        if (sq != ebar) throw domain_error("PrecisionTooLow", "element is not idempotent mod ell");
        for (size_t j = 0; j < n; ++j) {
            std::vector<int64_t> ej(n, 0);
            ej[j] = 1;
            if (a1.mul(ebar, ej) != a1.mul(ej, ebar))
                throw domain_error("PrecisionTooLow", "element is not central mod ell");
        }
    }

    FpCut cut = fp_algebra_cut(a1, ebar);
    const FpAlgebra& S = cut.algebra;
    long D_total = (long)S.dim;

    auto J = fp_algebra_radical(S);
    long dimSJ = D_total - (long)J.size();

    QMat zrows = center_basis(alg);
    StructuredAlgebra Z = alg.subalgebra(zrows);
    std::vector<BigRat> zc;
    if (!solve(zrows.transpose(), idem.element, zc))
        throw domain_error("PrecisionTooLow", "idempotent is not central in the algebra");
    for (size_t k = 0; k < alg.dim(); ++k) {
        BigRat s(0);
        for (size_t i = 0; i < Z.dim(); ++i) s += zc[i] * zrows(i, k);
        if (s != idem.element[k])
            throw domain_error("PrecisionTooLow", "idempotent is not central in the algebra");
    }
    LocalizedOrder ordZ = maximal_order(seed_order(Z, ell));
    FpAlgebra z1 = order_mod_ell(ordZ);
    auto zcoord = coords_in_basis(ordZ.basis, zc);
    std::vector<int64_t> zbar(Z.dim());
    for (size_t i = 0; i < Z.dim(); ++i) {
        if (!ell_integral(zcoord[i], ell))
            throw domain_error("PrecisionTooLow", "central idempotent misses the center's maximal order");
        zbar[i] = rat_mod_small(zcoord[i], F.p);
    }
    FpCut zcut = fp_algebra_cut(z1, zbar);
    long z = (long)zcut.algebra.dim;
    auto JT = fp_algebra_radical(zcut.algebra);
    long fdeg = z - (long)JT.size();

    if ((D_total * fdeg) % (dimSJ * z) != 0)
        throw domain_error("PrecisionTooLow", "dimension bookkeeping inconsistent");
    long d = D_total * fdeg / (dimSJ * z);
    if (D_total % (d * d * z) != 0)
        throw domain_error("PrecisionTooLow", "dimension bookkeeping inconsistent");
    long n2 = D_total / (d * d * z);
    long nn = 0;
    while ((nn + 1) * (nn + 1) <= n2) ++nn;
    if (nn * nn != n2)
        throw domain_error("PrecisionTooLow", "matrix size is not a perfect square");

    LocalInvariant out;
    out.n = nn;
    out.d = d;
    out.residue_degree = fdeg;
    out.center_degree = z;
    if (d == 1) return out;

    std::vector<std::vector<int64_t>> m2raw;
    for (const auto& x : J)
        for (const auto& y : J) m2raw.push_back(S.mul(x, y));
    std::vector<std::vector<int64_t>> m2;
    {
        bool any = false;
        for (auto& v : m2raw)
            for (auto x : v)
                if (x) any = true;
        if (any) {
            FpMat mm(F, m2raw.size(), S.dim);
            for (size_t i = 0; i < m2raw.size(); ++i)
                for (size_t j = 0; j < S.dim; ++j) mm(i, j) = m2raw[i][j];
            m2 = fp_row_basis(mm);
        }
    }
    std::vector<int64_t> M;
    for (const auto& x : J)
        if (!fp_in_span(m2, x, F)) {
            M = x;
            break;
        }
    if (M.empty()) throw domain_error("Internal", "radical has no element outside its square");

    FpQuotient sq = fp_algebra_quotient(S, J);
    auto kcenter = fp_algebra_center(sq.algebra);
    long df = (long)kcenter.size();
    if (df != d * fdeg) throw domain_error("Internal", "residue field degree mismatch");

    std::vector<int64_t> xq;
    {
        std::vector<int64_t> combo(kcenter.size(), 0);
        for (;;) {
            size_t carry = 0;
            while (carry < combo.size()) {
                if (++combo[carry] < F.p) break;
                combo[carry] = 0;
                ++carry;
            }
            if (carry == combo.size()) break;
            std::vector<int64_t> v(sq.algebra.dim, 0);
            for (size_t t = 0; t < kcenter.size(); ++t)
                if (combo[t])
                    for (size_t j = 0; j < sq.algebra.dim; ++j)
                        v[j] = F.add(v[j], F.mul(combo[t], kcenter[t][j]));
            std::vector<std::vector<int64_t>> powers{sq.algebra.unit};
            std::vector<int64_t> cur = sq.algebra.unit;
            long deg = 0;
            for (long t = 1; t <= df + 1; ++t) {
                cur = sq.algebra.mul(cur, v);
                FpMat sys(F, sq.algebra.dim, powers.size());
                for (size_t cidx = 0; cidx < powers.size(); ++cidx)
                    for (size_t r = 0; r < sq.algebra.dim; ++r) sys(r, cidx) = powers[cidx][r];
                std::vector<int64_t> sol;
                if (fp_solve(sys, cur, sol)) {
                    deg = t;
                    break;
                }
                powers.push_back(cur);
            }
            if (deg == df) {
                xq = v;
                break;
            }
        }
        if (xq.empty()) throw domain_error("Internal", "no generator of the residue field found");
    }
    std::vector<int64_t> x(S.dim, 0);
    for (size_t t = 0; t < sq.lift.rows; ++t)
        for (size_t j = 0; j < xq.size(); ++j)
            x[t] = F.add(x[t], F.mul(sq.lift(t, j), xq[j]));

    BigInt qf = ipow(BigInt(F.p), (unsigned long)fdeg);
    long found_b = -1;
    for (long b = 1; b <= d; ++b) {
        BigInt e(1);
        for (long t = 0; t < b; ++t) e *= qf;
        auto xqb = S.pow(x, e);
        auto lhs = S.mul(M, x);
        auto rhs = S.mul(xqb, M);
        std::vector<int64_t> diff(S.dim);
        for (size_t i = 0; i < S.dim; ++i) diff[i] = F.sub(lhs[i], rhs[i]);
        if (fp_in_span(m2, diff, F)) {
            if (found_b != -1) throw domain_error("Internal", "uniformizer congruence not unique");
            found_b = b;
        }
    }
    if (found_b == -1) throw domain_error("Internal", "uniformizer congruence has no solution");
    long r = -1;
    for (long t = 1; t <= d; ++t)
        if ((t * found_b) % d == 1 % d) {
            r = t;
            break;
        }
    if (r == -1) throw domain_error("Internal", "congruence exponent not invertible mod d");
    long g = std::gcd(r, d);
    out.inv_num = (r / g) % (d / g);
    out.inv_den = d / g;
    return out;
}

// --- module decomposition ------------------------------------------------

ModuleDecomposition decompose_module(const StructuredAlgebra& alg, const std::vector<QMat>& rep,
                                     const BigInt& ell, long precision) {
    size_t n = alg.dim();
    if (rep.size() != n) throw domain_error("BadInput", "need one matrix per basis element");
    size_t m = rep[0].rows();
    for (const auto& r : rep)
        if (r.rows() != m || r.cols() != m)
            throw domain_error("BadInput", "representation matrices must be square of equal size");

    auto rep_of = [&](const std::vector<BigRat>& x) {
        QMat out(m, m);
        for (size_t i = 0; i < n; ++i) {
            if (x[i] == 0) continue;
            for (size_t r = 0; r < m; ++r)
                for (size_t c2 = 0; c2 < m; ++c2) out(r, c2) += x[i] * rep[i](r, c2);
        }
        return out;
    };
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            std::vector<BigRat> ei(n, BigRat(0)), ej(n, BigRat(0));
            ei[i] = 1;
            ej[j] = 1;
            if (rep[i] * rep[j] != rep_of(alg.mul(ei, ej)))
                throw domain_error("NotAHomomorphism", "rep fails on a basis product");
        }
    if (rep_of(alg.unit()) != QMat::identity(m, BigRat(1), BigRat(0)))
        throw domain_error("NotAHomomorphism", "rep does not send 1 to the identity");

    QMat zrows = center_basis(alg);
    StructuredAlgebra Z = alg.subalgebra(zrows);
    long nprec = precision;
    while (ipow(ell, (unsigned long)nprec) <= BigInt((long)(2 * m))) ++nprec;
    EtaleSplit zsplit = split_etale(Z, ell, nprec);

    LocalizedOrder ordE = maximal_order(seed_order(alg, ell));
    QMat stack((1 + n) * m, m);
    for (size_t r = 0; r < m; ++r)
        for (size_t c2 = 0; c2 < m; ++c2) stack(r, c2) = (r == c2) ? 1 : 0;
    for (size_t i = 0; i < n; ++i) {
        QMat rb = rep_of(ordE.basis.row(i));
        for (size_t r = 0; r < m; ++r)
            for (size_t c2 = 0; c2 < m; ++c2) stack((1 + i) * m + r, c2) = rb(r, c2);
    }
    QMat lat = lattice_normalize(stack, m);
    QMat P = lat.transpose();
    QMat Pinv = inverse(P);

    ModuleDecomposition out;
    BigInt modN = ipow(ell, (unsigned long)nprec);
    for (const auto& idem : zsplit.idempotents) {
        std::vector<BigRat> e_in_alg(alg.dim(), BigRat(0));
        for (size_t i = 0; i < Z.dim(); ++i)
            for (size_t k = 0; k < alg.dim(); ++k) e_in_alg[k] += idem.element[i] * zrows(i, k);
        ApproxIdempotent big;
        big.element = e_in_alg;
        big.ell = ell;
        big.precision = idem.precision;
        LocalInvariant li = local_invariant(alg, ell, big);

        QMat Pe = Pinv * rep_of(e_in_alg) * P;
        ZMat Pz(m, m);
        for (size_t r = 0; r < m; ++r)
            for (size_t c2 = 0; c2 < m; ++c2) {
                const BigRat& x = Pe(r, c2);
                BigInt num = imod(x.get_num(), modN);
                BigInt den = imod(x.get_den(), modN), s, t;
                if (igcdext(den, modN, s, t) != 1)
                    throw domain_error("Internal", "projector not integral on the stable lattice");
                Pz(r, c2) = imod(num * s, modN);
            }
        auto matmod = [&](const ZMat& a, const ZMat& b) {
            ZMat o(m, m);
            for (size_t r = 0; r < m; ++r)
                for (size_t c2 = 0; c2 < m; ++c2) {
                    BigInt s(0);
                    for (size_t k = 0; k < m; ++k) s += a(r, k) * b(k, c2);
                    o(r, c2) = imod(s, modN);
                }
            return o;
        };
        for (long it = 0; it < 4 * (nprec + 4); ++it) {
            ZMat sqm = matmod(Pz, Pz);
            if (sqm == Pz) break;
            ZMat acc = ZMat::identity(m, BigInt(1), BigInt(0));
            ZMat pw = Pz;
            BigInt e2 = ell;
            while (e2 > 0) {
                if (mpz_odd_p(e2.get_mpz_t())) acc = matmod(acc, pw);
                pw = matmod(pw, pw);
                e2 >>= 1;
            }
            Pz = acc;
        }
        BigInt tr(0);
        for (size_t r = 0; r < m; ++r) tr = imod(tr + Pz(r, r), modN);
        long dimVi = li.n * li.d * li.d * li.center_degree;
        if (tr > BigInt((long)m))
            throw domain_error("PrecisionTooLow", "eigenvalue count exceeds the dimension");
        BigInt mi = tr / BigInt(dimVi);
        if (mi * BigInt(dimVi) != tr)
            throw domain_error("Internal", "eigenvalue count not a multiple of the simple dimension");
        out.multiplicities.push_back(mi.get_si());
        out.factors.push_back(li);
        QMat proj(m, m);
        BigInt modOut = ipow(ell, (unsigned long)precision);
        for (size_t r = 0; r < m; ++r)
            for (size_t c2 = 0; c2 < m; ++c2) proj(r, c2) = BigRat(imod(Pz(r, c2), modOut));
        out.projectors.push_back(P * proj * Pinv);
    }
    return out;
}

} // namespace toolkit::padic
