#include "toolkit/exact/poly.hpp"

#include <algorithm>
#include <cmath>

namespace toolkit {

ZPoly z_primitive(const QPoly& a, BigRat& content) {
    if (a.is_zero()) {
        content = 0;
        return ZPoly();
    }
    BigInt den(1);
    for (const BigRat& x : a.c) den = ilcm(den, x.get_den());
    std::vector<BigInt> ic(a.c.size());
    for (size_t i = 0; i < a.c.size(); ++i) {
        BigRat v = a.c[i] * BigRat(den);
        ic[i] = v.get_num();
    }
    BigInt g(0);
    for (const BigInt& x : ic) g = igcd(g, x);
    if (ic.back() < 0) g = -g;
    for (BigInt& x : ic) x /= g;
    content = BigRat(g, den);
    content.canonicalize();
    return ZPoly(std::move(ic));
}

namespace {

ZPoly z_mul(const ZPoly& a, const ZPoly& b) {
    if (a.is_zero() || b.is_zero()) return ZPoly();
    std::vector<BigInt> r(a.c.size() + b.c.size() - 1, BigInt(0));
    for (size_t i = 0; i < a.c.size(); ++i)
        for (size_t j = 0; j < b.c.size(); ++j) r[i + j] += a.c[i] * b.c[j];
    return ZPoly(std::move(r));
}

ZPoly z_mod(const ZPoly& a, const BigInt& m) {
    std::vector<BigInt> r(a.c.size());
    for (size_t i = 0; i < a.c.size(); ++i) r[i] = imod(a.c[i], m);
    return ZPoly(std::move(r));
}

// symmetric representatives in (-m/2, m/2]
ZPoly z_mod_centered(const ZPoly& a, const BigInt& m) {
    BigInt half = m / 2;
    std::vector<BigInt> r(a.c.size());
    for (size_t i = 0; i < a.c.size(); ++i) {
        r[i] = imod(a.c[i], m);
        if (r[i] > half) r[i] -= m;
    }
    return ZPoly(std::move(r));
}

ZPoly from_fp(const FpPoly& a) {
    std::vector<BigInt> r(a.c.size());
    for (size_t i = 0; i < a.c.size(); ++i) r[i] = BigInt((long)a.c[i]);
    return ZPoly(std::move(r));
}

// exact division in Z[x]; returns false if not divisible
bool z_divexact(const ZPoly& a, const ZPoly& b, ZPoly& q) {
    if (b.is_zero()) return false;
    ZPoly r = a;
    std::vector<BigInt> qc(a.c.size() > b.c.size() ? a.c.size() - b.c.size() + 1 : 1, BigInt(0));
    while (!r.is_zero() && r.degree() >= b.degree()) {
        BigInt rem = imod(r.lead(), b.lead());
        if (rem != 0) return false;
        BigInt f = r.lead() / b.lead();
        long shift = r.degree() - b.degree();
        qc[(size_t)shift] = f;
        for (size_t i = 0; i < b.c.size(); ++i)
            r.c[(size_t)shift + i] -= f * b.c[i];
        r.trim();
    }
    if (!r.is_zero()) return false;
    q = ZPoly(std::move(qc));
    return true;
}

// One linear Hensel step: f = g*h (mod p^k), g monic -> same mod p^{k+1}.
// s*g + t*h = 1 (mod p) fixed throughout.
void hensel_step(const ZPoly& f, ZPoly& g, ZPoly& h, const FpPoly& s, const FpPoly& t,
                 const FpPoly& gbar, int64_t p, const BigInt& pk) {
    Fp F(p);
    ZPoly diff = z_mod(ZPoly([&] {
        ZPoly gh = z_mul(g, h);
        std::vector<BigInt> d(std::max(f.c.size(), gh.c.size()), BigInt(0));
        for (size_t i = 0; i < d.size(); ++i) d[i] = f.at(i) - gh.at(i);
        return d;
    }()), pk * p);
    // e = (f - g h)/p^k mod p
    std::vector<int64_t> ec(diff.c.size());
    for (size_t i = 0; i < diff.c.size(); ++i) {
        BigInt v = diff.c[i] / pk;
        ec[i] = F.reduce(v);
    }
    FpPoly e(F, std::move(ec));
    // u = t*e mod gbar, v = (e - u*hbar)/gbar = s*e + (stuff); compute v by division
    FpPoly u = fp_mod(fp_mul(t, e), gbar);
    // v solves v*gbar = e - u*hbar (exact in F_p[x])
    FpPoly hbar(F, [&] {
        std::vector<int64_t> hc(h.c.size());
        for (size_t i = 0; i < h.c.size(); ++i) hc[i] = F.reduce(h.c[i]);
        return hc;
    }());
    FpPoly rhs = fp_sub(e, fp_mul(u, hbar));
    FpPoly v(F);
    {
        // exact division rhs / gbar
        FpPoly q(F), rr(F);
        FpPoly num = rhs;
        std::vector<int64_t> qc(num.c.size() > gbar.c.size() ? num.c.size() - gbar.c.size() + 1 : 1, 0);
        int64_t gi = F.inv(gbar.c.back());
        while (!num.is_zero() && num.degree() >= gbar.degree()) {
            long shift = num.degree() - gbar.degree();
            int64_t fc = F.mul(num.c.back(), gi);
            qc[(size_t)shift] = fc;
            for (size_t i = 0; i < gbar.c.size(); ++i)
                num.c[(size_t)shift + i] = F.sub(num.c[(size_t)shift + i], F.mul(fc, gbar.c[i]));
            num.trim();
        }
        v = FpPoly(F, std::move(qc));
    }
    // g += p^k u, h += p^k v
    std::vector<BigInt> gc(std::max(g.c.size(), u.c.size() ? u.c.size() : 0), BigInt(0));
    for (size_t i = 0; i < gc.size(); ++i) gc[i] = g.at(i) + pk * BigInt((long)(i < u.c.size() ? u.c[i] : 0));
    g = ZPoly(std::move(gc));
    std::vector<BigInt> hc(std::max(h.c.size(), v.c.size() ? v.c.size() : 0), BigInt(0));
    for (size_t i = 0; i < hc.size(); ++i) hc[i] = h.at(i) + pk * BigInt((long)(i < v.c.size() ? v.c[i] : 0));
    h = ZPoly(std::move(hc));
}

// Factor a primitive squarefree integer polynomial into irreducibles over Z.
std::vector<ZPoly> z_factor_squarefree(const ZPoly& f0) {
    if (f0.degree() <= 0) return {};
    if (f0.degree() == 1) return {f0};
    ZPoly f = f0;

    // choose p: odd, lc not divisible, squarefree reduction
    static const int64_t primes[] = {3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47,
                                     53, 59, 61, 67, 71, 73, 79, 83, 89, 97, 101, 103};
    int64_t p = 0;
    for (int64_t cand : primes) {
        if (imod(f.lead(), BigInt(cand)) == 0) continue;
        FpPoly fbar = fp_reduce(f, cand);
        if (fp_gcd(fbar, fp_derivative(fbar)).degree() == 0) {
            p = cand;
            break;
        }
    }
    if (p == 0) throw domain_error("NoGoodPrime", "no small squarefree prime for factorization");
    Fp F(p);

    // modular factorization (squarefree, so multiplicities are 1)
    FpPoly fbar = fp_monic(fp_reduce(f, p));
    auto modfac = fp_factor(fbar);
    std::vector<FpPoly> gs;
    for (auto& [q, e] : modfac) gs.push_back(q);
    if (gs.size() == 1) return {f};

    // Mignotte-style bound on coefficients of lc(f) * (any monic factor)
    BigRat norm2(0);
    for (const BigInt& cfi : f.c) norm2 += BigRat(cfi * cfi);
    BigInt bound(1);
    // ceil(sqrt(norm2)) <= num/den bound via integer sqrt of num*den
    {
        BigInt n2 = norm2.get_num();
        BigInt s;
        mpz_sqrt(s.get_mpz_t(), n2.get_mpz_t());
        bound = s + 1;
    }
    bound *= ipow(BigInt(2), (unsigned long)(f.degree() + 1));
    bound *= abs(f.lead());
    BigInt target = 2 * bound + 1;

    // Hensel-lift each modular factor against its cofactor to p^k >= target
    BigInt pk(p);
    struct Lifted {
        ZPoly g;
    };
    std::vector<ZPoly> lifted;
    {
        // lift all factors simultaneously: iterate pairs (g_i, cofactor_i)
        // independently; cheap at desk-scale degrees
        for (const FpPoly& gi : gs) {
            FpPoly cof(F, {1});
            for (const FpPoly& gj : gs)
                if (&gj != &gi) cof = fp_mul(cof, gj);
            // scale cofactor so that g*h = f mod p with g monic
            int64_t lcf = F.reduce(f.lead());
            FpPoly h0 = fp_mul(cof, FpPoly(F, {lcf}));
            FpPoly s(F), t(F);
            {
                // Bezout over F_p: s*g + t*h = 1
                FpPoly r0 = gi, r1 = h0;
                FpPoly s0(F, {1}), s1(F);
                FpPoly t0(F), t1(F, {1});
                while (!r1.is_zero()) {
                    // divmod
                    FpPoly q(F), rr(F);
                    {
                        FpPoly num = r0;
                        std::vector<int64_t> qc(num.c.size() > r1.c.size() ? num.c.size() - r1.c.size() + 1 : 1, 0);
                        int64_t li = F.inv(r1.c.back());
                        while (!num.is_zero() && num.degree() >= r1.degree()) {
                            long shift = num.degree() - r1.degree();
                            int64_t fc = F.mul(num.c.back(), li);
                            qc[(size_t)shift] = F.add(qc[(size_t)shift], fc);
                            for (size_t i = 0; i < r1.c.size(); ++i)
                                num.c[(size_t)shift + i] = F.sub(num.c[(size_t)shift + i], F.mul(fc, r1.c[i]));
                            num.trim();
                        }
                        q = FpPoly(F, std::move(qc));
                        rr = num;
                    }
                    FpPoly s2 = fp_sub(s0, fp_mul(q, s1));
                    FpPoly t2 = fp_sub(t0, fp_mul(q, t1));
                    r0 = r1; r1 = rr;
                    s0 = s1; s1 = s2;
                    t0 = t1; t1 = t2;
                }
                int64_t li = F.inv(r0.c[0]); // r0 is a nonzero constant (coprime)
                s = FpPoly(F, [&] { auto cc = s0.c; for (auto& x : cc) x = F.mul(x, li); return cc; }());
                t = FpPoly(F, [&] { auto cc = t0.c; for (auto& x : cc) x = F.mul(x, li); return cc; }());
            }
            ZPoly g = from_fp(gi);
            ZPoly h = from_fp(h0);
            // f_scaled = lc-adjusted f so that f = g*h mod p holds exactly at
            // each level: we lift against f itself (lc absorbed into h).
            pk = BigInt(p);
            while (pk < target) {
                hensel_step(f, g, h, s, t, gi, p, pk);
                pk *= p;
            }
            lifted.push_back(z_mod_centered(g, pk));
        }
    }

    // recombination
    std::vector<ZPoly> result;
    std::vector<int> alive(gs.size(), 1);
    ZPoly rem = f;
    size_t r = gs.size();
    for (size_t take = 1; take <= r; ++take) {
        // iterate subsets of the alive indices of size `take`
        std::vector<size_t> idx;
        for (size_t i = 0; i < gs.size(); ++i)
            if (alive[i]) idx.push_back(i);
        if (idx.size() < take) continue;
        std::vector<size_t> comb(take);
        for (size_t i = 0; i < take; ++i) comb[i] = i;
        bool done = false;
        while (!done) {
            // candidate = lc(rem) * prod lifted[comb] mod p^k, centered
            ZPoly cand(std::vector<BigInt>{rem.lead()});
            for (size_t i = 0; i < take; ++i) cand = z_mul(cand, lifted[idx[comb[i]]]);
            cand = z_mod_centered(cand, pk);
            BigRat content;
            ZPoly prim = z_primitive(QPoly([&] {
                std::vector<BigRat> qc(cand.c.size());
                for (size_t i = 0; i < cand.c.size(); ++i) qc[i] = BigRat(cand.c[i]);
                return qc;
            }()), content);
            ZPoly quo;
            if (z_divexact(rem, prim, quo)) {
                result.push_back(prim);
                rem = quo;
                for (size_t i = 0; i < take; ++i) alive[idx[comb[i]]] = 0;
                // restart this cardinality with the updated alive set
                idx.clear();
                for (size_t i = 0; i < gs.size(); ++i)
                    if (alive[i]) idx.push_back(i);
                if (idx.size() < take) break;
                for (size_t i = 0; i < take; ++i) comb[i] = i;
                continue;
            }
            // next combination
            size_t pos = take;
            while (pos > 0) {
                --pos;
                if (comb[pos] + (take - pos) < idx.size()) {
                    ++comb[pos];
                    for (size_t j = pos + 1; j < take; ++j) comb[j] = comb[j - 1] + 1;
                    break;
                }
                if (pos == 0) done = true;
            }
            if (take == 0) break;
        }
    }
    if (rem.degree() > 0) result.push_back(rem);
    return result;
}

} // namespace

std::vector<std::pair<QPoly, int>> q_factor(const QPoly& a) {
    std::vector<std::pair<QPoly, int>> result;
    if (a.degree() <= 0) return result;

    // squarefree decomposition over Q (Yun)
    QPoly f = poly_scale(a, BigRat(1) / a.lead());
    std::vector<std::pair<QPoly, int>> sqf;
    {
        QPoly d = poly_derivative(f);
        QPoly a0 = poly_gcd(f, d);
        QPoly b = f, c = d;
        {
            QPoly q, r;
            poly_divmod(f, a0, q, r);
            b = q;
            poly_divmod(d, a0, q, r);
            c = q;
        }
        int i = 1;
        while (b.degree() > 0) {
            QPoly w = poly_sub(c, poly_derivative(b));
            QPoly g = poly_gcd(b, w);
            if (g.degree() > 0) sqf.push_back({g, i});
            QPoly q, r;
            poly_divmod(b, g, q, r);
            b = q;
            poly_divmod(w, g, q, r);
            c = q;
            ++i;
        }
    }

    for (auto& [part, mult] : sqf) {
        BigRat content;
        ZPoly zp = z_primitive(part, content);
        for (const ZPoly& irr : z_factor_squarefree(zp)) {
            std::vector<BigRat> qc(irr.c.size());
            for (size_t i = 0; i < irr.c.size(); ++i) qc[i] = BigRat(irr.c[i]);
            QPoly qirr(std::move(qc));
            qirr = poly_scale(qirr, BigRat(1) / qirr.lead());
            result.push_back({qirr, mult});
        }
    }
    return result;
}

bool q_is_irreducible(const QPoly& a) {
    if (a.degree() <= 0) return false;
    auto f = q_factor(a);
    return f.size() == 1 && f[0].second == 1 && f[0].first.degree() == a.degree();
}

} // namespace toolkit
