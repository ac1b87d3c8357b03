#pragma once

#include "toolkit/exact/rational.hpp"
#include <type_traits>
#include <vector>

namespace toolkit {

// Dense univariate polynomial, coefficients constant-first.
template <class T>
struct Poly {
    std::vector<T> c;

    Poly() = default;
    explicit Poly(std::vector<T> coeffs) : c(std::move(coeffs)) { trim(); }

    void trim() {
        while (!c.empty() && c.back() == T()) c.pop_back();
    }
    bool is_zero() const { return c.empty(); }
    long degree() const { return (long)c.size() - 1; } // -1 for zero
    const T& lead() const { return c.back(); }
    T at(size_t i) const { return i < c.size() ? c[i] : T(); }

    bool operator==(const Poly& o) const { return c == o.c; }
};

using QPoly = Poly<BigRat>;
using ZPoly = Poly<BigInt>;

template <class T>
Poly<T> poly_add(const Poly<T>& a, const Poly<T>& b) {
    std::vector<T> r(std::max(a.c.size(), b.c.size()), T());
    for (size_t i = 0; i < r.size(); ++i) r[i] = a.at(i) + b.at(i);
    return Poly<T>(std::move(r));
}

template <class T>
Poly<T> poly_sub(const Poly<T>& a, const Poly<T>& b) {
    std::vector<T> r(std::max(a.c.size(), b.c.size()), T());
    for (size_t i = 0; i < r.size(); ++i) r[i] = a.at(i) - b.at(i);
    return Poly<T>(std::move(r));
}

template <class T>
Poly<T> poly_mul(const Poly<T>& a, const Poly<T>& b) {
    if (a.is_zero() || b.is_zero()) return Poly<T>();
    std::vector<T> r(a.c.size() + b.c.size() - 1, T());
    for (size_t i = 0; i < a.c.size(); ++i)
        for (size_t j = 0; j < b.c.size(); ++j) r[i + j] = r[i + j] + a.c[i] * b.c[j];
    return Poly<T>(std::move(r));
}

template <class T>
Poly<T> poly_scale(const Poly<T>& a, const std::type_identity_t<T>& s) {
    std::vector<T> r = a.c;
    for (auto& x : r) x = x * s;
    return Poly<T>(std::move(r));
}

template <class T>
T poly_eval(const Poly<T>& a, const T& x) {
    T v{};
    for (size_t i = a.c.size(); i-- > 0;) v = v * x + a.c[i];
    return v;
}

template <class T>
Poly<T> poly_derivative(const Poly<T>& a) {
    if (a.c.size() <= 1) return Poly<T>();
    std::vector<T> r(a.c.size() - 1);
    for (size_t i = 1; i < a.c.size(); ++i) r[i - 1] = a.c[i] * T((long)i);
    return Poly<T>(std::move(r));
}

// Division with remainder over a field (divisor lead invertible via 1/x).
template <class T>
void poly_divmod(const Poly<T>& a, const Poly<T>& b, Poly<T>& q, Poly<T>& r) {
    if (b.is_zero()) throw domain_error("DivisionByZero", "polynomial division by zero");
    r = a;
    std::vector<T> qc(a.c.size() > b.c.size() ? a.c.size() - b.c.size() + 1 : 1, T());
    T lb_inv = T(1) / b.lead();
    while (!r.is_zero() && r.degree() >= b.degree()) {
        long shift = r.degree() - b.degree();
        T f = r.lead() * lb_inv;
        qc[shift] = qc[shift] + f;
        for (size_t i = 0; i < b.c.size(); ++i)
            r.c[shift + i] = r.c[shift + i] - f * b.c[i];
        r.trim();
    }
    q = Poly<T>(std::move(qc));
}

template <class T>
Poly<T> poly_mod(const Poly<T>& a, const Poly<T>& b) {
    Poly<T> q, r;
    poly_divmod(a, b, q, r);
    return r;
}

template <class T>
Poly<T> poly_gcd(Poly<T> a, Poly<T> b) {
    while (!b.is_zero()) {
        Poly<T> r = poly_mod(a, b);
        a = b;
        b = r;
    }
    if (!a.is_zero()) a = poly_scale(a, T(1) / a.lead());
    return a;
}

// g = gcd(a,b) = s*a + t*b, g monic.
template <class T>
Poly<T> poly_gcdext(const Poly<T>& a, const Poly<T>& b, Poly<T>& s, Poly<T>& t) {
    Poly<T> r0 = a, r1 = b;
    Poly<T> s0(std::vector<T>{T(1)}), s1;
    Poly<T> t0, t1(std::vector<T>{T(1)});
    while (!r1.is_zero()) {
        Poly<T> q, r;
        poly_divmod(r0, r1, q, r);
        Poly<T> s2 = poly_sub(s0, poly_mul(q, s1));
        Poly<T> t2 = poly_sub(t0, poly_mul(q, t1));
        r0 = r1; r1 = r;
        s0 = s1; s1 = s2;
        t0 = t1; t1 = t2;
    }
    if (!r0.is_zero()) {
        T li = T(1) / r0.lead();
        r0 = poly_scale(r0, li);
        s0 = poly_scale(s0, li);
        t0 = poly_scale(t0, li);
    }
    s = s0;
    t = t0;
    return r0;
}

// Sylvester-matrix resultant of two rational polynomials.
BigRat resultant(const QPoly& a, const QPoly& b);

// --- polynomials over F_p (int64 coefficients in [0,p)) ---------------

struct FpPoly {
    Fp f;
    std::vector<int64_t> c; // constant-first, normalized mod p, trimmed

    explicit FpPoly(Fp field) : f(field) {}
    FpPoly(Fp field, std::vector<int64_t> coeffs) : f(field), c(std::move(coeffs)) {
        for (auto& x : c) x = ((x % f.p) + f.p) % f.p;
        trim();
    }
    void trim() { while (!c.empty() && c.back() == 0) c.pop_back(); }
    bool is_zero() const { return c.empty(); }
    long degree() const { return (long)c.size() - 1; }
    int64_t at(size_t i) const { return i < c.size() ? c[i] : 0; }
};

FpPoly fp_add(const FpPoly& a, const FpPoly& b);
FpPoly fp_sub(const FpPoly& a, const FpPoly& b);
FpPoly fp_mul(const FpPoly& a, const FpPoly& b);
FpPoly fp_mod(const FpPoly& a, const FpPoly& b);
FpPoly fp_gcd(FpPoly a, FpPoly b);
FpPoly fp_monic(const FpPoly& a);
FpPoly fp_powmod(const FpPoly& base, BigInt e, const FpPoly& mod);
FpPoly fp_derivative(const FpPoly& a);

// Monic irreducible factors with multiplicities (Berlekamp).
std::vector<std::pair<FpPoly, int>> fp_factor(const FpPoly& a);

// Reduce an integer polynomial mod p.
FpPoly fp_reduce(const ZPoly& a, int64_t p);

// --- factorization over Q ----------------------------------------------

// Primitive integer polynomial from a rational one (content removed),
// together with the removed rational content.
ZPoly z_primitive(const QPoly& a, BigRat& content);

// Monic irreducible rational factors with multiplicities (Zassenhaus:
// squarefree split, Berlekamp mod a good prime, Hensel lifting, subset
// recombination against the Mignotte bound).
std::vector<std::pair<QPoly, int>> q_factor(const QPoly& a);

bool q_is_irreducible(const QPoly& a);

} // namespace toolkit
