#pragma once

#include <gmpxx.h>
#include <stdexcept>
#include <string>
#include <vector>
#include <cstdint>

namespace toolkit {

// Domain errors carry the short code names used throughout the CLI surface
// ("InsufficientRadius", "NotSemisimple", ...) plus a human-readable detail.
class domain_error : public std::runtime_error {
public:
    domain_error(std::string code, const std::string& detail)
        : std::runtime_error(code + ": " + detail), code_(std::move(code)) {}
    const std::string& code() const { return code_; }
private:
    std::string code_;
};

using BigInt = mpz_class;
using BigRat = mpq_class;

inline BigInt ipow(const BigInt& b, unsigned long e) {
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

inline BigInt igcd(const BigInt& a, const BigInt& b) {
    BigInt r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline BigInt ilcm(const BigInt& a, const BigInt& b) {
    BigInt r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

// g = a*s + b*t
inline BigInt igcdext(const BigInt& a, const BigInt& b, BigInt& s, BigInt& t) {
    BigInt g;
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

// Floor division (gmp fdiv), so remainders land in [0, |b|).
inline BigInt ifdiv(const BigInt& a, const BigInt& b) {
    BigInt q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

inline BigInt imod(const BigInt& a, const BigInt& b) {
    BigInt r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

// v_p(x) for x != 0.
inline long ivaluation(BigInt x, const BigInt& p) {
    if (x == 0) throw domain_error("ValuationOfZero", "v_p(0) is infinite");
    long v = 0;
    BigInt q, r;
    for (;;) {
        mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t());
        if (r != 0) return v;
        x = q;
        ++v;
    }
}

inline long rat_valuation(const BigRat& x, const BigInt& p) {
    if (x == 0) throw domain_error("ValuationOfZero", "v_p(0) is infinite");
    long v = 0;
    if (x.get_num() != 0) v += ivaluation(x.get_num(), p);
    v -= ivaluation(x.get_den(), p);
    return v;
}

inline bool is_prime(const BigInt& n) {
    return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

inline BigRat rat_from_string(const std::string& s) {
    BigRat r(s);
    r.canonicalize();
    return r;
}

// Small prime field for mod-l linear algebra and Berlekamp; l fits in int64.
struct Fp {
    int64_t p;
    explicit Fp(int64_t prime) : p(prime) {}
    int64_t reduce(const BigInt& x) const {
        BigInt r = imod(x, BigInt(p));
        return r.get_si();
    }
    int64_t add(int64_t a, int64_t b) const { return (a + b) % p; }
    int64_t sub(int64_t a, int64_t b) const { return ((a - b) % p + p) % p; }
    int64_t mul(int64_t a, int64_t b) const {
        return (int64_t)(((__int128)a * b) % p);
    }
    int64_t neg(int64_t a) const { return a == 0 ? 0 : p - a; }
    int64_t pow(int64_t a, uint64_t e) const {
        int64_t r = 1 % p;
        a %= p;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }
    int64_t inv(int64_t a) const {
        a = ((a % p) + p) % p;
        if (a == 0) throw domain_error("DivisionByZero", "inverse of 0 in F_p");
        return pow(a, (uint64_t)(p - 2));
    }
};

} // namespace toolkit
