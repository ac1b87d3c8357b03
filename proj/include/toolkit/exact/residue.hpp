#pragma once

#include "toolkit/exact/rational.hpp"

namespace toolkit {

// Element of Z/l^N, value normalized to [0, l^N).
class ResidueInt {
public:
    ResidueInt() : ell_(2), prec_(1), mod_(2), value_(0) {}
    ResidueInt(BigInt value, BigInt ell, long prec)
        : ell_(std::move(ell)), prec_(prec), mod_(ipow(ell_, (unsigned long)prec)),
          value_(imod(value, mod_)) {
        if (prec_ <= 0) throw domain_error("BadModulus", "precision must be positive");
    }

    const BigInt& value() const { return value_; }
    const BigInt& ell() const { return ell_; }
    long precision() const { return prec_; }
    const BigInt& modulus() const { return mod_; }

    bool same_ring(const ResidueInt& o) const { return ell_ == o.ell_ && prec_ == o.prec_; }

    ResidueInt operator+(const ResidueInt& o) const { chk(o); return ResidueInt(value_ + o.value_, ell_, prec_); }
    ResidueInt operator-(const ResidueInt& o) const { chk(o); return ResidueInt(value_ - o.value_, ell_, prec_); }
    ResidueInt operator-() const { return ResidueInt(-value_, ell_, prec_); }
    ResidueInt operator*(const ResidueInt& o) const { chk(o); return ResidueInt(value_ * o.value_, ell_, prec_); }
    bool operator==(const ResidueInt& o) const { return same_ring(o) && value_ == o.value_; }
    bool operator!=(const ResidueInt& o) const { return !(*this == o); }

    bool is_unit() const { return imod(value_, ell_) != 0; }

    ResidueInt inv() const {
        if (!is_unit()) throw domain_error("NotAUnit", "inverse in Z/l^N of a non-unit");
        BigInt s, t;
        igcdext(value_, mod_, s, t);
        return ResidueInt(s, ell_, prec_);
    }

    ResidueInt pow(const BigInt& e) const {
        BigInt r;
        mpz_powm(r.get_mpz_t(), value_.get_mpz_t(), e.get_mpz_t(), mod_.get_mpz_t());
        return ResidueInt(r, ell_, prec_);
    }

    // Symmetric representative in (-l^N/2, l^N/2].
    BigInt lift_centered() const {
        BigInt half = mod_ / 2;
        if (value_ > half) return value_ - mod_;
        return value_;
    }

private:
    void chk(const ResidueInt& o) const {
        if (!same_ring(o)) throw domain_error("ModulusMismatch", "mixed residue rings");
    }
    BigInt ell_;
    long prec_;
    BigInt mod_;
    BigInt value_;
};

} // namespace toolkit
