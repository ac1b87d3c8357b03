#pragma once

#include "toolkit/exact/matrix.hpp"
#include "toolkit/exact/poly.hpp"
#include <memory>

namespace toolkit {

// Number field K = Q[x]/(f), f monic irreducible with integer coefficients.
// Elements hold coordinates in the power basis 1, x, ..., x^{deg-1}.
class NumberField {
public:
    explicit NumberField(QPoly defining);
    const QPoly& poly() const { return def_; }
    size_t degree() const { return (size_t)def_.degree(); }

    static std::shared_ptr<const NumberField> rationals(); // degree 1: x
    static std::shared_ptr<const NumberField> cyclotomic(unsigned m);

private:
    QPoly def_;
};

using NFRef = std::shared_ptr<const NumberField>;

// An NFElem with a null field reference is a plain rational constant; it
// promotes to any field on contact.  This keeps the generic matrix code
// (which needs default-constructible zeros and ones) usable over K.
class NFElem {
public:
    NFElem() = default; // rational zero
    NFElem(NFRef field, std::vector<BigRat> coords);
    static NFElem rational(const BigRat& r);
    static NFElem from_rational(const NFRef& field, const BigRat& r);
    static NFElem gen(const NFRef& field); // the class of x

    const NFRef& field() const { return field_; }
    const std::vector<BigRat>& coords() const { return c_; }
    bool is_zero() const;
    bool is_rational() const;
    BigRat rational_part() const { return c_.empty() ? BigRat(0) : c_[0]; }

    NFElem operator+(const NFElem& o) const;
    NFElem operator-(const NFElem& o) const;
    NFElem operator-() const;
    NFElem operator*(const NFElem& o) const;
    NFElem inv() const;
    NFElem pow(long e) const;
    bool operator==(const NFElem& o) const;
    bool operator!=(const NFElem& o) const { return !(*this == o); }

private:
    NFRef field_;
    std::vector<BigRat> c_;
};

template <>
struct field_traits<NFElem> {
    static NFElem zero() { return NFElem(); }
    static NFElem one() { return NFElem::rational(BigRat(1)); }
    static bool is_zero(const NFElem& x) { return x.is_zero(); }
    static NFElem inv(const NFElem& x) { return x.inv(); }
};

// helpers for matrices over a fixed field
Mat<NFElem> nf_identity(const NFRef& field, size_t n);
Mat<NFElem> nf_zero_matrix(const NFRef& field, size_t r, size_t c);

} // namespace toolkit
