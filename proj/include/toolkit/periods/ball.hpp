#pragma once

#include "toolkit/exact/rational.hpp"

#include <mpfr.h>
#include <string>

namespace toolkit::periods {

// Working precision in bits for newly created Real values (per thread).
void set_precision(long bits);
long precision();

// RAII wrapper over mpfr_t at the thread's working precision.
class Real {
public:
    Real();
    Real(double d);
    Real(long v);
    explicit Real(const BigRat& q);
    Real(const Real& o);
    Real(Real&& o) noexcept;
    Real& operator=(const Real& o);
    Real& operator=(Real&& o) noexcept;
    ~Real();

    static Real pi();

    Real operator+(const Real& o) const;
    Real operator-(const Real& o) const;
    Real operator-() const;
    Real operator*(const Real& o) const;
    Real operator/(const Real& o) const;
    Real sqrt() const;
    Real abs() const;
    Real round() const; // nearest integer

    bool operator<(const Real& o) const;
    bool operator==(const Real& o) const;

    double to_double() const;
    long to_long() const;
    std::string str(size_t digits = 30) const;
    // 2^(exp - prec): magnitude of one rounding step at this value
    double ulp() const;

    mpfr_srcptr raw() const { return v_; }
    mpfr_ptr raw() { return v_; }

private:
    mpfr_t v_;
};

// Midpoint-radius interval; the radius is a double with directed safety
// margins on every operation.
struct Ball {
    Real mid;
    double rad = 0;

    Ball() = default;
    Ball(Real m, double r = 0) : mid(std::move(m)), rad(r) {}
    Ball(double m) : mid(m) {}
    static Ball from_rat(const BigRat& q) { return Ball(Real(q)); }

    Ball operator+(const Ball& o) const;
    Ball operator-(const Ball& o) const;
    Ball operator-() const;
    Ball operator*(const Ball& o) const;
    Ball operator/(const Ball& o) const;
    Ball sqrt() const;

    double abs_upper() const;
    double abs_lower() const; // 0 when the ball straddles zero
    bool contains_zero() const { return abs_lower() == 0; }
    bool is_negative_certain() const;
    bool is_positive_certain() const;
};

struct CBall {
    Ball re, im;

    CBall() = default;
    CBall(Ball r, Ball i) : re(std::move(r)), im(std::move(i)) {}
    CBall(double r, double i = 0) : re(r), im(i) {}

    CBall operator+(const CBall& o) const { return {re + o.re, im + o.im}; }
    CBall operator-(const CBall& o) const { return {re - o.re, im - o.im}; }
    CBall operator-() const { return {-re, -im}; }
    CBall operator*(const CBall& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    CBall conj() const { return {re, -im}; }
    CBall inv() const;
    CBall operator/(const CBall& o) const { return *this * o.inv(); }

    double abs_upper() const;
    double abs_lower() const;
    double rad() const;
    CBall scaled(long num, long den) const; // exact dyadic-ish scaling by num/den
};

CBall cball_from_rat(const BigRat& re, const BigRat& im);

} // namespace toolkit::periods
