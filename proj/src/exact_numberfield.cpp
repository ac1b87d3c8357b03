#include "toolkit/exact/numberfield.hpp"

#include <map>
#include <mutex>

namespace toolkit {

NumberField::NumberField(QPoly defining) : def_(std::move(defining)) {
    if (def_.degree() < 1) throw domain_error("BadField", "defining polynomial must be nonconstant");
    if (def_.lead() != 1) throw domain_error("BadField", "defining polynomial must be monic");
    for (const BigRat& c : def_.c)
        if (c.get_den() != 1) throw domain_error("BadField", "defining polynomial must have integer coefficients");
}

NFRef NumberField::rationals() {
    static NFRef q = std::make_shared<NumberField>(QPoly(std::vector<BigRat>{BigRat(0), BigRat(1)}));
    return q;
}

NFRef NumberField::cyclotomic(unsigned m) {
    static std::mutex mu;
    static std::map<unsigned, NFRef> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;
    // Phi_m = (x^m - 1) / prod_{d | m, d < m} Phi_d
    std::map<unsigned, QPoly> phis;
    for (unsigned k = 1; k <= m; ++k) {
        if (m % k != 0) continue;
        std::vector<BigRat> xk(k + 1, BigRat(0));
        xk[0] = -1;
        xk[k] = 1;
        QPoly num(std::move(xk));
        for (unsigned d = 1; d < k; ++d) {
            if (k % d != 0) continue;
            QPoly q, r;
            poly_divmod(num, phis[d], q, r);
            if (!r.is_zero()) throw domain_error("Internal", "cyclotomic division not exact");
            num = q;
        }
        phis[k] = num;
    }
    NFRef f = std::make_shared<NumberField>(phis[m]);
    cache[m] = f;
    return f;
}

NFElem::NFElem(NFRef field, std::vector<BigRat> coords) : field_(std::move(field)), c_(std::move(coords)) {
    if (field_ && c_.size() != field_->degree())
        throw domain_error("BadField", "coordinate vector length must equal field degree");
}

NFElem NFElem::rational(const BigRat& r) {
    NFElem e;
    if (r != 0) e.c_ = {r};
    return e;
}

NFElem NFElem::from_rational(const NFRef& field, const BigRat& r) {
    std::vector<BigRat> c(field->degree(), BigRat(0));
    c[0] = r;
    return NFElem(field, std::move(c));
}

NFElem NFElem::gen(const NFRef& field) {
    std::vector<BigRat> c(field->degree(), BigRat(0));
    if (c.size() < 2) throw domain_error("BadField", "generator of a degree-1 field is rational");
    c[1] = 1;
    return NFElem(field, std::move(c));
}

bool NFElem::is_zero() const {
    for (const BigRat& x : c_)
        if (x != 0) return false;
    return true;
}

bool NFElem::is_rational() const {
    for (size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return false;
    return true;
}

namespace {
// promote a pair to a common field
void align(const NFElem& a, const NFElem& b, NFElem& pa, NFElem& pb) {
    const NFRef& fa = a.field();
    const NFRef& fb = b.field();
    if (fa && fb) {
        if (fa->poly() == fb->poly()) {
            pa = a;
            pb = b;
            return;
        }
        throw domain_error("FieldMismatch", "arithmetic across distinct number fields");
    }
    if (fa) {
        pa = a;
        pb = NFElem::from_rational(fa, b.coords().empty() ? BigRat(0) : b.coords()[0]);
        return;
    }
    if (fb) {
        pa = NFElem::from_rational(fb, a.coords().empty() ? BigRat(0) : a.coords()[0]);
        pb = b;
        return;
    }
    pa = a;
    pb = b;
}
} // namespace

NFElem NFElem::operator+(const NFElem& o) const {
    NFElem a, b;
    align(*this, o, a, b);
    if (!a.field_) return rational((a.c_.empty() ? BigRat(0) : a.c_[0]) + (b.c_.empty() ? BigRat(0) : b.c_[0]));
    std::vector<BigRat> c(a.c_.size());
    for (size_t i = 0; i < c.size(); ++i) c[i] = a.c_[i] + b.c_[i];
    return NFElem(a.field_, std::move(c));
}

NFElem NFElem::operator-(const NFElem& o) const {
    return *this + (-o);
}

NFElem NFElem::operator-() const {
    NFElem r = *this;
    for (BigRat& x : r.c_) x = -x;
    return r;
}

NFElem NFElem::operator*(const NFElem& o) const {
    NFElem a, b;
    align(*this, o, a, b);
    if (!a.field_) {
        BigRat ra = a.c_.empty() ? BigRat(0) : a.c_[0];
        BigRat rb = b.c_.empty() ? BigRat(0) : b.c_[0];
        return rational(ra * rb);
    }
    size_t n = a.c_.size();
    std::vector<BigRat> prod(2 * n - 1, BigRat(0));
    for (size_t i = 0; i < n; ++i) {
        if (a.c_[i] == 0) continue;
        for (size_t j = 0; j < n; ++j) prod[i + j] += a.c_[i] * b.c_[j];
    }
    // reduce modulo the defining polynomial (monic)
    const QPoly& f = a.field_->poly();
    for (size_t k = prod.size(); k-- > n;) {
        BigRat lead = prod[k];
        if (lead == 0) continue;
        prod[k] = 0;
        for (size_t j = 0; j < n; ++j) prod[k - n + j] -= lead * f.c[j];
    }
    prod.resize(n);
    return NFElem(a.field_, std::move(prod));
}

NFElem NFElem::inv() const {
    if (is_zero()) throw domain_error("DivisionByZero", "inverse of zero field element");
    if (!field_) return rational(BigRat(1) / c_[0]);
    QPoly e{std::vector<BigRat>(c_)};
    QPoly s, t;
    QPoly g = poly_gcdext(e, field_->poly(), s, t);
    if (g.degree() != 0)
        throw domain_error("NotAField", "defining polynomial is reducible (zero divisor hit)");
    // s*e = g (const) mod f  =>  e^{-1} = s/g
    QPoly invp = poly_scale(s, BigRat(1) / g.c[0]);
    std::vector<BigRat> c(field_->degree(), BigRat(0));
    for (size_t i = 0; i < invp.c.size(); ++i) c[i] = invp.c[i];
    return NFElem(field_, std::move(c));
}

NFElem NFElem::pow(long e) const {
    if (e < 0) return inv().pow(-e);
    NFElem r = field_ ? from_rational(field_, 1) : rational(BigRat(1));
    NFElem b = *this;
    unsigned long ue = (unsigned long)e;
    while (ue) {
        if (ue & 1) r = r * b;
        b = b * b;
        ue >>= 1;
    }
    return r;
}

bool NFElem::operator==(const NFElem& o) const {
    NFElem a, b;
    align(*this, o, a, b);
    if (!a.field_) {
        BigRat ra = a.c_.empty() ? BigRat(0) : a.c_[0];
        BigRat rb = b.c_.empty() ? BigRat(0) : b.c_[0];
        return ra == rb;
    }
    return a.c_ == b.c_;
}

Mat<NFElem> nf_identity(const NFRef& field, size_t n) {
    Mat<NFElem> m(n, n, NFElem());
    for (size_t i = 0; i < n; ++i) m(i, i) = NFElem::from_rational(field, 1);
    return m;
}

Mat<NFElem> nf_zero_matrix(const NFRef&, size_t r, size_t c) {
    return Mat<NFElem>(r, c, NFElem());
}

} // namespace toolkit
