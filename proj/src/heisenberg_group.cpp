#include "toolkit/heisenberg/heisenberg.hpp"

namespace toolkit::heisenberg {

DeltaType::DeltaType(std::vector<long> divisors) : d(std::move(divisors)) {
    if (d.empty()) throw domain_error("BadInput", "delta needs at least one divisor");
    for (size_t i = 0; i < d.size(); ++i) {
        if (d[i] % 8 != 0) throw domain_error("BadInput", "all divisors must be divisible by 8");
        if (i + 1 < d.size() && d[i] % d[i + 1] != 0)
            throw domain_error("BadInput", "divisor chain must satisfy d_{i+1} | d_i");
    }
    m = 2 * d[0];
}

long DeltaType::size() const {
    long s = 1;
    for (long di : d) s *= di;
    return s;
}

std::vector<long> DeltaType::element(long idx) const {
    std::vector<long> a(d.size());
    for (size_t i = d.size(); i-- > 0;) {
        a[i] = idx % d[i];
        idx /= d[i];
    }
    return a;
}

long DeltaType::index(const std::vector<long>& a) const {
    long idx = 0;
    for (size_t i = 0; i < d.size(); ++i) idx = idx * d[i] + (((a[i] % d[i]) + d[i]) % d[i]);
    return idx;
}

std::vector<long> DeltaType::add(const std::vector<long>& a, const std::vector<long>& b) const {
    std::vector<long> r(d.size());
    for (size_t i = 0; i < d.size(); ++i) r[i] = (((a[i] + b[i]) % d[i]) + d[i]) % d[i];
    return r;
}

std::vector<long> DeltaType::neg(const std::vector<long>& a) const {
    std::vector<long> r(d.size());
    for (size_t i = 0; i < d.size(); ++i) r[i] = ((-a[i]) % d[i] + d[i]) % d[i];
    return r;
}

long DeltaType::pairing_exp(const std::vector<long>& a, const std::vector<long>& l) const {
    // <a, l> = prod_i zeta_{d_i}^{a_i l_i} = zeta_m ^ sum (m/d_i) a_i l_i
    long e = 0;
    for (size_t i = 0; i < d.size(); ++i) {
        long ai = ((a[i] % d[i]) + d[i]) % d[i];
        long li = ((l[i] % d[i]) + d[i]) % d[i];
        long term = (ai * li) % d[i];
        e = (e + (m / d[i]) * term) % m;
    }
    return ((e % m) + m) % m;
}

NFRef DeltaType::cyclotomic_field() const { return NumberField::cyclotomic((unsigned)m); }

NFElem DeltaType::root_of_unity(long exp) const {
    exp = ((exp % m) + m) % m;
    return NFElem::gen(cyclotomic_field()).pow(exp);
}

HeisEl heis_identity(const DeltaType& delta) {
    return HeisEl{NFElem::from_rational(delta.cyclotomic_field(), 1),
                  std::vector<long>(delta.g(), 0), std::vector<long>(delta.g(), 0)};
}

HeisEl heis_mul(const DeltaType& delta, const HeisEl& x, const HeisEl& y) {
    if (x.a.size() != delta.g() || y.a.size() != delta.g())
        throw domain_error("DeltaMismatch", "element does not match delta");
    // (t1, a1, l1)(t2, a2, l2) = (t1 t2 <a2, l1>, a1 + a2, l1 + l2)
    HeisEl out;
    out.t = x.t * y.t * delta.root_of_unity(delta.pairing_exp(y.a, x.l));
    out.a = delta.add(x.a, y.a);
    out.l = delta.add(x.l, y.l);
    return out;
}

HeisEl heis_inv(const DeltaType& delta, const HeisEl& x) {
    HeisEl out;
    out.a = delta.neg(x.a);
    out.l = delta.neg(x.l);
    out.t = x.t.inv() * delta.root_of_unity(delta.pairing_exp(x.a, x.l));
    return out;
}

long commutator_pairing_exp(const DeltaType& delta, const std::vector<long>& a1,
                            const std::vector<long>& l1, const std::vector<long>& a2,
                            const std::vector<long>& l2) {
    long e = delta.pairing_exp(a1, l2) - delta.pairing_exp(a2, l1);
    return ((e % delta.m) + delta.m) % delta.m;
}

MonoMat MonoMat::identity(long m, size_t n) {
    MonoMat r;
    r.m = m;
    r.tgt.resize(n);
    r.ex.assign(n, 0);
    for (size_t i = 0; i < n; ++i) r.tgt[i] = (long)i;
    return r;
}

MonoMat MonoMat::mul(const MonoMat& o) const {
    if (m != o.m || dim() != o.dim()) throw domain_error("DeltaMismatch", "monomial matrix shapes");
    MonoMat r;
    r.m = m;
    r.tgt.resize(dim());
    r.ex.resize(dim());
    for (size_t c = 0; c < dim(); ++c) {
        long mid = o.tgt[c];
        r.tgt[c] = tgt[(size_t)mid];
        r.ex[c] = (o.ex[c] + ex[(size_t)mid]) % m;
    }
    return r;
}

std::optional<long> MonoMat::scalar_ratio(const MonoMat& o) const {
    if (m != o.m || tgt != o.tgt) return std::nullopt;
    if (dim() == 0) return 0;
    long diff = ((ex[0] - o.ex[0]) % m + m) % m;
    for (size_t c = 1; c < dim(); ++c)
        if (((ex[c] - o.ex[c]) % m + m) % m != diff) return std::nullopt;
    return diff;
}

MonoMat std_rep_monomial(const DeltaType& delta, const std::vector<long>& a,
                         const std::vector<long>& l, long t_exp) {
    long n = delta.size();
    MonoMat r;
    r.m = delta.m;
    r.tgt.resize((size_t)n);
    r.ex.resize((size_t)n);
    for (long y = 0; y < n; ++y) {
        std::vector<long> yv = delta.element(y);
        r.tgt[(size_t)y] = delta.index(delta.add(yv, a));
        r.ex[(size_t)y] = ((t_exp + delta.pairing_exp(yv, l)) % delta.m + delta.m) % delta.m;
    }
    return r;
}

Mat<NFElem> std_rep(const DeltaType& delta, const HeisEl& x) {
    long n = delta.size();
    MonoMat mono = std_rep_monomial(delta, x.a, x.l, 0);
    Mat<NFElem> out((size_t)n, (size_t)n, NFElem());
    for (long c = 0; c < n; ++c)
        out((size_t)mono.tgt[(size_t)c], (size_t)c) = x.t * delta.root_of_unity(mono.ex[(size_t)c]);
    return out;
}

MonoMat translation_matrix(const DeltaType& delta, const std::vector<long>& a,
                           const std::vector<long>& l) {
    // (T_s Q)_b = <b, l> Q_{a+b}: column a+b feeds row b with weight <b, l>
    long n = delta.size();
    MonoMat r;
    r.m = delta.m;
    r.tgt.resize((size_t)n);
    r.ex.resize((size_t)n);
    for (long c = 0; c < n; ++c) {
        std::vector<long> cv = delta.element(c);
        std::vector<long> b = delta.add(cv, delta.neg(a));
        r.tgt[(size_t)c] = delta.index(b);
        r.ex[(size_t)c] = delta.pairing_exp(b, l);
    }
    return r;
}

} // namespace toolkit::heisenberg
