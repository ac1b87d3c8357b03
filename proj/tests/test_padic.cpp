#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_oracles.hpp"
#include "toolkit/padic/algebra.hpp"

#include <random>
#include <set>

using namespace toolkit;
using namespace toolkit::padic;

static QPoly qp(std::vector<long> coeffs) {
    std::vector<BigRat> c(coeffs.size());
    for (size_t i = 0; i < coeffs.size(); ++i) c[i] = coeffs[i];
    return QPoly(std::move(c));
}

// discriminant valuation of the trace form on an order basis
static long order_disc_valuation(const LocalizedOrder& ord) {
    size_t n = ord.alg.dim();
    QMat g(n, n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            g(i, j) = ord.alg.trace_left(ord.alg.mul(ord.basis.row(i), ord.basis.row(j)));
    BigRat det = determinant(g);
    return rat_valuation(det, ord.ell);
}

TEST_CASE("structured algebra constructions verify") {
    StructuredAlgebra::matrix_algebra(2).verify();
    StructuredAlgebra::quaternion(BigRat(-1), BigRat(-1)).verify();
    StructuredAlgebra::from_polynomial(qp({-5, 0, 1})).verify();
    StructuredAlgebra::direct_sum(StructuredAlgebra::matrix_algebra(2),
                                  StructuredAlgebra::from_polynomial(qp({-1, 1})))
        .verify();
}

TEST_CASE("seed_order examples") {
    // M2(Q), any l: the matrix-unit basis is already integral
    auto m2 = StructuredAlgebra::matrix_algebra(2);
    auto ord = seed_order(m2, BigInt(3));
    CHECK(ord.basis == QMat::identity(4, BigRat(1), BigRat(0)));

    // constants with denominator 2 at l=2: basis scaled by 2^r
    auto half = StructuredAlgebra::from_polynomial(
        QPoly(std::vector<BigRat>{rat_from_string("-1/2"), BigRat(0), BigRat(1)}));
    auto ord2 = seed_order(half, BigInt(2));
    // x*x = 1/2, so x gets scaled: lattice {1, 2x}
    CHECK(ord2.basis(0, 0) == 1);
    CHECK(order_contains(ord2, {BigRat(0), BigRat(2)}));
    CHECK(!order_contains(ord2, {BigRat(0), BigRat(1)}));

    // Q[x]/(x^2-5) at l=2: integral constants keep {1, x}
    auto r5 = StructuredAlgebra::from_polynomial(qp({-5, 0, 1}));
    auto ord3 = seed_order(r5, BigInt(2));
    CHECK(ord3.basis == QMat::identity(2, BigRat(1), BigRat(0)));
}

TEST_CASE("maximal_order: M2 unchanged, sqrt5 enlarged at 2, split etale") {
    auto m2 = StructuredAlgebra::matrix_algebra(2);
    auto mo = maximal_order(seed_order(m2, BigInt(2)));
    CHECK(mo.basis == QMat::identity(4, BigRat(1), BigRat(0)));

    // Q(sqrt5) at 2: enlarge {1,x} to {1,(1+x)/2}; trace-form discriminant
    // valuation drops from v2(20)=2 to v2(5)=0
    auto r5 = StructuredAlgebra::from_polynomial(qp({-5, 0, 1}));
    auto seed = seed_order(r5, BigInt(2));
    CHECK(order_disc_valuation(seed) == 2);
    auto mo5 = maximal_order(seed);
    CHECK(order_disc_valuation(mo5) == 0);
    CHECK(order_contains(mo5, {rat_from_string("1/2"), rat_from_string("1/2")}));
    CHECK(!order_contains(mo5, {rat_from_string("1/4"), rat_from_string("1/4")}));

    // split etale Q+Q: maximal order holds both exact idempotents
    auto split = StructuredAlgebra::from_polynomial(qp({-1, 0, 1})); // x^2 = 1
    for (long l : {2L, 3L, 5L}) {
        auto mos = maximal_order(seed_order(split, BigInt(l)));
        CHECK(order_contains(mos, {rat_from_string("1/2"), rat_from_string("1/2")}));
        CHECK(order_contains(mos, {rat_from_string("1/2"), rat_from_string("-1/2")}));
    }
}

TEST_CASE("maximal_order is idempotent on random 4-dim etale algebras") {
    std::mt19937 rng(97);
    std::uniform_int_distribution<long> d(-6, 6);
    int done = 0;
    while (done < 50) {
        QPoly f(std::vector<BigRat>{BigRat(d(rng)), BigRat(d(rng)), BigRat(d(rng)),
                                    BigRat(d(rng)), BigRat(1)});
        StructuredAlgebra a = StructuredAlgebra::from_polynomial(f);
        if (!a.is_semisimple()) continue; // need etale
        long l = std::vector<long>{2, 3, 5, 7}[(size_t)(done % 4)];
        LocalizedOrder mo = maximal_order(seed_order(a, BigInt(l)));
        LocalizedOrder mo2 = maximal_order(mo);
        CHECK(mo2.basis == mo.basis);
        ++done;
    }
}

TEST_CASE("center examples") {
    CHECK(center_basis(StructuredAlgebra::matrix_algebra(2)).rows() == 1);
    CHECK(center_basis(StructuredAlgebra::from_polynomial(qp({-1, 0, 1}))).rows() == 2);
    CHECK(center_basis(StructuredAlgebra::quaternion(BigRat(-1), BigRat(-1))).rows() == 1);
}

TEST_CASE("fp algebra radical: known cases") {
    // F_2[t]/t^2: radical = (t)
    {
        FpAlgebra a{Fp(2), 2, std::vector<int64_t>(8, 0), {1, 0}};
        // e0 = 1, e1 = t: 1*1=1, 1*t=t, t*1=t, t*t=0
        a.mult[(0 * 2 + 0) * 2 + 0] = 1;
        a.mult[(0 * 2 + 1) * 2 + 1] = 1;
        a.mult[(1 * 2 + 0) * 2 + 1] = 1;
        auto r = fp_algebra_radical(a);
        REQUIRE(r.size() == 1);
        CHECK(r[0] == std::vector<int64_t>{0, 1});
    }
    // M2(F_l): radical = 0
    for (long l : {2L, 3L, 5L}) {
        auto m2 = StructuredAlgebra::matrix_algebra(2);
        auto ord = seed_order(m2, BigInt(l));
        auto a = order_mod_ell(ord);
        CHECK(fp_algebra_radical(a).empty());
    }
    // upper triangular 2x2 over F_2 embedded as a 3-dim algebra:
    // basis E11, E22, E12; radical = (E12)
    {
        FpAlgebra a{Fp(2), 3, std::vector<int64_t>(27, 0), {1, 1, 0}};
        auto set = [&](size_t i, size_t j, size_t k) { a.mult[(i * 3 + j) * 3 + k] = 1; };
        set(0, 0, 0); // E11 E11 = E11
        set(1, 1, 1); // E22 E22 = E22
        set(0, 2, 2); // E11 E12 = E12
        set(2, 1, 2); // E12 E22 = E12
        auto r = fp_algebra_radical(a);
        REQUIRE(r.size() == 1);
        CHECK(r[0] == std::vector<int64_t>{0, 0, 1});
    }
}

TEST_CASE("split_etale: exact idempotents for x^2 = x pattern") {
    // Q[x]/(x^2-1) ~ Q+Q with idempotents (1±x)/2; use it instead of x^2-x
    // (same algebra, unital table)
    auto alg = StructuredAlgebra::from_polynomial(qp({-1, 0, 1}));
    auto split = split_etale(alg, BigInt(5), 3);
    REQUIRE(split.idempotents.size() == 2);
    std::set<std::string> got;
    for (auto& e : split.idempotents) {
        // each refined idempotent must be exactly (1+x)/2 or (1-x)/2 mod 5^3
        // in ambient coordinates: check e*e = e exactly as rationals is not
        // required; check the defining congruence instead
        auto sq = alg.mul(e.element, e.element);
        for (size_t i = 0; i < 2; ++i) {
            BigRat diff = sq[i] - e.element[i];
            if (diff != 0) CHECK(rat_valuation(diff, BigInt(5)) >= 3);
        }
    }
}

TEST_CASE("split_etale: x^2+1 splits at 5 (roots via Hensel oracle), inert at 3") {
    auto alg = StructuredAlgebra::from_polynomial(qp({1, 0, 1}));
    auto split5 = split_etale(alg, BigInt(5), 4);
    REQUIRE(split5.idempotents.size() == 2);
    // Hensel-lift oracle: r^2 = -1 mod 5^4 starting from 2
    BigInt mod = ipow(BigInt(5), 4);
    BigInt r(2);
    for (int it = 0; it < 8; ++it) {
        // Newton: r -= (r^2+1) / (2r) mod 5^4
        BigInt num = imod(r * r + 1, mod);
        BigInt den = imod(2 * r, mod), s, t;
        igcdext(den, mod, s, t);
        r = imod(r - num * s, mod);
    }
    CHECK(imod(r * r + 1, mod) == 0);
    // x acts on each idempotent factor as one of the two roots: x*e = root*e
    std::set<std::string> roots_seen;
    for (auto& e : split5.idempotents) {
        std::vector<BigRat> x{BigRat(0), BigRat(1)};
        auto xe = alg.mul(x, e.element);
        // find c mod 5^4 with xe = c*e (mod 5^4) componentwise
        // use the nonzero coordinate of e
        for (BigInt cand : {r, imod(-r, mod)}) {
            bool ok = true;
            for (size_t i = 0; i < 2; ++i) {
                BigRat diff = xe[i] - BigRat(cand) * e.element[i];
                if (diff != 0 && rat_valuation(diff, BigInt(5)) < 4) ok = false;
            }
            if (ok) roots_seen.insert(cand.get_str());
        }
    }
    CHECK(roots_seen.size() == 2);

    auto split3 = split_etale(alg, BigInt(3), 3);
    REQUIRE(split3.idempotents.size() == 1);
    // the single idempotent is 1
    CHECK(split3.idempotents[0].element[0] == 1);
    CHECK(split3.idempotents[0].element[1] == 0);
}

TEST_CASE("split_etale invariants on a corpus: orthogonality, sum, refinement") {
    std::mt19937 rng(1234);
    std::uniform_int_distribution<long> d(-5, 5);
    int done = 0;
    while (done < 30) {
        size_t deg = 2 + rng() % 3;
        std::vector<BigRat> c(deg + 1);
        for (auto& x : c) x = d(rng);
        c[deg] = 1;
        QPoly f(std::move(c));
        StructuredAlgebra a = StructuredAlgebra::from_polynomial(f);
        if (!a.is_semisimple()) continue;
        long l = std::vector<long>{3, 5, 7}[(size_t)(done % 3)];
        long N = 2 + (long)(done % 7); // up to 8
        auto s1 = split_etale(a, BigInt(l), N);
        auto s2 = split_etale(a, BigInt(l), N + 1);
        REQUIRE(s1.idempotents.size() == s2.idempotents.size());
        // refinement compatibility, measured in the maximal order's
        // coordinates (where the e^2 = e congruence lives): a perfect
        // matching mod l^N
        BigInt modN = ipow(BigInt(l), (unsigned long)N);
        size_t matched = 0;
        for (auto& e1 : s1.idempotents)
            for (auto& e2 : s2.idempotents) {
                bool eq = true;
                for (size_t i = 0; i < a.dim(); ++i)
                    if (imod(e1.order_coords[i] - e2.order_coords[i], modN) != 0) eq = false;
                if (eq) ++matched;
            }
        CHECK(matched == s1.idempotents.size());
        ++done;
    }
}

TEST_CASE("local_invariant: M2(Q) is split everywhere") {
    auto m2 = StructuredAlgebra::matrix_algebra(2);
    // center = Q: its single idempotent is 1
    ApproxIdempotent one;
    one.element = m2.unit();
    one.ell = BigInt(3);
    one.precision = 3;
    auto li = local_invariant(m2, BigInt(3), one);
    CHECK(li.n == 2);
    CHECK(li.inv_num == 0);
    CHECK(li.d == 1);
}

TEST_CASE("local_invariant: Hamilton quaternions ramified exactly at 2") {
    auto h = StructuredAlgebra::quaternion(BigRat(-1), BigRat(-1));
    ApproxIdempotent one;
    one.element = h.unit();
    one.ell = BigInt(2);
    one.precision = 3;
    auto li2 = local_invariant(h, BigInt(2), one);
    CHECK(li2.n == 1);
    CHECK(li2.d == 2);
    CHECK(li2.inv_num == 1);
    CHECK(li2.inv_den == 2);

    one.ell = BigInt(5);
    auto li5 = local_invariant(h, BigInt(5), one);
    CHECK(li5.n == 2);
    CHECK(li5.d == 1);
    CHECK(li5.inv_num == 0);
}

TEST_CASE("local_invariant agrees with the Hilbert symbol oracle") {
    for (long a : {-1L, -2L, -3L}) {
        for (long b : {-1L, -5L}) {
            auto q = StructuredAlgebra::quaternion(BigRat(a), BigRat(b));
            for (long l : {2L, 3L, 5L}) {
                ApproxIdempotent one;
                one.element = q.unit();
                one.ell = BigInt(l);
                one.precision = 3;
                auto li = local_invariant(q, BigInt(l), one);
                int sym = oracles::hilbert_symbol(a, b, l);
                if (sym == -1) {
                    CHECK(li.d == 2);
                    CHECK(li.inv_den == 2);
                } else {
                    CHECK(li.d == 1);
                }
            }
        }
    }
}

TEST_CASE("dimension bookkeeping: sum d^2 n^2 [Z:Ql] = dim E") {
    std::vector<StructuredAlgebra> algebras;
    algebras.push_back(StructuredAlgebra::matrix_algebra(2));
    algebras.push_back(StructuredAlgebra::quaternion(BigRat(-1), BigRat(-1)));
    algebras.push_back(StructuredAlgebra::direct_sum(
        StructuredAlgebra::matrix_algebra(2), StructuredAlgebra::from_polynomial(qp({-2, 0, 1}))));
    for (auto& alg : algebras) {
        for (long l : {3L, 5L}) {
            QMat zrows = center_basis(alg);
            StructuredAlgebra z = alg.subalgebra(zrows);
            auto zsplit = split_etale(z, BigInt(l), 4);
            long total = 0;
            for (auto& idem : zsplit.idempotents) {
                std::vector<BigRat> e(alg.dim(), BigRat(0));
                for (size_t i = 0; i < z.dim(); ++i)
                    for (size_t k = 0; k < alg.dim(); ++k) e[k] += idem.element[i] * zrows(i, k);
                ApproxIdempotent big;
                big.element = e;
                big.ell = BigInt(l);
                big.precision = idem.precision;
                auto li = local_invariant(alg, BigInt(l), big);
                total += li.d * li.d * li.n * li.n * li.center_degree;
            }
            CHECK(total == (long)alg.dim());
        }
    }
}

TEST_CASE("decompose_module examples") {
    // E = Q+Q acting diagonally on Q^2: multiplicities (1,1)
    {
        auto alg = StructuredAlgebra::from_polynomial(qp({-1, 0, 1})); // Q[x]/(x^2-1)
        std::vector<QMat> rep(2, QMat(2, 2));
        rep[0] = QMat::identity(2, BigRat(1), BigRat(0)); // 1
        rep[1] = QMat(2, 2);                              // x acts as diag(1,-1)
        rep[1](0, 0) = 1;
        rep[1](1, 1) = -1;
        auto dec = decompose_module(alg, rep, BigInt(5), 3);
        REQUIRE(dec.multiplicities.size() == 2);
        CHECK(dec.multiplicities[0] == 1);
        CHECK(dec.multiplicities[1] == 1);
    }
    // E = Q acting on Q^2: multiplicity 2
    {
        StructuredAlgebra alg = StructuredAlgebra::from_polynomial(qp({-1, 1})); // Q
        std::vector<QMat> rep{QMat::identity(2, BigRat(1), BigRat(0))};
        auto dec = decompose_module(alg, rep, BigInt(3), 3);
        REQUIRE(dec.multiplicities.size() == 1);
        CHECK(dec.multiplicities[0] == 2);
    }
    // E = M2(Q) on its standard module: multiplicity 1
    {
        auto alg = StructuredAlgebra::matrix_algebra(2);
        std::vector<QMat> rep(4, QMat(2, 2));
        for (size_t a = 0; a < 2; ++a)
            for (size_t b = 0; b < 2; ++b) {
                QMat m(2, 2);
                m(a, b) = 1;
                rep[a * 2 + b] = m;
            }
        auto dec = decompose_module(alg, rep, BigInt(5), 3);
        REQUIRE(dec.multiplicities.size() == 1);
        CHECK(dec.multiplicities[0] == 1);
    }
}

TEST_CASE("decompose_module rejects non-homomorphisms") {
    auto alg = StructuredAlgebra::matrix_algebra(2);
    std::vector<QMat> rep(4, QMat::identity(2, BigRat(1), BigRat(0)));
    CHECK_THROWS_AS(decompose_module(alg, rep, BigInt(5), 2), domain_error);
}

TEST_CASE("maximal_order matches the literal subspace-sweep oracle") {
    std::mt19937 rng(4242);
    std::uniform_int_distribution<long> d(-6, 6);
    int done = 0;
    while (done < 25) {
        size_t deg = 2 + rng() % 3; // dims 2..4 keep the sweep cheap
        std::vector<BigRat> c(deg + 1);
        for (auto& x : c) x = d(rng);
        c[deg] = 1;
        StructuredAlgebra a = StructuredAlgebra::from_polynomial(QPoly(std::move(c)));
        if (!a.is_semisimple()) continue;
        long l = std::vector<long>{2, 3, 5}[(size_t)(done % 3)];
        auto seed = seed_order(a, BigInt(l));
        auto mo = maximal_order(seed);
        // final order admits no enlargement within (1/l) of itself
        CHECK(!has_enlargement_by_subspace_sweep(mo));
        // if the seed was enlarged at all, the sweep must see an enlargement
        if (!(mo.basis == seed.basis)) CHECK(has_enlargement_by_subspace_sweep(seed));
        ++done;
    }
    // quaternions at 2: Hurwitz enlargement
    auto h = StructuredAlgebra::quaternion(BigRat(-1), BigRat(-1));
    auto seed = seed_order(h, BigInt(2));
    CHECK(has_enlargement_by_subspace_sweep(seed));
    auto mo = maximal_order(seed);
    CHECK(!has_enlargement_by_subspace_sweep(mo));
    CHECK(order_contains(mo, {rat_from_string("1/2"), rat_from_string("1/2"),
                              rat_from_string("1/2"), rat_from_string("1/2")}));
}
