#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "toolkit/search/bytes.hpp"
#include "toolkit/search/lattice.hpp"

#include <random>
#include <set>

using namespace toolkit;
using namespace toolkit::search;

static QMat basis2(long a, long b, long c, long d) {
    QMat m(2, 2);
    m(0, 0) = a;
    m(0, 1) = b;
    m(1, 0) = c;
    m(1, 1) = d;
    return m;
}

TEST_CASE("enumerate_bounded finds the cube root") {
    SearchSpace<long> space;
    space.decoder = small_integer_decode;
    space.predicate = [](const long& x) { return x * x * x == 27; };
    space.max_length = 2;
    auto found = enumerate_bounded(space);
    REQUIRE(found.size() >= 1);
    CHECK(found[0] == 3);
    // dedup: the zigzag codec is not prefix-free across lengths, so 3 also
    // appears at length 2 (leading zero byte); order is still string order
    for (long v : found) CHECK(v == 3);
}

TEST_CASE("enumerate_bounded: always-false and H=0 boundaries") {
    SearchSpace<long> space;
    space.decoder = small_integer_decode;
    space.predicate = [](const long&) { return false; };
    space.max_length = 2;
    CHECK(enumerate_bounded(space).empty());

    SearchSpace<long> zero;
    zero.decoder = small_integer_decode;
    zero.predicate = [](const long&) { return true; };
    zero.max_length = 0;
    // empty string is not a candidate under this codec
    CHECK(enumerate_bounded(zero).empty());
}

TEST_CASE("enumerate_bounded monotone in H and omp == serial") {
    SearchSpace<long> space;
    space.decoder = small_integer_decode;
    space.predicate = [](const long& x) { return x % 7 == 0; };
    for (unsigned H = 0; H <= 2; ++H) {
        space.max_length = H;
        auto serial = enumerate_bounded_serial(space);
        auto omp = enumerate_bounded_omp(space);
        CHECK(serial == omp);
        if (H > 0) {
            space.max_length = H - 1;
            auto prev = enumerate_bounded_serial(space);
            // prefix property: result(H-1) is a prefix of result(H)
            REQUIRE(prev.size() <= serial.size());
            for (size_t i = 0; i < prev.size(); ++i) CHECK(prev[i] == serial[i]);
        }
    }
}

TEST_CASE("covering_point on Z^2 at the worst-case center") {
    auto lat = lattice_from_basis(basis2(1, 0, 0, 1));
    std::vector<BigRat> w{rat_from_string("1/2"), rat_from_string("1/2")};
    auto pt = covering_point(lat, w, BigRat(1));
    // distance exactly sqrt(2)/2 = a_2 * r; lex tie-break picks (0,0)
    CHECK(pt[0] == 0);
    CHECK(pt[1] == 0);
}

TEST_CASE("covering_point trivial and 1-d cases") {
    auto lat = lattice_from_basis(basis2(1, 0, 0, 1));
    std::vector<BigRat> w{BigRat(3), BigRat(-2)};
    auto pt = covering_point(lat, w, BigRat(1));
    CHECK(pt[0] == 3);
    CHECK(pt[1] == -2);

    QMat b1(1, 1);
    b1(0, 0) = 1;
    auto l1 = lattice_from_basis(b1);
    auto p1 = covering_point(l1, {rat_from_string("2/5")}, BigRat(1));
    CHECK(p1[0] == 0); // 0.4 rounds into [−1/2, 1/2]
}

TEST_CASE("covering_point radius precondition") {
    // 2Z x Z with r = 1: no two independent vectors in B_1(0)
    auto lat = lattice_from_basis(basis2(2, 0, 0, 1));
    std::vector<BigRat> w{BigRat(0), BigRat(0)};
    CHECK_THROWS_AS(covering_point(lat, w, BigRat(1)), domain_error);
}

TEST_CASE("generators_in_ball basic") {
    auto lat = lattice_from_basis(basis2(1, 0, 0, 1));
    auto g = generators_in_ball(lat, BigRat(1));
    std::set<std::pair<long, long>> got;
    for (auto& v : g.coordinates) got.insert({v[0].get_si(), v[1].get_si()});
    CHECK(got.count({1, 0}));
    CHECK(got.count({-1, 0}));
    CHECK(got.count({0, 1}));
    CHECK(got.count({0, -1}));
    CHECK(generates_full_lattice(g.coordinates, 2));

    // 2Z x Z with r = 2 (derived by exhaustive enumeration to length 2)
    auto lat2 = lattice_from_basis(basis2(2, 0, 0, 1));
    auto g2 = generators_in_ball(lat2, BigRat(2));
    CHECK(generates_full_lattice(g2.coordinates, 2));
    for (auto& v : g2.vectors) {
        BigRat n2 = v[0] * v[0] + v[1] * v[1];
        CHECK(n2 <= 4); // b_2 = 1, so |v| <= r
    }

    QMat b1(1, 1);
    b1(0, 0) = 1;
    auto l1 = lattice_from_basis(b1);
    auto g1 = generators_in_ball(l1, BigRat(1));
    REQUIRE(g1.coordinates.size() == 2); // exactly ±1
}

TEST_CASE("lat_ball bounds on randomized lattices") {
    std::mt19937 rng(41);
    std::uniform_int_distribution<long> entry(-5, 5);
    std::uniform_int_distribution<long> wnum(-20, 20);
    int done = 0;
    while (done < 200) {
        size_t n = 1 + rng() % 4;
        QMat b(n, n);
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) b(i, j) = entry(rng);
        if (determinant(b) == 0) continue;
        EuclideanLattice lat;
        try {
            lat = lattice_from_basis(b);
        } catch (const domain_error&) {
            continue;
        }
        // choose r large enough: max column norm is always enough
        BigRat r2max(0);
        for (size_t j = 0; j < n; ++j) {
            BigRat c2(0);
            for (size_t i = 0; i < n; ++i) c2 += b(i, j) * b(i, j);
            if (c2 > r2max) r2max = c2;
        }
        // r = ceil(sqrt(r2max)) as rational
        long rint = 1;
        while (BigRat(rint) * BigRat(rint) < r2max) ++rint;
        BigRat r(rint);

        std::vector<BigRat> w(n);
        for (size_t i = 0; i < n; ++i) w[i] = BigRat(wnum(rng), 7);

        auto pt = covering_point(lat, w, r);
        BigRat d2(0);
        for (size_t i = 0; i < n; ++i) {
            BigRat d = pt[i] - w[i];
            d2 += d * d;
        }
        CHECK(d2 <= r * r * BigRat((long)n) / 4);

        auto gens = generators_in_ball(lat, r);
        CHECK(generates_full_lattice(gens.coordinates, n));
        ++done;
    }
}

TEST_CASE("vectors_in_ball omp equals serial") {
    std::mt19937 rng(5);
    std::uniform_int_distribution<long> entry(-4, 4);
    for (int trial = 0; trial < 40; ++trial) {
        size_t n = 1 + rng() % 3;
        QMat b(n, n);
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) b(i, j) = entry(rng);
        if (determinant(b) == 0) continue;
        auto lat = lattice_from_basis(b);
        BigRat r2(9);
        auto s = vectors_in_ball_serial(lat, {}, r2);
        auto p = vectors_in_ball_omp(lat, {}, r2);
        CHECK(s == p);
    }
}
