#pragma once

// Test-side oracles, independent of the library's implementation path.

#include "toolkit/exact/matrix.hpp"
#include "toolkit/exact/poly.hpp"

#include <cstdint>
#include <map>
#include <vector>

namespace oracles {

using toolkit::BigInt;
using toolkit::BigRat;
using toolkit::QMat;
using toolkit::ZMat;

// Integer row span membership: does v lie in the integer row span of m?
// Solves with exact rational elimination, then checks integrality against
// a HNF-free Gaussian method (plain integer row reduction).
bool in_integer_row_span(const ZMat& m, const std::vector<BigInt>& v);

// Brute-force Smith divisors for small matrices by gcd minors:
// d_k = gcd of all k x k minors; divisor_k = d_k / d_{k-1}.
std::vector<BigInt> snf_by_minors(const ZMat& m);

// Kernel-rank oracle for the minimal polynomial: evaluates a candidate
// polynomial at the matrix and checks it vanishes; also returns the
// characteristic polynomial by cofactor expansion of (xI - m).
std::vector<BigRat> charpoly_by_expansion(const QMat& m);

// Hilbert symbol (a,b)_p by direct solubility search of ax^2+by^2=z^2
// over primitive triples mod p^3 (odd p) or mod 2^5 (p=2).
int hilbert_symbol(long a, long b, long p);
// (a,b)_infinity
int hilbert_symbol_real(long a, long b);

// Real arithmetic-geometric mean with long double; 1e-17-ish accuracy is
// plenty for cross-checks that only need 1e-12.
long double agm(long double a, long double b);

// Naive count of points on y^2 = x^3 + Ax + B over F_p by scanning all
// (x, y) pairs (projective point at infinity included).
long count_points_naive(long A, long B, long p);

} // namespace oracles
