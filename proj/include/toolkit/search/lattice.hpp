#pragma once

#include "toolkit/exact/matrix.hpp"

namespace toolkit::search {

// Euclidean lattice with exact rational basis (columns are generators).
struct EuclideanLattice {
    QMat basis; // n x n, columns independent
    size_t dim() const { return basis.rows(); }
};

EuclideanLattice lattice_from_basis(const QMat& basis);

// All coordinate vectors x in Z^n with (Bx - w)^T (Bx - w) <= r2, by bounded
// recursive enumeration on the Gram matrix (exact arithmetic throughout).
// Vectors are returned in lexicographic coordinate order.
std::vector<std::vector<BigInt>> vectors_in_ball_serial(const EuclideanLattice& lat,
                                                        const std::vector<BigRat>& w,
                                                        const BigRat& r2);
std::vector<std::vector<BigInt>> vectors_in_ball_omp(const EuclideanLattice& lat,
                                                     const std::vector<BigRat>& w,
                                                     const BigRat& r2);

// Lemma bounds: a_n = sqrt(n)/2 cover radius factor, b_n = max(1, a_n).

// Lattice point lambda with |lambda - w| <= r*sqrt(n)/2, given that B_r(0)
// contains n independent lattice vectors (checked; "InsufficientRadius").
// Ties broken by lexicographic coordinate order.
std::vector<BigRat> covering_point(const EuclideanLattice& lat, const std::vector<BigRat>& w,
                                   const BigRat& r);

// All lattice vectors of length <= max(1, sqrt(n)/2) * r; verified to
// generate the lattice (Smith index check), same precondition.
struct GeneratorSet {
    std::vector<std::vector<BigRat>> vectors;    // ambient coordinates
    std::vector<std::vector<BigInt>> coordinates; // w.r.t. the input basis
};
GeneratorSet generators_in_ball(const EuclideanLattice& lat, const BigRat& r);

// Exact check that the rows of `coords` span Z^n (all Smith divisors 1).
bool generates_full_lattice(const std::vector<std::vector<BigInt>>& coords, size_t n);

} // namespace toolkit::search
