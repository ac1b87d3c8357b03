#pragma once

#include "toolkit/exact/fpmat.hpp"
#include "toolkit/exact/matrix.hpp"
#include "toolkit/exact/poly.hpp"

namespace toolkit::padic {

// Finite-dimensional Q-algebra by structure constants: e_i e_j = sum_k
// alpha[i][j][k] e_k.  The unit's coordinates are solved for on
// construction (an inconsistent or non-unital table is rejected).
class StructuredAlgebra {
public:
    StructuredAlgebra(size_t dim, std::vector<BigRat> mult);

    size_t dim() const { return n_; }
    const BigRat& alpha(size_t i, size_t j, size_t k) const { return mult_[(i * n_ + j) * n_ + k]; }
    const std::vector<BigRat>& unit() const { return unit_; }

    std::vector<BigRat> mul(const std::vector<BigRat>& x, const std::vector<BigRat>& y) const;
    QMat left_mult(const std::vector<BigRat>& x) const;
    QMat right_mult(const std::vector<BigRat>& x) const;
    BigRat trace_left(const std::vector<BigRat>& x) const;
    // T(i,j) = Tr(L_{e_i e_j}) (regular-representation trace form)
    QMat trace_form() const;
    bool is_commutative() const;
    bool is_semisimple() const; // trace form nondegenerate (char 0)

    // spot-verifiable invariants from the spec: associativity on all basis
    // triples and two-sided unit; throws "NotClosed"/"NotUnital"
    void verify() const;

    // subalgebra on the span of `rows` (must be multiplicatively closed);
    // also returns the embedding (rows themselves)
    StructuredAlgebra subalgebra(const QMat& rows) const;

    // standard constructions used throughout the tests and CLI
    static StructuredAlgebra matrix_algebra(size_t n);
    static StructuredAlgebra quaternion(const BigRat& a, const BigRat& b);
    static StructuredAlgebra from_polynomial(const QPoly& f); // Q[x]/(f)
    static StructuredAlgebra direct_sum(const StructuredAlgebra& a, const StructuredAlgebra& b);

private:
    size_t n_;
    std::vector<BigRat> mult_;
    std::vector<BigRat> unit_;
};

// Z_l-order in a structured algebra: rows of `basis` span the lattice.
struct LocalizedOrder {
    StructuredAlgebra alg;
    BigInt ell;
    QMat basis; // dim x dim, full rank
};

struct ApproxIdempotent {
    std::vector<BigRat> element;      // ambient algebra coordinates
    std::vector<BigInt> order_coords; // w.r.t. the order basis, mod ell^precision
    BigInt ell;
    long precision = 0;
};

// membership of v in the Z_(l)-span of the order basis
bool order_contains(const LocalizedOrder& ord, const std::vector<BigRat>& v);

// Structure constants of the order basis (l-integral rationals).
std::vector<BigRat> order_structure_constants(const LocalizedOrder& ord);

LocalizedOrder seed_order(const StructuredAlgebra& alg, const BigInt& ell);
LocalizedOrder maximal_order(const LocalizedOrder& ord);

// Literal enlargement check: does some F_l-subspace W of (1/l)O/O give an
// order O + (1/l)W? Exponential in dim; test-oracle for maximal_order on
// small algebras.
bool has_enlargement_by_subspace_sweep(const LocalizedOrder& ord);

// basis rows of the centralizer of the whole algebra
QMat center_basis(const StructuredAlgebra& alg);

struct EtaleSplit {
    LocalizedOrder order;
    std::vector<ApproxIdempotent> idempotents;
};
EtaleSplit split_etale(const StructuredAlgebra& alg, const BigInt& ell, long precision);

struct LocalInvariant {
    long n = 0;       // matrix size
    long inv_num = 0; // invariant r/d in lowest terms, in [0,1)
    long inv_den = 1;
    long d = 1;       // index of the division algebra
    long residue_degree = 1;  // [Z(D)^ur : Q_l]
    long center_degree = 1;   // [Z(D) : Q_l]
};
LocalInvariant local_invariant(const StructuredAlgebra& alg, const BigInt& ell,
                               const ApproxIdempotent& idem);

struct ModuleDecomposition {
    std::vector<long> multiplicities;  // per central factor, in idempotent order
    std::vector<QMat> projectors;      // approximate isotypic projectors mod l^N
    std::vector<LocalInvariant> factors;
};
ModuleDecomposition decompose_module(const StructuredAlgebra& alg, const std::vector<QMat>& rep,
                                     const BigInt& ell, long precision);

// --- finite F_l-algebras (reductions of orders) -------------------------

struct FpAlgebra {
    Fp f;
    size_t dim = 0;
    std::vector<int64_t> mult; // (i*dim + j)*dim + k
    std::vector<int64_t> unit;

    int64_t alpha(size_t i, size_t j, size_t k) const { return mult[(i * dim + j) * dim + k]; }
    std::vector<int64_t> mul(const std::vector<int64_t>& x, const std::vector<int64_t>& y) const;
    FpMat left_mult(const std::vector<int64_t>& x) const;
    FpMat right_mult(const std::vector<int64_t>& x) const;
    std::vector<int64_t> pow(std::vector<int64_t> x, BigInt e) const;
};

// reduction of an order modulo l (unit must lie in the order)
FpAlgebra order_mod_ell(const LocalizedOrder& ord);

// Jacobson radical by the iterated p-trace method (works in small
// characteristic where the plain trace form fails); returns a basis.
std::vector<std::vector<int64_t>> fp_algebra_radical(const FpAlgebra& a);

// quotient by a two-sided ideal given by spanning vectors; also returns the
// projection (old coords -> new coords) and a lift (new -> old)
struct FpQuotient {
    FpAlgebra algebra;
    FpMat projection;
    FpMat lift;
};
FpQuotient fp_algebra_quotient(const FpAlgebra& a, const std::vector<std::vector<int64_t>>& ideal);

// unital subalgebra e*A*e for an idempotent e (here always two-sided since
// e is central); basis + inclusion map
struct FpCut {
    FpAlgebra algebra;
    FpMat inclusion; // new basis rows in old coordinates
};
FpCut fp_algebra_cut(const FpAlgebra& a, const std::vector<int64_t>& idem);

// center of a (unital) F_l-algebra: basis rows of {z : zx = xz for all x}
std::vector<std::vector<int64_t>> fp_algebra_center(const FpAlgebra& a);

} // namespace toolkit::padic
