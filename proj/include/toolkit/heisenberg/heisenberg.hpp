#pragma once

#include "toolkit/exact/numberfield.hpp"

#include <complex>
#include <optional>

namespace toolkit::heisenberg {

// Elementary divisor type (d_1, ..., d_g), d_{i+1} | d_i, 8 | d_i.
struct DeltaType {
    std::vector<long> d;
    long m = 0; // root-of-unity order in play: lcm(2 d_i) = 2 d_1

    explicit DeltaType(std::vector<long> divisors);
    size_t g() const { return d.size(); }
    long size() const; // |delta|

    // K(delta) elements are coordinate vectors; a linear index enumerates them
    std::vector<long> element(long idx) const;
    long index(const std::vector<long>& a) const;
    std::vector<long> add(const std::vector<long>& a, const std::vector<long>& b) const;
    std::vector<long> neg(const std::vector<long>& a) const;

    // <a, l> = zeta_m ^ pairing_exp(a, l); l stored as exponent vector
    long pairing_exp(const std::vector<long>& a, const std::vector<long>& l) const;

    NFRef cyclotomic_field() const;
    NFElem root_of_unity(long exp) const;
};

// (t, a, l) with t an exact cyclotomic scalar.
struct HeisEl {
    NFElem t;
    std::vector<long> a;
    std::vector<long> l;
};

HeisEl heis_identity(const DeltaType& delta);
HeisEl heis_mul(const DeltaType& delta, const HeisEl& x, const HeisEl& y);
HeisEl heis_inv(const DeltaType& delta, const HeisEl& x);

// commutator pairing e(s1, s2) = <a1,l2> / <a2,l1> as a zeta_m exponent
long commutator_pairing_exp(const DeltaType& delta, const std::vector<long>& a1,
                            const std::vector<long>& l1, const std::vector<long>& a2,
                            const std::vector<long>& l2);

// Monomial matrix over roots of unity: column c has its nonzero entry
// zeta_m^ex[c] in row tgt[c].
struct MonoMat {
    long m = 0;
    std::vector<long> tgt;
    std::vector<long> ex;

    size_t dim() const { return tgt.size(); }
    static MonoMat identity(long m, size_t n);
    MonoMat mul(const MonoMat& o) const;
    bool operator==(const MonoMat& o) const { return m == o.m && tgt == o.tgt && ex == o.ex; }
    // equal up to a zeta_m scalar; returns the exponent when so
    std::optional<long> scalar_ratio(const MonoMat& o) const;
};

// standard representation on coordinates (a homomorphism for the group law)
MonoMat std_rep_monomial(const DeltaType& delta, const std::vector<long>& a,
                         const std::vector<long>& l, long t_exp);
Mat<NFElem> std_rep(const DeltaType& delta, const HeisEl& x);

// translation action on Mumford coordinates: (T_s Q)_b = <b,l> Q_{a+b}
MonoMat translation_matrix(const DeltaType& delta, const std::vector<long>& a,
                           const std::vector<long>& l);

// --- symplectic automorphisms and lifts ----------------------------------

// automorphism of K(delta) + K(delta)^vee as a 2g x 2g integer matrix acting
// on stacked coordinates (a_1..a_g, l_1..l_g); entries reduced per component
struct SpElement {
    std::vector<long> mat; // row-major 2g x 2g
    long at(size_t i, size_t j, size_t n) const { return mat[i * n + j]; }
};

std::vector<SpElement> symplectic_group_serial(const DeltaType& delta, size_t budget = 1 << 22);
std::vector<SpElement> symplectic_group_omp(const DeltaType& delta, size_t budget = 1 << 22);
inline std::vector<SpElement> symplectic_group(const DeltaType& delta, size_t budget = 1 << 22) {
    return symplectic_group_omp(delta, budget);
}

// closure of supplied generators (for delta beyond exhaustive scale)
std::vector<SpElement> symplectic_closure(const DeltaType& delta,
                                          const std::vector<SpElement>& gens, size_t budget);

bool sp_preserves_pairing(const DeltaType& delta, const SpElement& s);
std::pair<std::vector<long>, std::vector<long>> sp_apply(const DeltaType& delta,
                                                         const SpElement& s,
                                                         const std::vector<long>& a,
                                                         const std::vector<long>& l);

// Automorphism of G(delta) fixing G_m: f(t, s) = (t * zeta^c(s), sigma(s)).
struct HeisAutomorphism {
    SpElement sigma;
    std::vector<long> c; // indexed by index(a) * |delta| + index(l) -- see impl
};

// the d_i choices per generator are indexed by (psi_k, omega_k)
HeisAutomorphism lift_automorphism(const DeltaType& delta, const SpElement& sigma,
                                   const std::vector<long>& psi_choice,
                                   const std::vector<long>& omega_choice);

// all lifts of one sigma (prod d_i^2 of them)
std::vector<HeisAutomorphism> all_lifts(const DeltaType& delta, const SpElement& sigma);

HeisEl apply_automorphism(const DeltaType& delta, const HeisAutomorphism& f, const HeisEl& x);

// verify f is a homomorphism on all pairs (exact exponent arithmetic)
bool automorphism_is_valid(const DeltaType& delta, const HeisAutomorphism& f);

// --- intertwiners ---------------------------------------------------------

// solve f rho(x) = rho(phi(x)) f; entries are roots of unity or zero
struct Intertwiner {
    long m = 0;
    size_t dim = 0;
    // entry (r, c): exponent or -1 for zero
    std::vector<long> exp;
    long at(size_t r, size_t c) const { return exp[r * dim + c]; }
    Mat<NFElem> dense(const DeltaType& delta) const;
};

// solution-space dimension and one solution (normalized so its first
// nonzero entry is 1); "NoSolution" when the space is zero
struct IntertwinerResult {
    size_t solution_dim = 0;
    Intertwiner f;
};
IntertwinerResult intertwiner(const DeltaType& delta, const HeisAutomorphism& phi);

// commutant dimension of the standard representation (phi = id path)
size_t commutant_dimension(const DeltaType& delta);

// exact check f rho(x) = rho(phi(x)) f on all 2g generators
bool verify_intertwiner(const DeltaType& delta, const HeisAutomorphism& phi,
                        const Intertwiner& f);

// the inner automorphism x -> g x g^{-1} for g = (1, a0, l0)
HeisAutomorphism inner_automorphism(const DeltaType& delta, const std::vector<long>& a0,
                                    const std::vector<long>& l0);

// orbit of a projective coordinate vector under the given automorphisms
std::vector<std::vector<std::complex<double>>> marking_orbit(
    const DeltaType& delta, const std::vector<std::complex<double>>& q,
    const std::vector<HeisAutomorphism>& autos, double tol = 1e-9);

} // namespace toolkit::heisenberg
