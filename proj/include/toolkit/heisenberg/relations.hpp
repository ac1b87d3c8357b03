#pragma once

#include "toolkit/heisenberg/heisenberg.hpp"

#include <map>
#include <string>

namespace toolkit::heisenberg {

using Cplx = std::complex<double>;

// quadratic form in the coordinates X_b, b in K(delta): coefficient per
// unordered index pair
struct Quadric {
    std::map<std::pair<long, long>, Cplx> terms;

    void add(long p, long q, Cplx coef);
    Cplx evaluate(const std::vector<Cplx>& x) const;
    double max_abs() const;
    Quadric normalized(double tol = 1e-12) const; // leading coefficient 1
};

// theta-null coordinates of the origin for g = 1, type (d), lattice Z + tau Z
std::vector<Cplx> theta_null_g1(const DeltaType& delta, Cplx tau);

// one quadric per admissible tuple (a, b, c, d, l); near-zero quadrics are
// dropped and the rest deduplicated projectively
std::vector<Quadric> riemann_relations(const DeltaType& delta, const std::vector<Cplx>& qnull,
                                       double tol = 1e-10);

// substitution X_b -> <b, l> X_{a+b}
Quadric substitute_translation(const DeltaType& delta, const Quadric& q,
                               const std::vector<long>& a, const std::vector<long>& l);

// least-squares distance from q to the span of the set (coefficients
// compared on the union of index pairs); both sides normalized
double span_distance(const std::vector<Quadric>& set, const Quadric& q);

// minimal projective mismatch against any member of the set
double set_distance(const std::vector<Quadric>& set, const Quadric& q, double tol = 1e-12);

// --- Mumford-form condition report ---------------------------------------

struct MumfordInput {
    DeltaType delta;
    std::vector<Quadric> equations;
    std::vector<Cplx> origin;
    long claimed_degree = -1;                  // certificate for condition 2
    std::vector<std::vector<Cplx>> inversion;  // dense matrix for condition 5
    // supplied torsion data for condition 4: (s, claimed coordinates of f_s(e))
    std::vector<std::pair<std::pair<std::vector<long>, std::vector<long>>, std::vector<Cplx>>>
        torsion_points;
};

struct ConditionVerdict {
    bool checked = false;
    bool passed = false;
    std::string note;
};

struct MumfordReport {
    ConditionVerdict hyperplane;    // (1)
    ConditionVerdict degree;        // (2)
    ConditionVerdict stability;     // (3)
    ConditionVerdict translation;   // (4)
    ConditionVerdict inversion;     // (5)
};

MumfordReport mumford_form_check(const MumfordInput& input, double tol = 1e-8);

} // namespace toolkit::heisenberg
