#pragma once

#include "toolkit/padic/algebra.hpp"

#include <map>
#include <optional>

namespace toolkit::numfield {

using padic::StructuredAlgebra;

// --- scalars for Hermitian classification --------------------------------

struct GaussRat {
    BigRat re, im;
    GaussRat() = default;
    GaussRat(BigRat r, BigRat i) : re(std::move(r)), im(std::move(i)) {}
    GaussRat conj() const { return {re, -im}; }
    bool is_zero() const { return re == 0 && im == 0; }
    GaussRat operator+(const GaussRat& o) const { return {re + o.re, im + o.im}; }
    GaussRat operator-(const GaussRat& o) const { return {re - o.re, im - o.im}; }
    GaussRat operator*(const GaussRat& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    GaussRat inv() const;
    bool operator==(const GaussRat& o) const { return re == o.re && im == o.im; }
};

struct QuatRat {
    BigRat w, x, y, z; // Hamilton basis 1, i, j, k (i^2 = j^2 = -1)
    QuatRat() = default;
    QuatRat(BigRat w_, BigRat x_, BigRat y_, BigRat z_)
        : w(std::move(w_)), x(std::move(x_)), y(std::move(y_)), z(std::move(z_)) {}
    QuatRat conj() const { return {w, -x, -y, -z}; }
    BigRat norm() const { return w * w + x * x + y * y + z * z; }
    bool is_zero() const { return w == 0 && x == 0 && y == 0 && z == 0; }
    QuatRat operator+(const QuatRat& o) const { return {w + o.w, x + o.x, y + o.y, z + o.z}; }
    QuatRat operator-(const QuatRat& o) const { return {w - o.w, x - o.x, y - o.y, z - o.z}; }
    QuatRat operator*(const QuatRat& o) const;
    QuatRat inv() const;
    bool operator==(const QuatRat& o) const {
        return w == o.w && x == o.x && y == o.y && z == o.z;
    }
};

enum class FormKind { RealSymmetric, ComplexHermitian, QuaternionHermitian };

struct OrbitSignature {
    FormKind kind;
    long d0 = 0, dplus = 0, dminus = 0;
};

OrbitSignature signature_classify(const QMat& form);
OrbitSignature signature_classify(const Mat<GaussRat>& form);
OrbitSignature signature_classify(const Mat<QuatRat>& form);

// Quaternion-Hermitian forms arrive stored over the 4-dim regular
// representation (4n x 4n rational blocks); decode before classifying.
Mat<QuatRat> quat_from_regular(const QMat& m);
QMat quat_to_regular(const Mat<QuatRat>& m);

// --- global decomposition -------------------------------------------------

// Exact elementary central idempotents (one per field factor of Z(E)).
std::vector<std::vector<BigRat>> center_idempotents(const StructuredAlgebra& alg);

// Trace-form signature test for a central simple algebra over Q sitting in
// R: true iff matrix algebra (signature (2n^2+n, 2n^2-n)).
bool real_splitting(const StructuredAlgebra& alg);

struct PlaceCandidates {
    std::vector<BigInt> finite; // primes dividing the trace-form discriminant
    bool archimedean = true;
};
PlaceCandidates ramified_place_candidates(const StructuredAlgebra& alg,
                                          const std::optional<QMat>& order_basis = std::nullopt);

// place -> invariant; "oo" is the archimedean place, otherwise the prime.
using InvariantTable = std::map<std::string, std::pair<long, long>>;

// Nonzero local invariants of a central simple algebra over Q.
InvariantTable all_invariants(const StructuredAlgebra& alg);

struct GlobalDecomposition {
    long s = 0;
    std::vector<std::vector<BigRat>> idempotents;
    std::vector<long> matrix_sizes;   // n_i
    std::vector<long> division_dims;  // d_i
    std::vector<long> center_degrees; // [Z_i : Q]
    std::vector<InvariantTable> invariants;
};
GlobalDecomposition decompose(const StructuredAlgebra& alg);

bool kth_power_divisibility(const GlobalDecomposition& dec, long k);

} // namespace toolkit::numfield
