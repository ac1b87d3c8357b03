#include "toolkit/search/lattice.hpp"

#include <algorithm>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace toolkit::search {

EuclideanLattice lattice_from_basis(const QMat& basis) {
    if (basis.rows() != basis.cols() || basis.rows() == 0)
        throw domain_error("BadInput", "lattice basis must be square and nonempty");
    QMat gram = basis.transpose() * basis;
    if (determinant(gram) == 0)
        throw domain_error("BadInput", "lattice basis columns are dependent");
    return EuclideanLattice{basis};
}

namespace {

struct FinckePohst {
    size_t n;
    QMat q;                   // decomposition: Q(y) = sum q_ii (y_i + sum_{j>i} u_ij y_j)^2
    std::vector<BigRat> center; // real target in basis coordinates

    FinckePohst(const EuclideanLattice& lat, const std::vector<BigRat>& w) {
        n = lat.dim();
        q = lat.basis.transpose() * lat.basis;
        // solve B c = w for the center
        if (w.empty()) {
            center.assign(n, BigRat(0));
        } else {
            if (!solve(lat.basis, w, center))
                throw domain_error("BadInput", "target not in the lattice's span");
        }
        for (size_t i = 0; i < n; ++i) {
            for (size_t j = i + 1; j < n; ++j) {
                BigRat mu = q(i, j) / q(i, i);
                q(j, i) = mu; // stash multiplier below the diagonal
                for (size_t k = j; k < n; ++k) q(j, k) -= mu * q(i, k);
            }
        }
    }

    // enumerate x with Q(x - center) <= r2, descending the index from n-1
    void run(const BigRat& r2, std::vector<std::vector<BigInt>>& out) const {
        std::vector<BigInt> x(n, 0);
        recurse(n, r2, x, out);
        std::sort(out.begin(), out.end());
    }

    // contiguous integer range of x_{i-1} given the partial assignment
    void level_range(size_t i, const BigRat& budget, const std::vector<BigInt>& x,
                     BigInt& lo, BigInt& hi, bool& empty) const {
        size_t idx = i - 1;
        // offset t = -c_idx + sum_{j>idx} u_{idx,j} (x_j - c_j)
        BigRat t(0);
        for (size_t j = idx + 1; j < n; ++j)
            t += q(j, idx) * (BigRat(x[j]) - center[j]);
        t -= center[idx];
        // need q_ii (x + t)^2 <= budget; scan outward from the center -t
        BigRat qii = q(idx, idx);
        auto fits = [&](const BigInt& v) {
            BigRat s = BigRat(v) + t;
            return qii * s * s <= budget;
        };
        // nearest integer to -t
        BigRat mt = -t;
        BigInt base = mt.get_num() / mt.get_den();
        BigInt start = base;
        if (!fits(start)) {
            if (fits(start + 1)) start = start + 1;
            else if (fits(start - 1)) start = start - 1;
            else { empty = true; return; }
        }
        lo = start;
        while (fits(lo - 1)) lo -= 1;
        hi = start;
        while (fits(hi + 1)) hi += 1;
        empty = false;
    }

    void recurse(size_t i, const BigRat& budget, std::vector<BigInt>& x,
                 std::vector<std::vector<BigInt>>& out) const {
        if (i == 0) {
            out.push_back(x);
            return;
        }
        size_t idx = i - 1;
        BigInt lo, hi;
        bool empty;
        level_range(i, budget, x, lo, hi, empty);
        if (empty) return;
        BigRat t(0);
        for (size_t j = idx + 1; j < n; ++j)
            t += q(j, idx) * (BigRat(x[j]) - center[j]);
        t -= center[idx];
        for (BigInt v = lo; v <= hi; v += 1) {
            BigRat s = BigRat(v) + t;
            BigRat used = q(idx, idx) * s * s;
            x[idx] = v;
            recurse(idx, budget - used, x, out);
        }
        x[idx] = 0;
    }
};

std::vector<BigRat> ambient(const EuclideanLattice& lat, const std::vector<BigInt>& coords) {
    std::vector<BigRat> v(lat.dim(), BigRat(0));
    for (size_t i = 0; i < lat.dim(); ++i)
        for (size_t j = 0; j < lat.dim(); ++j) v[i] += lat.basis(i, j) * BigRat(coords[j]);
    return v;
}

BigRat dist2(const std::vector<BigRat>& a, const std::vector<BigRat>& b) {
    BigRat s(0);
    for (size_t i = 0; i < a.size(); ++i) {
        BigRat d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

// precondition of Lemma lat_ball: B_r(0) meets the lattice in n independent vectors
void require_independent_in_ball(const EuclideanLattice& lat, const BigRat& r) {
    BigRat r2 = r * r;
    auto pts = vectors_in_ball_serial(lat, {}, r2);
    QMat m(pts.size(), lat.dim());
    for (size_t i = 0; i < pts.size(); ++i)
        for (size_t j = 0; j < lat.dim(); ++j) m(i, j) = BigRat(pts[i][j]);
    if (rank(m) < lat.dim())
        throw domain_error("InsufficientRadius",
                           "B_r(0) does not contain dim-many independent lattice vectors");
}

} // namespace

std::vector<std::vector<BigInt>> vectors_in_ball_serial(const EuclideanLattice& lat,
                                                        const std::vector<BigRat>& w,
                                                        const BigRat& r2) {
    FinckePohst fp(lat, w);
    std::vector<std::vector<BigInt>> out;
    fp.run(r2, out);
    return out;
}

std::vector<std::vector<BigInt>> vectors_in_ball_omp(const EuclideanLattice& lat,
                                                     const std::vector<BigRat>& w,
                                                     const BigRat& r2) {
    FinckePohst fp(lat, w);
    size_t n = lat.dim();
    if (n == 1) return vectors_in_ball_serial(lat, w, r2);
    // split on the outermost coordinate, recurse serially below it
    std::vector<BigInt> x(n, 0);
    BigInt lo, hi;
    bool empty;
    fp.level_range(n, r2, x, lo, hi, empty);
    if (empty) return {};
    long width = (long)BigInt(hi - lo).get_si() + 1;
    std::vector<std::vector<std::vector<BigInt>>> buckets((size_t)width);
#pragma omp parallel for schedule(dynamic)
    for (long k = 0; k < width; ++k) {
        std::vector<BigInt> xs(n, 0);
        BigInt v = lo + k;
        BigRat s = BigRat(v) - fp.center[n - 1];
        BigRat used = fp.q(n - 1, n - 1) * s * s;
        if (used > r2) continue;
        xs[n - 1] = v;
        std::vector<std::vector<BigInt>> local;
        fp.recurse(n - 1, r2 - used, xs, local);
        buckets[(size_t)k] = std::move(local);
    }
    std::vector<std::vector<BigInt>> out;
    for (auto& b : buckets)
        for (auto& v : b) out.push_back(std::move(v));
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<BigRat> covering_point(const EuclideanLattice& lat, const std::vector<BigRat>& w,
                                   const BigRat& r) {
    size_t n = lat.dim();
    if (w.size() != n) throw domain_error("BadInput", "target dimension mismatch");
    require_independent_in_ball(lat, r);
    // |lambda - w|^2 <= r^2 n / 4 per the lemma's scaled bound
    BigRat r2 = r * r * BigRat((long)n) / 4;
    auto pts = vectors_in_ball_serial(lat, w, r2);
    if (pts.empty())
        throw domain_error("Internal", "covering bound produced no lattice point");
    // closest point; ties by lexicographic coordinate order (already sorted)
    size_t best = 0;
    BigRat bestd = dist2(ambient(lat, pts[0]), w);
    for (size_t i = 1; i < pts.size(); ++i) {
        BigRat d = dist2(ambient(lat, pts[i]), w);
        if (d < bestd) {
            bestd = d;
            best = i;
        }
    }
    return ambient(lat, pts[best]);
}

GeneratorSet generators_in_ball(const EuclideanLattice& lat, const BigRat& r) {
    size_t n = lat.dim();
    require_independent_in_ball(lat, r);
    BigRat bn2 = std::max(BigRat(1), BigRat((long)n, 4)); // b_n^2 = max(1, n/4)
    BigRat bound = bn2 * r * r;
    auto pts = vectors_in_ball_omp(lat, {}, bound);
    GeneratorSet out;
    for (auto& p : pts) {
        bool zero = true;
        for (auto& c : p)
            if (c != 0) zero = false;
        if (zero) continue;
        out.vectors.push_back(ambient(lat, p));
        out.coordinates.push_back(p);
    }
    if (!generates_full_lattice(out.coordinates, n))
        throw domain_error("Internal", "generator ball does not generate (lemma violation)");
    return out;
}

bool generates_full_lattice(const std::vector<std::vector<BigInt>>& coords, size_t n) {
    if (coords.size() < n) return false;
    ZMat m(coords.size(), n);
    for (size_t i = 0; i < coords.size(); ++i)
        for (size_t j = 0; j < n; ++j) m(i, j) = coords[i][j];
    auto div = smith_normal_form(m);
    if (div.size() < n) return false;
    for (size_t i = 0; i < n; ++i)
        if (div[i] != 1) return false;
    return true;
}

} // namespace toolkit::search
