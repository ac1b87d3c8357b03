#include "toolkit/heisenberg/heisenberg.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace toolkit::heisenberg {

namespace {

long component_order(const DeltaType& delta, size_t i) {
    size_t g = delta.g();
    return i < g ? delta.d[i] : delta.d[i - g];
}

// s' = M s on stacked (a, l) coordinates
std::vector<long> sp_apply_vec(const DeltaType& delta, const SpElement& s,
                               const std::vector<long>& v) {
    size_t n = 2 * delta.g();
    std::vector<long> out(n, 0);
    for (size_t i = 0; i < n; ++i) {
        long acc = 0;
        for (size_t j = 0; j < n; ++j) acc += s.at(i, j, n) * v[j];
        long mod = component_order(delta, i);
        out[i] = ((acc % mod) + mod) % mod;
    }
    return out;
}

long det_mod(const SpElement& s, size_t n, long mod) {
    // fraction-free Bareiss would be overkill; use rational determinant
    QMat m(n, n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) m(i, j) = BigRat(s.at(i, j, n));
    BigRat det = determinant(m);
    BigInt num = det.get_num(); // determinant of an integer matrix
    return imod(num, BigInt(mod)).get_si();
}

} // namespace

std::pair<std::vector<long>, std::vector<long>> sp_apply(const DeltaType& delta,
                                                         const SpElement& s,
                                                         const std::vector<long>& a,
                                                         const std::vector<long>& l) {
    size_t g = delta.g();
    std::vector<long> v(2 * g);
    for (size_t i = 0; i < g; ++i) v[i] = a[i];
    for (size_t i = 0; i < g; ++i) v[g + i] = l[i];
    auto w = sp_apply_vec(delta, s, v);
    std::vector<long> oa(w.begin(), w.begin() + (long)g), ol(w.begin() + (long)g, w.end());
    return {oa, ol};
}

bool sp_preserves_pairing(const DeltaType& delta, const SpElement& s) {
    size_t g = delta.g(), n = 2 * g;
    // e on basis vectors; bilinearity reduces the check to basis pairs
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = i + 1; j < n; ++j) {
            std::vector<long> ui(n, 0), uj(n, 0);
            ui[i] = 1;
            uj[j] = 1;
            auto wi = sp_apply_vec(delta, s, ui);
            auto wj = sp_apply_vec(delta, s, uj);
            std::vector<long> ai(ui.begin(), ui.begin() + (long)g), li(ui.begin() + (long)g, ui.end());
            std::vector<long> aj(uj.begin(), uj.begin() + (long)g), lj(uj.begin() + (long)g, uj.end());
            std::vector<long> wai(wi.begin(), wi.begin() + (long)g), wli(wi.begin() + (long)g, wi.end());
            std::vector<long> waj(wj.begin(), wj.begin() + (long)g), wlj(wj.begin() + (long)g, wj.end());
            long before = commutator_pairing_exp(delta, ai, li, aj, lj);
            long after = commutator_pairing_exp(delta, wai, wli, waj, wlj);
            if (before != after) return false;
        }
    }
    return true;
}

namespace {

bool sp_is_automorphism(const DeltaType& delta, const SpElement& s) {
    size_t n = 2 * delta.g();
    bool uniform = true;
    for (long di : delta.d) uniform = uniform && (di == delta.d[0]);
    if (!uniform)
        throw domain_error("TooLarge", "non-uniform delta automorphism checks unsupported");
    long dm = det_mod(s, n, delta.d[0]);
    long gg = std::__gcd(((dm % delta.d[0]) + delta.d[0]) % delta.d[0], delta.d[0]);
    return gg == 1;
}

std::vector<SpElement> sp_enumerate_range(const DeltaType& delta, uint64_t lo, uint64_t hi) {
    size_t n = 2 * delta.g();
    long d = delta.d[0];
    std::vector<SpElement> found;
    for (uint64_t code = lo; code < hi; ++code) {
        SpElement s;
        s.mat.resize(n * n);
        uint64_t c = code;
        for (size_t t = 0; t < n * n; ++t) {
            s.mat[t] = (long)(c % (uint64_t)d);
            c /= (uint64_t)d;
        }
        if (!sp_is_automorphism(delta, s)) continue;
        if (!sp_preserves_pairing(delta, s)) continue;
        found.push_back(std::move(s));
    }
    return found;
}

} // namespace

std::vector<SpElement> symplectic_group_serial(const DeltaType& delta, size_t budget) {
    size_t n = 2 * delta.g();
    for (long di : delta.d)
        if (di != delta.d[0])
            throw domain_error("TooLarge", "exhaustive enumeration needs uniform delta");
    long d = delta.d[0];
    double total = std::pow((double)d, (double)(n * n));
    if (total > (double)budget)
        throw domain_error("TooLarge", "symplectic enumeration exceeds the configured budget");
    uint64_t count = 1;
    for (size_t t = 0; t < n * n; ++t) count *= (uint64_t)d;
    return sp_enumerate_range(delta, 0, count);
}

std::vector<SpElement> symplectic_group_omp(const DeltaType& delta, size_t budget) {
    size_t n = 2 * delta.g();
    for (long di : delta.d)
        if (di != delta.d[0])
            throw domain_error("TooLarge", "exhaustive enumeration needs uniform delta");
    long d = delta.d[0];
    double total = std::pow((double)d, (double)(n * n));
    if (total > (double)budget)
        throw domain_error("TooLarge", "symplectic enumeration exceeds the configured budget");
    uint64_t count = 1;
    for (size_t t = 0; t < n * n; ++t) count *= (uint64_t)d;
    const uint64_t chunk = 1 << 12;
    uint64_t nchunks = (count + chunk - 1) / chunk;
    std::vector<std::vector<SpElement>> buckets((size_t)nchunks);
#pragma omp parallel for schedule(dynamic)
    for (long long k = 0; k < (long long)nchunks; ++k) {
        uint64_t lo = (uint64_t)k * chunk;
        uint64_t hi = std::min(count, lo + chunk);
        buckets[(size_t)k] = sp_enumerate_range(delta, lo, hi);
    }
    std::vector<SpElement> out;
    for (auto& b : buckets)
        for (auto& s : b) out.push_back(std::move(s));
    return out;
}

std::vector<SpElement> symplectic_closure(const DeltaType& delta,
                                          const std::vector<SpElement>& gens, size_t budget) {
    size_t n = 2 * delta.g();
    long d = delta.d[0];
    for (const auto& s : gens) {
        if (!sp_preserves_pairing(delta, s))
            throw domain_error("BadInput", "generator does not preserve the pairing");
    }
    std::set<std::vector<long>> seen;
    std::vector<SpElement> queue;
    SpElement id;
    id.mat.assign(n * n, 0);
    for (size_t i = 0; i < n; ++i) id.mat[i * n + i] = 1;
    queue.push_back(id);
    seen.insert(id.mat);
    for (size_t head = 0; head < queue.size(); ++head) {
        if (queue.size() > budget)
            throw domain_error("TooLarge", "symplectic closure exceeds the configured budget");
        SpElement cur = queue[head];
        for (const auto& gmat : gens) {
            SpElement prod;
            prod.mat.assign(n * n, 0);
            for (size_t i = 0; i < n; ++i)
                for (size_t j = 0; j < n; ++j) {
                    long acc = 0;
                    for (size_t k = 0; k < n; ++k) acc += gmat.at(i, k, n) * cur.at(k, j, n);
                    long mod = component_order(delta, i);
                    prod.mat[i * n + j] = ((acc % mod) + mod) % mod;
                }
            if (seen.insert(prod.mat).second) queue.push_back(std::move(prod));
        }
    }
    return queue;
}

// --- lifts -----------------------------------------------------------------

namespace {

// solve d*x = e (mod m); solutions x0 + k*(m/g), k in [0, g)
bool solve_root_exponent(long d, long e, long m, long& x0, long& step, long& count) {
    long g = std::__gcd(d, m);
    if (((e % g) + g) % g != 0) return false;
    long dp = d / g, mp = m / g, ep = e / g;
    // inverse of dp mod mp
    long inv = -1;
    for (long t = 0; t < mp; ++t)
        if (((t * dp) % mp + mp) % mp == 1 % mp) {
            inv = t;
            break;
        }
    if (inv < 0 && mp == 1) inv = 0;
    if (inv < 0) return false;
    x0 = ((ep % m) * inv % m + m) % m;
    step = mp;
    count = g;
    return true;
}

long combined_index(const DeltaType& delta, const std::vector<long>& a,
                    const std::vector<long>& l) {
    return delta.index(a) * delta.size() + delta.index(l);
}

} // namespace

HeisAutomorphism lift_automorphism(const DeltaType& delta, const SpElement& sigma,
                                   const std::vector<long>& psi_choice,
                                   const std::vector<long>& omega_choice) {
    size_t g = delta.g(), n = 2 * g;
    if (!sp_preserves_pairing(delta, sigma))
        throw domain_error("BadInput", "sigma does not preserve the pairing");
    if (psi_choice.size() != g || omega_choice.size() != g)
        throw domain_error("BadInput", "need one psi and omega choice per divisor");
    long m = delta.m;

    // generator scalar exponents
    std::vector<long> gen_exp(n, 0);
    for (size_t which = 0; which < n; ++which) {
        size_t i = which % g;
        std::vector<long> u(n, 0);
        u[which] = 1;
        auto img = sp_apply_vec(delta, sigma, u);
        std::vector<long> ba(img.begin(), img.begin() + (long)g), ml(img.begin() + (long)g, img.end());
        long pe = delta.pairing_exp(ba, ml);
        long di = delta.d[i];
        // psi^{d_i} = <b, m>^{d_i (d_i - 1)/2}
        long target = (long)(((__int128)pe * di % m) * ((di - 1) / 2 > 0 ? 1 : 1));
        {
            __int128 t = (__int128)pe * di * (di - 1) / 2;
            target = (long)(((t % m) + m) % m);
        }
        long x0, step, count;
        if (!solve_root_exponent(di, target, m, x0, step, count))
            throw domain_error("BadRootChoice", "root-of-unity equation is unsolvable");
        long k = (which < g) ? psi_choice[i] : omega_choice[i];
        if (k < 0 || k >= count)
            throw domain_error("BadRootChoice", "choice index out of range for this divisor");
        gen_exp[which] = (x0 + k * step) % m;
    }

    // build the scalar table c over K + K^vee by extending one generator
    // step at a time
    long N = delta.size();
    HeisAutomorphism f;
    f.sigma = sigma;
    f.c.assign((size_t)(N * N), -1);
    std::vector<long> zero(n, 0);
    f.c[0] = 0;
    // mixed-radix enumeration: each s != 0 has a predecessor obtained by
    // decrementing its lowest nonzero stacked coordinate
    std::vector<long> radix(n);
    for (size_t i = 0; i < n; ++i) radix[i] = component_order(delta, i);
    std::vector<long> s(n, 0);
    auto idx_of = [&](const std::vector<long>& v) {
        std::vector<long> a(v.begin(), v.begin() + (long)g), l(v.begin() + (long)g, v.end());
        return combined_index(delta, a, l);
    };
    for (;;) {
        // advance odometer
        size_t carry = 0;
        while (carry < n) {
            if (++s[carry] < radix[carry]) break;
            s[carry] = 0;
            ++carry;
        }
        if (carry == n) break;
        // predecessor: lowest nonzero coordinate decremented
        size_t low = 0;
        while (s[low] == 0) ++low;
        std::vector<long> prev = s;
        prev[low] -= 1;
        std::vector<long> e(n, 0);
        e[low] = 1;
        // c(s) = c(prev) + c(e) + <(sigma e)_a, (sigma prev)_l> - <e_a, prev_l>
        auto se = sp_apply_vec(delta, sigma, e);
        auto sp = sp_apply_vec(delta, sigma, prev);
        std::vector<long> se_a(se.begin(), se.begin() + (long)g), se_l(se.begin() + (long)g, se.end());
        std::vector<long> sp_a(sp.begin(), sp.begin() + (long)g), sp_l(sp.begin() + (long)g, sp.end());
        std::vector<long> e_a(e.begin(), e.begin() + (long)g);
        std::vector<long> prev_l(prev.begin() + (long)g, prev.end());
        long cprev = f.c[(size_t)idx_of(prev)];
        long corr = delta.pairing_exp(se_a, sp_l) - delta.pairing_exp(e_a, prev_l);
        long cs = ((cprev + gen_exp[low] + corr) % m + m) % m;
        f.c[(size_t)idx_of(s)] = cs;
    }
    return f;
}

std::vector<HeisAutomorphism> all_lifts(const DeltaType& delta, const SpElement& sigma) {
    size_t g = delta.g();
    std::vector<HeisAutomorphism> out;
    std::vector<long> psi(g, 0), omega(g, 0);
    for (;;) {
        out.push_back(lift_automorphism(delta, sigma, psi, omega));
        // advance the (psi, omega) odometer, each coordinate modulo d_i
        size_t t = 0;
        bool done = false;
        for (;;) {
            if (t < g) {
                if (++psi[t] < delta.d[t]) break;
                psi[t] = 0;
                ++t;
            } else if (t < 2 * g) {
                if (++omega[t - g] < delta.d[t - g]) break;
                omega[t - g] = 0;
                ++t;
            } else {
                done = true;
                break;
            }
        }
        if (done) break;
    }
    return out;
}

HeisEl apply_automorphism(const DeltaType& delta, const HeisAutomorphism& f, const HeisEl& x) {
    auto [a2, l2] = sp_apply(delta, f.sigma, x.a, x.l);
    long c = f.c[(size_t)(delta.index(x.a) * delta.size() + delta.index(x.l))];
    HeisEl out;
    out.t = x.t * delta.root_of_unity(c);
    out.a = a2;
    out.l = l2;
    return out;
}

bool automorphism_is_valid(const DeltaType& delta, const HeisAutomorphism& f) {
    long N = delta.size();
    long m = delta.m;
    size_t g = delta.g();
    long total = N * N;
    // exhaustive for small groups, generator-times-all otherwise
    bool full = total <= 128 * 128;
    auto check_pair = [&](long i1, long i2) {
        std::vector<long> a1 = delta.element(i1 / N), l1 = delta.element(i1 % N);
        std::vector<long> a2 = delta.element(i2 / N), l2 = delta.element(i2 % N);
        auto [fa1, fl1] = sp_apply(delta, f.sigma, a1, l1);
        auto [fa2, fl2] = sp_apply(delta, f.sigma, a2, l2);
        std::vector<long> sum_a = delta.add(a1, a2), sum_l = delta.add(l1, l2);
        long lhs = (f.c[(size_t)(delta.index(sum_a) * N + delta.index(sum_l))] +
                    delta.pairing_exp(a2, l1)) % m;
        long rhs = (f.c[(size_t)i1] + f.c[(size_t)i2] + delta.pairing_exp(fa2, fl1)) % m;
        return ((lhs - rhs) % m + m) % m == 0;
    };
    if (full) {
        for (long i1 = 0; i1 < total; ++i1)
            for (long i2 = 0; i2 < total; ++i2)
                if (!check_pair(i1, i2)) return false;
        return true;
    }
    // generators against everything
    for (size_t which = 0; which < 2 * g; ++which) {
        std::vector<long> u(2 * g, 0);
        u[which] = 1;
        std::vector<long> ua(u.begin(), u.begin() + (long)g), ul(u.begin() + (long)g, u.end());
        long gi = delta.index(ua) * N + delta.index(ul);
        for (long i2 = 0; i2 < total; ++i2)
            if (!check_pair(gi, i2) || !check_pair(i2, gi)) return false;
    }
    return true;
}

// --- intertwiners ----------------------------------------------------------

namespace {

struct UnionFind {
    std::vector<long> parent, pot; // pot: exponent of var relative to parent
    std::vector<char> dead;        // class forced to zero
    long m;

    UnionFind(size_t n, long mod) : parent(n), pot(n, 0), dead(n, 0), m(mod) {
        for (size_t i = 0; i < n; ++i) parent[i] = (long)i;
    }
    // returns (root, exponent of v relative to root)
    std::pair<long, long> find(long v) {
        if (parent[(size_t)v] == v) return {v, 0};
        auto [r, p] = find(parent[(size_t)v]);
        parent[(size_t)v] = r;
        pot[(size_t)v] = (pot[(size_t)v] + p) % m;
        return {r, pot[(size_t)v]};
    }
    // impose var a = zeta^off * var b
    void relate(long a, long b, long off) {
        auto [ra, pa] = find(a);
        auto [rb, pb] = find(b);
        if (ra == rb) {
            if (((pa - pb - off) % m + m) % m != 0) dead[(size_t)ra] = 1;
            return;
        }
        // attach rb under ra: var_b = zeta^{pb'} root_a
        parent[(size_t)rb] = ra;
        pot[(size_t)rb] = ((pa - off - pb) % m + m) % m;
        if (dead[(size_t)rb]) dead[(size_t)ra] = 1;
    }
};

} // namespace

IntertwinerResult intertwiner(const DeltaType& delta, const HeisAutomorphism& phi) {
    long n = delta.size();
    long m = delta.m;
    size_t g = delta.g();
    UnionFind uf((size_t)(n * n), m);

    for (size_t which = 0; which < 2 * g; ++which) {
        std::vector<long> u(2 * g, 0);
        u[which] = 1;
        std::vector<long> ua(u.begin(), u.begin() + (long)g), ul(u.begin() + (long)g, u.end());
        MonoMat A = std_rep_monomial(delta, ua, ul, 0);
        HeisEl gen{NFElem::from_rational(delta.cyclotomic_field(), 1), ua, ul};
        HeisEl img = apply_automorphism(delta, phi, gen);
        // img.t is a root of unity: recover its exponent from the c table
        long c_exp = phi.c[(size_t)(delta.index(ua) * n + delta.index(ul))];
        MonoMat B = std_rep_monomial(delta, img.a, img.l, c_exp);
        // invert B's permutation
        std::vector<long> binv((size_t)n);
        for (long c = 0; c < n; ++c) binv[(size_t)B.tgt[(size_t)c]] = c;
        // f[r][A.tgt[c]] * zeta^{A.ex[c]} = zeta^{B.ex[k]} * f[k][c], k = binv[r]
        for (long r = 0; r < n; ++r) {
            long k = binv[(size_t)r];
            for (long c = 0; c < n; ++c) {
                long v1 = r * n + A.tgt[(size_t)c];
                long v2 = k * n + c;
                long off = ((B.ex[(size_t)k] - A.ex[(size_t)c]) % m + m) % m;
                uf.relate(v1, v2, off);
            }
        }
    }
    // collect classes
    std::vector<long> roots;
    for (long v = 0; v < n * n; ++v) {
        auto [r, p] = uf.find(v);
        (void)p;
        if (std::find(roots.begin(), roots.end(), r) == roots.end())
            if (!uf.dead[(size_t)r]) roots.push_back(r);
    }
    IntertwinerResult res;
    res.solution_dim = roots.size();
    if (roots.empty()) throw domain_error("NoSolution", "intertwining system has only zero");
    long root = roots[0];
    res.f.m = m;
    res.f.dim = (size_t)n;
    res.f.exp.assign((size_t)(n * n), -1);
    for (long v = 0; v < n * n; ++v) {
        auto [r, p] = uf.find(v);
        if (r == root && !uf.dead[(size_t)r]) res.f.exp[(size_t)v] = p;
    }
    return res;
}

Mat<NFElem> Intertwiner::dense(const DeltaType& delta) const {
    Mat<NFElem> out(dim, dim, NFElem());
    for (size_t r = 0; r < dim; ++r)
        for (size_t c = 0; c < dim; ++c)
            if (at(r, c) >= 0) out(r, c) = delta.root_of_unity(at(r, c));
    return out;
}

size_t commutant_dimension(const DeltaType& delta) {
    SpElement id;
    size_t n = 2 * delta.g();
    id.mat.assign(n * n, 0);
    for (size_t i = 0; i < n; ++i) id.mat[i * n + i] = 1;
    HeisAutomorphism trivial = lift_automorphism(delta, id, std::vector<long>(delta.g(), 0),
                                                 std::vector<long>(delta.g(), 0));
    // the canonical lift of the identity must be the identity automorphism:
    // its generator exponents solve d x = 0 with choice 0, i.e. x = 0
    return intertwiner(delta, trivial).solution_dim;
}

bool verify_intertwiner(const DeltaType& delta, const HeisAutomorphism& phi,
                        const Intertwiner& f) {
    long n = delta.size();
    long m = delta.m;
    size_t g = delta.g();
    for (size_t which = 0; which < 2 * g; ++which) {
        std::vector<long> u(2 * g, 0);
        u[which] = 1;
        std::vector<long> ua(u.begin(), u.begin() + (long)g), ul(u.begin() + (long)g, u.end());
        MonoMat A = std_rep_monomial(delta, ua, ul, 0);
        long c_exp = phi.c[(size_t)(delta.index(ua) * n + delta.index(ul))];
        auto [ia, il] = sp_apply(delta, phi.sigma, ua, ul);
        MonoMat B = std_rep_monomial(delta, ia, il, c_exp);
        std::vector<long> binv((size_t)n);
        for (long c = 0; c < n; ++c) binv[(size_t)B.tgt[(size_t)c]] = c;
        for (long r = 0; r < n; ++r) {
            long k = binv[(size_t)r];
            for (long c = 0; c < n; ++c) {
                long lhs = f.at((size_t)r, (size_t)A.tgt[(size_t)c]);
                long rhs = f.at((size_t)k, (size_t)c);
                if ((lhs < 0) != (rhs < 0)) return false;
                if (lhs < 0) continue;
                long le = (lhs + A.ex[(size_t)c]) % m;
                long re = (rhs + B.ex[(size_t)k]) % m;
                if (((le - re) % m + m) % m != 0) return false;
            }
        }
    }
    return true;
}

HeisAutomorphism inner_automorphism(const DeltaType& delta, const std::vector<long>& a0,
                                    const std::vector<long>& l0) {
    size_t n2 = 2 * delta.g();
    long N = delta.size();
    HeisAutomorphism f;
    f.sigma.mat.assign(n2 * n2, 0);
    for (size_t i = 0; i < n2; ++i) f.sigma.mat[i * n2 + i] = 1;
    f.c.assign((size_t)(N * N), 0);
    for (long ai = 0; ai < N; ++ai)
        for (long li = 0; li < N; ++li) {
            std::vector<long> a = delta.element(ai), l = delta.element(li);
            f.c[(size_t)(ai * N + li)] = commutator_pairing_exp(delta, a, l, a0, l0);
        }
    return f;
}

std::vector<std::vector<std::complex<double>>> marking_orbit(
    const DeltaType& delta, const std::vector<std::complex<double>>& q,
    const std::vector<HeisAutomorphism>& autos, double tol) {
    long n = delta.size();
    if ((long)q.size() != n) throw domain_error("BadInput", "coordinate vector size mismatch");
    auto normalize = [&](std::vector<std::complex<double>> v) {
        size_t best = 0;
        double mx = 0;
        for (size_t i = 0; i < v.size(); ++i)
            if (std::abs(v[i]) > mx + 1e-15) {
                mx = std::abs(v[i]);
                best = i;
            }
        if (mx == 0) throw domain_error("BadInput", "zero coordinate vector");
        std::complex<double> pivot = v[best];
        for (auto& x : v) x /= pivot;
        return v;
    };
    std::vector<std::vector<std::complex<double>>> orbit;
    auto push_unique = [&](std::vector<std::complex<double>> v) {
        for (const auto& w : orbit) {
            double diff = 0;
            for (size_t i = 0; i < w.size(); ++i) diff = std::max(diff, std::abs(w[i] - v[i]));
            if (diff < tol) return;
        }
        orbit.push_back(std::move(v));
    };
    for (const auto& phi : autos) {
        auto res = intertwiner(delta, phi);
        std::vector<std::complex<double>> img((size_t)n, 0.0);
        for (long r = 0; r < n; ++r)
            for (long c = 0; c < n; ++c) {
                long e = res.f.at((size_t)r, (size_t)c);
                if (e < 0) continue;
                double ang = 2.0 * M_PI * (double)e / (double)delta.m;
                img[(size_t)r] += std::complex<double>(std::cos(ang), std::sin(ang)) * q[(size_t)c];
            }
        push_unique(normalize(std::move(img)));
    }
    return orbit;
}

} // namespace toolkit::heisenberg
