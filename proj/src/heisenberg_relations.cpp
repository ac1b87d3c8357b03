#include "toolkit/heisenberg/relations.hpp"

#include <algorithm>
#include <cmath>

namespace toolkit::heisenberg {

void Quadric::add(long p, long q, Cplx coef) {
    if (p > q) std::swap(p, q);
    auto [it, fresh] = terms.insert({{p, q}, coef});
    if (!fresh) it->second += coef;
}

Cplx Quadric::evaluate(const std::vector<Cplx>& x) const {
    Cplx v = 0;
    for (const auto& [pq, coef] : terms) v += coef * x[(size_t)pq.first] * x[(size_t)pq.second];
    return v;
}

double Quadric::max_abs() const {
    double m = 0;
    for (const auto& [pq, coef] : terms) m = std::max(m, std::abs(coef));
    return m;
}

Quadric Quadric::normalized(double tol) const {
    // scale so the coefficient at the lexicographically first significant
    // pair equals 1; drop entries below tol afterwards
    double mx = max_abs();
    Quadric out;
    if (mx == 0) return out;
    Cplx lead = 0;
    for (const auto& [pq, coef] : terms)
        if (std::abs(coef) > tol * mx) {
            lead = coef;
            break;
        }
    for (const auto& [pq, coef] : terms) {
        Cplx c = coef / lead;
        if (std::abs(c) > tol) out.terms[pq] = c;
    }
    return out;
}

std::vector<Cplx> theta_null_g1(const DeltaType& delta, Cplx tau) {
    if (delta.g() != 1)
        throw domain_error("BadInput", "theta-null fixture generator is genus-1 only");
    long d = delta.d[0];
    std::vector<Cplx> q((size_t)d);
    const Cplx I(0, 1);
    for (long a = 0; a < d; ++a) {
        Cplx sum = 0;
        for (long k = -40; k <= 40; ++k) {
            double frac = (double)a / (double)d;
            Cplx expo = M_PI * I * tau * (double)d * ((double)k + frac) * ((double)k + frac);
            sum += std::exp(expo);
        }
        q[(size_t)a] = sum;
    }
    return q;
}

namespace {

// Z_2 = 2 K(delta) with a sign character eps in {0,1}^g: l(2y) = prod (-1)^{eps_i y_i}
struct Z2Set {
    std::vector<std::vector<long>> eta; // elements of Z_2 in K(delta) coords
    std::vector<std::vector<long>> half; // a y with 2y = eta (well-defined signs since 4 | d/2)
};

Z2Set z2_elements(const DeltaType& delta) {
    Z2Set out;
    size_t g = delta.g();
    std::vector<long> y(g, 0);
    for (;;) {
        std::vector<long> e(g);
        for (size_t i = 0; i < g; ++i) e[i] = (2 * y[i]) % delta.d[i];
        // dedup: y and y + d/2 give the same eta; keep y_i < d_i/2
        bool keep = true;
        for (size_t i = 0; i < g; ++i)
            if (y[i] >= delta.d[i] / 2) keep = false;
        if (keep) {
            out.eta.push_back(e);
            out.half.push_back(y);
        }
        size_t carry = 0;
        while (carry < g) {
            if (++y[carry] < delta.d[carry]) break;
            y[carry] = 0;
            ++carry;
        }
        if (carry == g) break;
    }
    return out;
}

int character_value(const std::vector<long>& eps, const std::vector<long>& y) {
    long s = 0;
    for (size_t i = 0; i < eps.size(); ++i) s += eps[i] * y[i];
    return (s % 2 == 0) ? 1 : -1;
}

// componentwise half of an even element of K(2 delta), landing in K(delta)
std::vector<long> half_of(const DeltaType& delta, const std::vector<long>& even2d) {
    std::vector<long> r(delta.g());
    for (size_t i = 0; i < delta.g(); ++i) {
        long td = 2 * delta.d[i];
        long v = ((even2d[i] % td) + td) % td;
        if (v % 2 != 0) throw domain_error("Internal", "element not in the even part of K(2d)");
        r[i] = (v / 2) % delta.d[i];
    }
    return r;
}

} // namespace

std::vector<Quadric> riemann_relations(const DeltaType& delta, const std::vector<Cplx>& qnull,
                                       double tol) {
    size_t g = delta.g();
    long N = delta.size();
    if ((long)qnull.size() != N) throw domain_error("BadInput", "theta-null size mismatch");
    Z2Set z2 = z2_elements(delta);

    double qscale = 0;
    for (const Cplx& c : qnull) qscale = std::max(qscale, std::abs(c));
    if (qscale == 0) throw domain_error("BadInput", "theta null vector is zero");

    // sum over eta of l(eta) w[wa+eta] w[wb+eta] for coordinate vector w
    auto theta_pair = [&](const std::vector<long>& wa, const std::vector<long>& wb,
                          const std::vector<long>& eps) {
        Cplx s = 0;
        for (size_t t = 0; t < z2.eta.size(); ++t) {
            int sign = character_value(eps, z2.half[t]);
            long ia = delta.index(delta.add(wa, z2.eta[t]));
            long ib = delta.index(delta.add(wb, z2.eta[t]));
            s += (double)sign * qnull[(size_t)ia] * qnull[(size_t)ib];
        }
        return s;
    };

    std::vector<Quadric> out;
    auto push_quadric = [&](Quadric q) {
        if (q.max_abs() < tol * qscale * qscale * qscale * qscale) return;
        Quadric norm = q.normalized();
        for (const Quadric& have : out) {
            // projective comparison on the union of supports
            double diff = 0;
            std::map<std::pair<long, long>, Cplx> all = have.terms;
            for (auto& [pq, c] : norm.terms)
                if (!all.count(pq)) all[pq] = 0;
            for (auto& [pq, hv] : all) {
                Cplx nv = norm.terms.count(pq) ? norm.terms.at(pq) : 0.0;
                Cplx hvv = have.terms.count(pq) ? have.terms.at(pq) : 0.0;
                diff = std::max(diff, std::abs(nv - hvv));
            }
            if (diff < 1e-8) return;
        }
        out.push_back(std::move(norm));
    };

    // enumerate tuples (a, b, c, d) in K(2 delta), congruent mod the image
    // of K(delta): fix a parity class r in {0,1}^g, then each of a,b,c,d runs
    // over r + 2 K(2 delta) = r + even elements; equivalently a = r + 2*alpha
    // with alpha in K(delta)
    std::vector<long> parity(g, 0);
    for (;;) {
        for (long ai = 0; ai < N; ++ai)
            for (long bi = 0; bi < N; ++bi)
                for (long ci = 0; ci < N; ++ci)
                    for (long di = 0; di < N; ++di) {
                        std::vector<long> av = delta.element(ai), bv = delta.element(bi),
                                          cv = delta.element(ci), dv = delta.element(di);
                        // lift to K(2 delta): x = parity + 2*coeff
                        std::vector<long> A(g), B(g), C(g), D(g);
                        for (size_t t = 0; t < g; ++t) {
                            long td = 2 * delta.d[t];
                            A[t] = (parity[t] + 2 * av[t]) % td;
                            B[t] = (parity[t] + 2 * bv[t]) % td;
                            C[t] = (parity[t] + 2 * cv[t]) % td;
                            D[t] = (parity[t] + 2 * dv[t]) % td;
                        }
                        auto sum2 = [&](const std::vector<long>& x, const std::vector<long>& y,
                                        int sgn) {
                            std::vector<long> r(g);
                            for (size_t t = 0; t < g; ++t) {
                                long td = 2 * delta.d[t];
                                r[t] = ((x[t] + sgn * y[t]) % td + td) % td;
                            }
                            return r;
                        };
                        std::vector<long> u = half_of(delta, sum2(A, B, 1));
                        std::vector<long> up = half_of(delta, sum2(A, B, -1));
                        std::vector<long> w = half_of(delta, sum2(C, D, 1));
                        std::vector<long> wp = half_of(delta, sum2(C, D, -1));
                        std::vector<long> v = half_of(delta, sum2(C, B, 1));
                        std::vector<long> vp = half_of(delta, sum2(C, B, -1));
                        std::vector<long> z = half_of(delta, sum2(A, D, 1));
                        std::vector<long> zp = half_of(delta, sum2(A, D, -1));

                        std::vector<long> eps(g, 0);
                        for (;;) {
                            Cplx coefA = theta_pair(w, wp, eps);
                            Cplx coefB = theta_pair(v, vp, eps);
                            Quadric q;
                            for (size_t t = 0; t < z2.eta.size(); ++t) {
                                int sign = character_value(eps, z2.half[t]);
                                long iu = delta.index(delta.add(u, z2.eta[t]));
                                long iup = delta.index(delta.add(up, z2.eta[t]));
                                long iz = delta.index(delta.add(z, z2.eta[t]));
                                long izp = delta.index(delta.add(zp, z2.eta[t]));
                                q.add(iu, iup, coefA * (double)sign);
                                q.add(iz, izp, -coefB * (double)sign);
                            }
                            push_quadric(std::move(q));
                            size_t carry = 0;
                            while (carry < g) {
                                if (++eps[carry] < 2) break;
                                eps[carry] = 0;
                                ++carry;
                            }
                            if (carry == g) break;
                        }
                    }
        size_t carry = 0;
        while (carry < g) {
            if (++parity[carry] < 2) break;
            parity[carry] = 0;
            ++carry;
        }
        if (carry == g) break;
    }
    return out;
}

Quadric substitute_translation(const DeltaType& delta, const Quadric& q,
                               const std::vector<long>& a, const std::vector<long>& l) {
    Quadric out;
    for (const auto& [pq, coef] : q.terms) {
        std::vector<long> p1 = delta.element(pq.first), p2 = delta.element(pq.second);
        long e = delta.pairing_exp(p1, l) + delta.pairing_exp(p2, l);
        double ang = 2.0 * M_PI * (double)(((e % delta.m) + delta.m) % delta.m) / (double)delta.m;
        Cplx rot(std::cos(ang), std::sin(ang));
        long n1 = delta.index(delta.add(a, p1));
        long n2 = delta.index(delta.add(a, p2));
        out.add(n1, n2, coef * rot);
    }
    return out;
}

double span_distance(const std::vector<Quadric>& set, const Quadric& q) {
    // orthonormalize the set on the union support and project q
    std::vector<std::pair<long, long>> support;
    {
        std::map<std::pair<long, long>, size_t> seen;
        for (const auto& qq : set)
            for (const auto& [pq, c] : qq.terms)
                if (!seen.count(pq)) {
                    seen[pq] = support.size();
                    support.push_back(pq);
                }
        for (const auto& [pq, c] : q.terms)
            if (!seen.count(pq)) {
                seen[pq] = support.size();
                support.push_back(pq);
            }
    }
    auto to_vec = [&](const Quadric& qq) {
        std::vector<Cplx> v(support.size(), 0.0);
        for (size_t i = 0; i < support.size(); ++i) {
            auto it = qq.terms.find(support[i]);
            if (it != qq.terms.end()) v[i] = it->second;
        }
        return v;
    };
    std::vector<std::vector<Cplx>> basis;
    auto dot = [](const std::vector<Cplx>& a, const std::vector<Cplx>& b) {
        Cplx s = 0;
        for (size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
        return s;
    };
    for (const auto& qq : set) {
        std::vector<Cplx> v = to_vec(qq);
        for (const auto& b : basis) {
            Cplx c = dot(b, v);
            for (size_t i = 0; i < v.size(); ++i) v[i] -= c * b[i];
        }
        double norm = std::sqrt(std::abs(dot(v, v)));
        if (norm > 1e-12) {
            for (auto& x : v) x /= norm;
            basis.push_back(std::move(v));
        }
    }
    std::vector<Cplx> v = to_vec(q);
    double qnorm = std::sqrt(std::abs(dot(v, v)));
    if (qnorm == 0) return 0;
    for (const auto& b : basis) {
        Cplx c = dot(b, v);
        for (size_t i = 0; i < v.size(); ++i) v[i] -= c * b[i];
    }
    return std::sqrt(std::abs(dot(v, v))) / qnorm;
}

double set_distance(const std::vector<Quadric>& set, const Quadric& q, double tol) {
    Quadric qn = q.normalized(tol);
    double best = 1e300;
    for (const auto& have : set) {
        std::map<std::pair<long, long>, Cplx> all = have.terms;
        for (auto& [pq, c] : qn.terms)
            if (!all.count(pq)) all[pq] = 0;
        double diff = 0;
        for (auto& [pq, hv] : all) {
            Cplx nv = qn.terms.count(pq) ? qn.terms.at(pq) : 0.0;
            Cplx hvv = have.terms.count(pq) ? have.terms.at(pq) : 0.0;
            diff = std::max(diff, std::abs(nv - hvv));
        }
        best = std::min(best, diff);
    }
    return best;
}

MumfordReport mumford_form_check(const MumfordInput& input, double tol) {
    MumfordReport rep;
    const DeltaType& delta = input.delta;
    long N = delta.size();
    if (input.origin.empty())
        throw domain_error("IncompleteInput", "need origin coordinates");
    if ((long)input.origin.size() != N)
        throw domain_error("IncompleteInput", "origin has wrong coordinate count");

    // (1) hyperplane non-containment: no linear form h with h * X_b inside
    // the span of the supplied quadrics for every b
    {
        rep.hyperplane.checked = true;
        // unknown h: for each b, h X_b must project into the span; build the
        // residual operator columns and test for a common kernel vector
        std::vector<std::pair<long, long>> support;
        std::map<std::pair<long, long>, size_t> seen;
        auto key = [&](long p, long q2) {
            if (p > q2) std::swap(p, q2);
            return std::make_pair(p, q2);
        };
        for (const auto& qq : input.equations)
            for (const auto& [pq, c] : qq.terms)
                if (!seen.count(pq)) {
                    seen[pq] = support.size();
                    support.push_back(pq);
                }
        for (long y = 0; y < N; ++y)
            for (long b = 0; b < N; ++b) {
                auto k = key(y, b);
                if (!seen.count(k)) {
                    seen[k] = support.size();
                    support.push_back(k);
                }
            }
        size_t dimS = support.size();
        // orthonormal basis of the quadric span
        std::vector<std::vector<Cplx>> basis;
        auto dot = [](const std::vector<Cplx>& a, const std::vector<Cplx>& b) {
            Cplx s = 0;
            for (size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
            return s;
        };
        for (const auto& qq : input.equations) {
            std::vector<Cplx> v(dimS, 0.0);
            for (const auto& [pq, c] : qq.terms) v[seen[pq]] = c;
            for (const auto& bb : basis) {
                Cplx c = dot(bb, v);
                for (size_t i = 0; i < v.size(); ++i) v[i] -= c * bb[i];
            }
            double norm = std::sqrt(std::abs(dot(v, v)));
            if (norm > 1e-12) {
                for (auto& x : v) x /= norm;
                basis.push_back(std::move(v));
            }
        }
        // residual map R: C^N -> C^{N * dimS}: h -> (P_perp(h X_b))_b;
        // assemble its Gram matrix G = R^dag R and test the smallest
        // eigenvalue by inverse power iteration
        std::vector<std::vector<Cplx>> cols((size_t)N, std::vector<Cplx>(dimS * (size_t)N, 0.0));
        for (long y = 0; y < N; ++y) {
            for (long b = 0; b < N; ++b) {
                std::vector<Cplx> v(dimS, 0.0);
                auto k = key(y, b);
                v[seen[k]] += 1.0;
                for (const auto& bb : basis) {
                    Cplx c = dot(bb, v);
                    for (size_t i = 0; i < v.size(); ++i) v[i] -= c * bb[i];
                }
                for (size_t i = 0; i < dimS; ++i) cols[(size_t)y][(size_t)b * dimS + i] = v[i];
            }
        }
        // Gram
        std::vector<std::vector<Cplx>> gram((size_t)N, std::vector<Cplx>((size_t)N, 0.0));
        for (long i = 0; i < N; ++i)
            for (long j = 0; j < N; ++j) {
                Cplx s = 0;
                for (size_t t = 0; t < cols[(size_t)i].size(); ++t)
                    s += std::conj(cols[(size_t)i][t]) * cols[(size_t)j][t];
                gram[(size_t)i][(size_t)j] = s;
            }
        // smallest eigenvalue estimate: det-based rank test via pivoted
        // elimination; h exists iff gram is singular
        double minpivot = 1e300, maxpivot = 0;
        {
            auto a = gram;
            size_t n = a.size();
            for (size_t col = 0; col < n; ++col) {
                size_t piv = col;
                double mx = 0;
                for (size_t r = col; r < n; ++r)
                    if (std::abs(a[r][col]) > mx) {
                        mx = std::abs(a[r][col]);
                        piv = r;
                    }
                if (mx < 1e-300) {
                    minpivot = 0;
                    break;
                }
                std::swap(a[col], a[piv]);
                minpivot = std::min(minpivot, mx);
                maxpivot = std::max(maxpivot, mx);
                for (size_t r = col + 1; r < n; ++r) {
                    Cplx f = a[r][col] / a[col][col];
                    for (size_t cc = col; cc < n; ++cc) a[r][cc] -= f * a[col][cc];
                }
            }
        }
        bool contained = (maxpivot == 0) || (minpivot / std::max(maxpivot, 1.0) < tol * tol);
        rep.hyperplane.passed = !contained;
        rep.hyperplane.note = contained ? "a hyperplane annihilates the ideal's degree-2 part"
                                        : "no containing hyperplane";
    }

    // (2) degree certificate
    rep.degree.checked = input.claimed_degree >= 0;
    if (rep.degree.checked) {
        rep.degree.passed = input.claimed_degree == N;
        rep.degree.note = "certificate comparison against |delta|";
    } else {
        rep.degree.note = "no degree certificate supplied";
    }

    // (3) stability of the span under all f_s
    {
        rep.stability.checked = true;
        rep.stability.passed = true;
        double worst = 0;
        for (long ai = 0; ai < N && rep.stability.passed; ++ai)
            for (long li = 0; li < N; ++li) {
                std::vector<long> a = delta.element(ai), l = delta.element(li);
                for (const auto& q : input.equations) {
                    Quadric sub = substitute_translation(delta, q, a, l);
                    double dist = span_distance(input.equations, sub);
                    worst = std::max(worst, dist);
                    if (dist > tol) {
                        rep.stability.passed = false;
                        break;
                    }
                }
                if (!rep.stability.passed) break;
            }
        rep.stability.note = "worst span residual " + std::to_string(worst);
    }

    // (4) translation coincidence on supplied torsion points
    if (!input.torsion_points.empty()) {
        rep.translation.checked = true;
        rep.translation.passed = true;
        for (const auto& [s, claimed] : input.torsion_points) {
            MonoMat t = translation_matrix(delta, s.first, s.second);
            std::vector<Cplx> img((size_t)N, 0.0);
            for (long c = 0; c < N; ++c) {
                double ang = 2.0 * M_PI * (double)t.ex[(size_t)c] / (double)delta.m;
                img[(size_t)t.tgt[(size_t)c]] +=
                    Cplx(std::cos(ang), std::sin(ang)) * input.origin[(size_t)c];
            }
            // projective comparison with the claimed point
            size_t piv = 0;
            double mx = 0;
            for (size_t i = 0; i < img.size(); ++i)
                if (std::abs(img[i]) > mx) {
                    mx = std::abs(img[i]);
                    piv = i;
                }
            if (mx == 0 || std::abs(claimed[piv]) == 0) {
                rep.translation.passed = false;
                continue;
            }
            Cplx ratio = claimed[piv] / img[piv];
            for (size_t i = 0; i < img.size(); ++i)
                if (std::abs(claimed[i] - ratio * img[i]) > tol * std::abs(ratio) * mx)
                    rep.translation.passed = false;
        }
        rep.translation.note = "checked on supplied torsion points only";
    } else {
        rep.translation.note = "no torsion data supplied";
    }

    // (5) inversion extends linearly and preserves the span
    if (!input.inversion.empty()) {
        rep.inversion.checked = true;
        rep.inversion.passed = true;
        // substitute X -> M X into each quadric (dense)
        const auto& M = input.inversion;
        for (const auto& q : input.equations) {
            Quadric sub;
            for (const auto& [pq, coef] : q.terms) {
                for (long i = 0; i < N; ++i) {
                    if (std::abs(M[(size_t)pq.first][(size_t)i]) < 1e-15) continue;
                    for (long j = 0; j < N; ++j) {
                        Cplx c = coef * M[(size_t)pq.first][(size_t)i] * M[(size_t)pq.second][(size_t)j];
                        if (std::abs(c) > 1e-15) sub.add(i, j, c);
                    }
                }
            }
            if (span_distance(input.equations, sub) > tol) rep.inversion.passed = false;
        }
        rep.inversion.note = "substitution residual against the supplied span";
    } else {
        rep.inversion.note = "no inversion matrix supplied";
    }
    return rep;
}

} // namespace toolkit::heisenberg
