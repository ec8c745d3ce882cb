#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "lattice.hpp"
#include "lll.hpp"

namespace eisenlat {

namespace detail {

// Eisenstein arithmetic on int64 coordinate pairs; all short-vector
// bookkeeping fits comfortably in 64 bits.
struct E64 {
    std::int64_t a = 0, b = 0;
    E64() = default;
    E64(std::int64_t a_, std::int64_t b_) : a(a_), b(b_) {}
    bool zero() const { return a == 0 && b == 0; }
    E64 conj() const { return {a - b, -b}; }
    E64 operator+(E64 o) const { return {a + o.a, b + o.b}; }
    E64 operator-(E64 o) const { return {a - o.a, b - o.b}; }
    E64 operator-() const { return {-a, -b}; }
    E64 operator*(E64 o) const {
        std::int64_t bd = b * o.b;
        return {a * o.a - bd, a * o.b + b * o.a - bd};
    }
    std::int64_t norm() const { return a * a - a * b + b * b; }
    bool operator==(E64 o) const { return a == o.a && b == o.b; }
};

inline std::pair<E64, E64> divmod64(E64 x, E64 y) {
    // nearest-point division as in eis_divmod, small-integer version
    E64 t = x * y.conj();
    std::int64_t n = y.norm();
    auto fdiv = [](std::int64_t p, std::int64_t q) {
        std::int64_t r = p / q;
        if (p % q != 0 && ((p < 0) != (q < 0))) --r;
        return r;
    };
    std::int64_t qa0 = fdiv(t.a, n), qb0 = fdiv(t.b, n);
    E64 bq, br;
    std::int64_t bn = -1;
    for (int da = 0; da <= 1; ++da)
        for (int db = 0; db <= 1; ++db) {
            E64 q{qa0 + da, qb0 + db};
            E64 r = x - q * y;
            std::int64_t rn = r.norm();
            if (bn < 0 || rn < bn || (rn == bn && (q.a < bq.a || (q.a == bq.a && q.b < bq.b)))) {
                bq = q;
                br = r;
                bn = rn;
            }
        }
    return {bq, br};
}

/// Integral Hermitian Gram with int64 entries, for fast product evaluation.
struct LatGram64 {
    int n = 0;
    std::vector<E64> g;  // row-major n*n

    static LatGram64 from(const HermGram& G) {
        LatGram64 r;
        r.n = G.n();
        r.g.resize(size_t(r.n) * size_t(r.n));
        for (int i = 0; i < r.n; ++i)
            for (int j = 0; j < r.n; ++j) {
                EisInt z = G.at(i, j).to_eis();
                if (!z.a.fits_slong_p() || !z.b.fits_slong_p())
                    throw std::overflow_error("LatGram64: entry out of range");
                r.g[static_cast<size_t>(i) * size_t(r.n) + static_cast<size_t>(j)] = {z.a.get_si(), z.b.get_si()};
            }
        return r;
    }

    E64 at(int i, int j) const { return g[static_cast<size_t>(i) * static_cast<size_t>(n) + static_cast<size_t>(j)]; }

    /// G * conj(v), cached per vector to make products linear-time.
    std::vector<E64> transform(const std::int16_t* v) const {
        std::vector<E64> w(static_cast<size_t>(n));
        for (int j = 0; j < n; ++j) {
            E64 vj{v[2 * j], v[2 * j + 1]};
            if (vj.zero()) continue;
            E64 c = vj.conj();
            for (int i = 0; i < n; ++i) w[static_cast<size_t>(i)] = w[static_cast<size_t>(i)] + at(i, j) * c;
        }
        return w;
    }

    E64 inner(const std::int16_t* x, const std::vector<E64>& wy) const {
        E64 s;
        for (int i = 0; i < n; ++i) {
            E64 xi{x[2 * i], x[2 * i + 1]};
            if (xi.zero()) continue;
            s = s + xi * wy[static_cast<size_t>(i)];
        }
        return s;
    }
};

}  // namespace detail

/**
 * All lattice vectors of Hermitian norm <= bound, one representative per
 * {v, -v} pair, with coordinates in the canonical lattice basis.
 * Representatives are sign-normalized (first nonzero coordinate entry
 * positive) and sorted, so the result is byte-reproducible.
 */
struct RawShortVectors {
    int n = 0;
    long bound = 0;
    std::vector<std::int16_t> flat;  // 2n int16 per vector: a_0, b_0, a_1, b_1, ...
    std::vector<std::int32_t> norms;

    size_t size() const { return norms.size(); }
    const std::int16_t* vec(size_t i) const { return &flat[i * size_t(2 * n)]; }

    std::map<Int, Int> counts_by_norm() const {
        std::map<Int, Int> c;
        for (auto nn : norms) c[Int(nn)] += 2;  // both signs
        return c;
    }
};

namespace detail {

/**
 * Exact Fincke-Pohst enumeration on a positive definite integer Gram
 * matrix: visits one representative of each pair {x, -x} with
 * x^T G x <= bound.  All arithmetic is exact (rational Cholesky, integer
 * square roots for the layer intervals); no floating point anywhere.
 */
class TraceEnumerator {
public:
    TraceEnumerator(const ZGram& G0, long herm_rank) : n_(herm_rank) {
        red_ = lll_reduce(G0);
        d_ = red_.gram.n();
        // rational Cholesky: Q(x) = sum_i q_ii (x_i + sum_{j>i} q_ij x_j)^2
        q_.assign(static_cast<size_t>(d_), std::vector<Rational>(static_cast<size_t>(d_)));
        for (int i = 0; i < d_; ++i)
            for (int j = 0; j < d_; ++j) q_[static_cast<size_t>(i)][static_cast<size_t>(j)] = Rational(red_.gram.at(i, j));
        for (int i = 0; i < d_; ++i) {
            if (q_[static_cast<size_t>(i)][static_cast<size_t>(i)] <= 0)
                throw std::domain_error("TraceEnumerator: Gram not positive definite");
            for (int j = i + 1; j < d_; ++j) {
                q_[static_cast<size_t>(j)][static_cast<size_t>(i)] = q_[static_cast<size_t>(i)][static_cast<size_t>(j)];
                q_[static_cast<size_t>(i)][static_cast<size_t>(j)] /= q_[static_cast<size_t>(i)][static_cast<size_t>(i)];
            }
            for (int k = i + 1; k < d_; ++k)
                for (int l = k; l < d_; ++l)
                    q_[static_cast<size_t>(k)][static_cast<size_t>(l)] -= q_[static_cast<size_t>(k)][static_cast<size_t>(i)] * q_[static_cast<size_t>(i)][static_cast<size_t>(l)];
        }
        umat_.assign(static_cast<size_t>(d_), std::vector<long>(static_cast<size_t>(d_)));
        for (int i = 0; i < d_; ++i)
            for (int j = 0; j < d_; ++j) {
                if (!red_.U[static_cast<size_t>(i)][static_cast<size_t>(j)].fits_slong_p())
                    throw std::overflow_error("TraceEnumerator: transform entry out of range");
                umat_[static_cast<size_t>(i)][static_cast<size_t>(j)] = red_.U[static_cast<size_t>(i)][static_cast<size_t>(j)].get_si();
            }
    }

    const ReducedGram& reduced() const { return red_; }

    /**
     * Visit all pairs {x, -x} with trace norm <= tbound.  The callback
     * receives the coordinates in the ORIGINAL trace basis and the trace
     * norm; returning false aborts the walk.
     */
    template <typename F>
    void visit(long tbound, F&& cb) const {
        if (tbound < 0) return;
        const int d = d_;
        Workspace w(d);

        int i = d - 1;
        w.T[static_cast<size_t>(i)] = tbound;
        enter_level(i, w);
        while (true) {
            if (!advance(i, w)) {
                ++i;
                if (i >= d) return;
                continue;
            }
            if (i == 0) {
                bool zero = true;
                for (int j = 0; zero && j < d; ++j)
                    if (w.x[static_cast<size_t>(j)] != 0) zero = false;
                if (zero) continue;
                // trace norm = tbound - remainder below level 0
                mpq_set_si(w.t, tbound, 1);
                mpq_sub(w.t, w.t, w.rem);
                mpq_canonicalize(w.t);
                if (mpz_cmp_ui(mpq_denref(w.t), 1) != 0)
                    throw std::logic_error("TraceEnumerator: non-integral norm");
                long tnorm = mpz_get_si(mpq_numref(w.t));
                for (int j = 0; j < d; ++j) w.y[static_cast<size_t>(j)] = 0;
                for (int k = 0; k < d; ++k) {
                    long xk = w.x[static_cast<size_t>(k)];
                    if (xk == 0) continue;
                    const long* urow = umat_[static_cast<size_t>(k)].data();
                    for (int j = 0; j < d; ++j) w.y[static_cast<size_t>(j)] += xk * urow[j];
                }
                if (!cb(w.y, tnorm)) return;
            } else {
                mpq_set(w.T[static_cast<size_t>(i - 1)].get_mpq_t(), w.rem);
                --i;
                enter_level(i, w);
            }
        }
    }

private:
    struct Workspace {
        explicit Workspace(int d)
            : x(static_cast<size_t>(d), 0),
              x0(static_cast<size_t>(d), 0),
              step(static_cast<size_t>(d), 0),
              side(static_cast<size_t>(d), 0),
              dead_p(static_cast<size_t>(d), 0),
              dead_m(static_cast<size_t>(d), 0),
              y(static_cast<size_t>(d), 0),
              c(static_cast<size_t>(d), Rational(0)),
              T(static_cast<size_t>(d), Rational(0)) {
            mpq_inits(z, t, rem, nullptr);
            mpz_inits(r0, r1, nullptr);
        }
        ~Workspace() {
            mpq_clears(z, t, rem, nullptr);
            mpz_clears(r0, r1, nullptr);
        }
        Workspace(const Workspace&) = delete;
        Workspace& operator=(const Workspace&) = delete;
        std::vector<long> x, x0, step;
        std::vector<char> side, dead_p, dead_m;
        std::vector<long> y;
        std::vector<Rational> c, T;
        mpq_t z, t, rem;
        mpz_t r0, r1;
    };

    /// Prepare the zig-zag iteration x0, x0+1, x0-1, ... for a level.
    void enter_level(int i, Workspace& w) const {
        Rational& ci = w.c[static_cast<size_t>(i)];
        bool outer_zero = true;
        for (int j = i + 1; j < d_; ++j)
            if (w.x[static_cast<size_t>(j)] != 0) { outer_zero = false; break; }
        long x0 = 0;
        if (outer_zero) {
            mpq_set_ui(ci.get_mpq_t(), 0, 1);
        } else {
            mpq_set_ui(ci.get_mpq_t(), 0, 1);
            for (int j = i + 1; j < d_; ++j) {
                long xj = w.x[static_cast<size_t>(j)];
                if (xj == 0) continue;
                mpq_set_si(w.z, xj, 1);
                mpq_mul(w.z, w.z, q_[static_cast<size_t>(i)][static_cast<size_t>(j)].get_mpq_t());
                mpq_add(ci.get_mpq_t(), ci.get_mpq_t(), w.z);
            }
            // x0 = round(-c): floor((-2 num + den) / (2 den))
            mpz_mul_si(w.r0, mpq_numref(ci.get_mpq_t()), -2);
            mpz_add(w.r0, w.r0, mpq_denref(ci.get_mpq_t()));
            mpz_mul_ui(w.r1, mpq_denref(ci.get_mpq_t()), 2);
            mpz_fdiv_q(w.r0, w.r0, w.r1);
            x0 = mpz_get_si(w.r0);
        }
        w.x0[static_cast<size_t>(i)] = x0;
        w.step[static_cast<size_t>(i)] = 0;
        w.side[static_cast<size_t>(i)] = 0;
        w.dead_p[static_cast<size_t>(i)] = 0;
        // the half-space convention: while everything outside is zero only
        // x_i >= 0 is visited, and the center is 0 by symmetry
        w.dead_m[static_cast<size_t>(i)] = outer_zero ? 1 : 0;
    }

    /**
     * Move to the next admissible x_i (remaining budget >= 0), walking
     * outward from the rounded center; each side stops at the first
     * failure by monotonicity.  Leaves the remaining budget in w.rem.
     */
    bool advance(int i, Workspace& w) const {
        const size_t ii = static_cast<size_t>(i);
        const Rational& Ti = w.T[ii];
        const Rational& qi = q_[ii][ii];
        while (true) {
            long cand;
            if (w.step[ii] == 0) {
                if (w.dead_p[ii] && w.dead_m[ii] && w.side[ii]) return false;
                cand = w.x0[ii];
                w.step[ii] = 1;
                w.side[ii] = 0;
            } else if (w.side[ii] == 0) {
                if (w.dead_p[ii]) {
                    if (w.dead_m[ii]) return false;
                    w.side[ii] = 1;
                    continue;
                }
                cand = w.x0[ii] + w.step[ii];
                w.side[ii] = 1;
            } else {
                if (w.dead_m[ii]) {
                    if (w.dead_p[ii]) return false;
                    w.side[ii] = 0;
                    ++w.step[ii];
                    continue;
                }
                cand = w.x0[ii] - w.step[ii];
                w.side[ii] = 0;
                ++w.step[ii];
            }
            // budget test: rem = T_i - q_ii (cand + c_i)^2
            mpq_set_si(w.z, cand, 1);
            mpq_add(w.z, w.z, w.c[ii].get_mpq_t());
            mpq_mul(w.t, w.z, w.z);
            mpq_mul(w.t, w.t, qi.get_mpq_t());
            mpq_sub(w.rem, Ti.get_mpq_t(), w.t);
            if (mpq_sgn(w.rem) < 0) {
                if (cand > w.x0[ii]) w.dead_p[ii] = 1;
                else if (cand < w.x0[ii]) w.dead_m[ii] = 1;
                else return false;  // center already fails
                if (w.dead_p[ii] && w.dead_m[ii]) return false;
                continue;
            }
            w.x[ii] = cand;
            return true;
        }
    }

    int n_;
    int d_ = 0;
    ReducedGram red_;
    std::vector<std::vector<Rational>> q_;
    std::vector<std::vector<long>> umat_;
};

}  // namespace detail

/// Enumerate one representative per {v, -v} of Hermitian norm <= bound.
inline RawShortVectors enumerate_raw(const HermitianLattice& L, long bound) {
    RawShortVectors out;
    out.n = L.rank();
    out.bound = bound;
    if (L.rank() == 0 || bound <= 0) return out;
    detail::TraceEnumerator en(trace_lattice(L), L.rank());
    const int n = L.rank();
    std::vector<std::vector<std::int16_t>> rows;
    en.visit(2 * bound, [&](const std::vector<long>& y, long tnorm) {
        std::vector<std::int16_t> v(size_t(2 * n));
        // trace basis is {b_0, w b_0, b_1, w b_1, ...}
        int sign = 0;
        for (int j = 0; j < 2 * n && sign == 0; ++j)
            sign = y[static_cast<size_t>(j)] > 0 ? 1 : (y[static_cast<size_t>(j)] < 0 ? -1 : 0);
        for (int j = 0; j < 2 * n; ++j) {
            long e = sign < 0 ? -y[static_cast<size_t>(j)] : y[static_cast<size_t>(j)];
            if (e < -32768 || e > 32767)
                throw std::overflow_error("enumerate_raw: coordinate out of range");
            v[static_cast<size_t>(j)] = static_cast<std::int16_t>(e);
        }
        if (tnorm % 2 != 0) throw std::logic_error("enumerate_raw: odd trace norm");
        v.push_back(static_cast<std::int16_t>(tnorm / 2));
        rows.push_back(std::move(v));
        return true;
    });
    std::sort(rows.begin(), rows.end());
    out.flat.reserve(rows.size() * size_t(2 * n));
    out.norms.reserve(rows.size());
    for (auto& r : rows) {
        out.norms.push_back(r.back());
        r.pop_back();
        out.flat.insert(out.flat.end(), r.begin(), r.end());
    }
    return out;
}

/**
 * ShortVectorReport: the complete list of lattice vectors of Hermitian
 * norm <= bound (all vectors, not unit-orbit representatives), sorted
 * lexicographically, with counts per norm.
 */
struct ShortVectorReport {
    Int bound;
    std::vector<std::pair<std::vector<EisInt>, Int>> vectors;
    std::map<Int, Int> counts_by_norm;
};

inline ShortVectorReport short_vectors(const HermitianLattice& L, const Int& bound) {
    if (!L.is_integral()) throw std::domain_error("short_vectors: lattice is not integral");
    ShortVectorReport rep;
    rep.bound = bound;
    if (bound <= 0 || L.rank() == 0) return rep;
    RawShortVectors raw = enumerate_raw(L, bound.get_si());
    rep.counts_by_norm = raw.counts_by_norm();
    const int n = raw.n;
    for (size_t k = 0; k < raw.size(); ++k) {
        const std::int16_t* v = raw.vec(k);
        std::vector<EisInt> a(static_cast<size_t>(n));
        std::vector<EisInt> b(static_cast<size_t>(n));
        for (int j = 0; j < n; ++j) {
            a[static_cast<size_t>(j)] = EisInt(Int(v[2 * j]), Int(v[2 * j + 1]));
            b[static_cast<size_t>(j)] = -a[static_cast<size_t>(j)];
        }
        rep.vectors.push_back({std::move(a), Int(raw.norms[k])});
        rep.vectors.push_back({std::move(b), Int(raw.norms[k])});
    }
    auto lex = [](const std::pair<std::vector<EisInt>, Int>& p,
                  const std::pair<std::vector<EisInt>, Int>& q) {
        for (size_t i = 0; i < p.first.size(); ++i) {
            if (p.first[i] != q.first[i]) return p.first[i] < q.first[i];
        }
        return false;
    };
    std::sort(rep.vectors.begin(), rep.vectors.end(), lex);
    return rep;
}

/// Least nonzero Hermitian norm.
inline Int minimum(const HermitianLattice& L) {
    if (L.rank() == 0) throw std::domain_error("minimum: zero lattice");
    if (!L.is_integral()) throw std::domain_error("minimum: lattice is not integral");
    for (long bound = 1;; bound *= 2) {
        RawShortVectors raw = enumerate_raw(L, bound);
        if (!raw.norms.empty()) {
            std::int32_t m = raw.norms[0];
            for (auto v : raw.norms) m = std::min(m, v);
            return Int(m);
        }
        if (bound > 1 << 20) throw std::logic_error("minimum: runaway bound");
    }
}

/// Number of roots (vectors of Hermitian norm exactly 2).
inline Int mu2(const HermitianLattice& L) {
    if (!L.is_integral()) throw std::domain_error("mu2: lattice is not integral");
    if (L.rank() == 0) return 0;
    RawShortVectors raw = enumerate_raw(L, 2);
    Int c = 0;
    for (auto v : raw.norms)
        if (v == 2) c += 2;
    return c;
}

/// Theta coefficients N_0..N_prec with N_k = #{x in L : N(x) = k}.
inline std::vector<Int> theta_coeffs(const HermitianLattice& L, int prec) {
    if (prec < 0) throw std::domain_error("theta_coeffs: negative precision");
    if (!L.is_integral()) throw std::domain_error("theta_coeffs: lattice is not integral");
    std::vector<Int> c(static_cast<size_t>(prec) + 1, Int(0));
    c[0] = 1;
    if (L.rank() == 0 || prec == 0) return c;
    RawShortVectors raw = enumerate_raw(L, prec);
    for (auto v : raw.norms) c[static_cast<size_t>(v)] += 2;
    return c;
}

namespace detail {

/// Membership of an int64 row in the span of a triangular EisInt basis.
inline bool in_span64(std::vector<E64> v, const std::vector<std::vector<E64>>& rows,
                      const std::vector<int>& pivots) {
    for (size_t r = 0; r < rows.size(); ++r) {
        int p = pivots[r];
        E64 vp = v[static_cast<size_t>(p)];
        if (vp.zero()) continue;
        auto [q, rem] = divmod64(vp, rows[r][static_cast<size_t>(p)]);
        if (!rem.zero()) return false;
        for (size_t j = static_cast<size_t>(p); j < v.size(); ++j) v[j] = v[j] - q * rows[r][j];
    }
    for (const auto& e : v)
        if (!e.zero()) return false;
    return true;
}

}  // namespace detail

/**
 * Orthogonal decomposition into indecomposable summands.  Short vectors
 * up to the maximal reduced diagonal norm are grouped by the transitive
 * closure of "nonzero Hermitian product"; the sum of the component spans
 * is verified to be all of L (raising the bound up to three times if
 * not).
 */
inline std::vector<HermitianLattice> decompose(const HermitianLattice& L) {
    if (!L.is_integral()) throw std::domain_error("decompose: lattice is not integral");
    const int n = L.rank();
    if (n == 0) return {};
    HermGram G = L.gram();
    detail::LatGram64 G64 = detail::LatGram64::from(G);
    ReducedGram red = lll_reduce(trace_lattice(L));
    Int maxdiag = 0;
    for (int i = 0; i < red.gram.n(); ++i) maxdiag = std::max(maxdiag, red.gram.at(i, i));
    long bound = ((maxdiag.get_si() + 1) / 2);
    if (bound < 1) bound = 1;

    for (int attempt = 0; attempt <= 3; ++attempt, ++bound) {
        RawShortVectors raw = enumerate_raw(L, bound);
        // components: triangular int64 bases of the modules spanned so far,
        // plus G*conj(row) caches for fast linking
        struct Comp {
            EisMat basis;                             // exact HNF rows (lattice coords)
            std::vector<std::vector<detail::E64>> b64;  // mirror of basis
            std::vector<int> pivots;
            std::vector<std::vector<detail::E64>> w;    // G * conj(basis row)
        };
        std::vector<Comp> comps;

        auto rebuild = [&](Comp& c) {
            hnf_eis(c.basis);
            c.b64.clear();
            c.pivots.clear();
            c.w.clear();
            for (const auto& row : c.basis) {
                std::vector<detail::E64> r64(static_cast<size_t>(n));
                std::vector<std::int16_t> r16(size_t(2 * n));
                for (int j = 0; j < n; ++j) {
                    r64[static_cast<size_t>(j)] = {row[static_cast<size_t>(j)].a.get_si(), row[static_cast<size_t>(j)].b.get_si()};
                    r16[size_t(2 * j)] = static_cast<std::int16_t>(r64[static_cast<size_t>(j)].a);
                    r16[size_t(2 * j + 1)] = static_cast<std::int16_t>(r64[static_cast<size_t>(j)].b);
                }
                int p = 0;
                while (r64[static_cast<size_t>(p)].zero()) ++p;
                c.b64.push_back(std::move(r64));
                c.pivots.push_back(p);
                c.w.push_back(G64.transform(r16.data()));
            }
        };

        for (size_t k = 0; k < raw.size(); ++k) {
            const std::int16_t* vp = raw.vec(k);
            std::vector<detail::E64> v(static_cast<size_t>(n));
            for (int j = 0; j < n; ++j) v[static_cast<size_t>(j)] = {vp[2 * j], vp[2 * j + 1]};
            std::vector<size_t> linked;
            for (size_t ci = 0; ci < comps.size(); ++ci) {
                for (const auto& w : comps[ci].w) {
                    if (!G64.inner(vp, w).zero()) {
                        linked.push_back(ci);
                        break;
                    }
                }
            }
            if (linked.size() == 1 &&
                detail::in_span64(v, comps[linked[0]].b64, comps[linked[0]].pivots))
                continue;  // span unchanged
            Comp merged;
            for (auto it = linked.rbegin(); it != linked.rend(); ++it) {
                for (auto& row : comps[*it].basis) merged.basis.push_back(std::move(row));
                comps.erase(comps.begin() + static_cast<std::ptrdiff_t>(*it));
            }
            std::vector<EisInt> vrow(static_cast<size_t>(n));
            for (int j = 0; j < n; ++j) vrow[static_cast<size_t>(j)] = EisInt(Int(vp[2 * j]), Int(vp[2 * j + 1]));
            merged.basis.push_back(std::move(vrow));
            rebuild(merged);
            comps.push_back(std::move(merged));
        }

        // verification: components together must span L with index 1
        int total_rank = 0;
        EisMat all;
        for (const auto& c : comps) {
            total_rank += static_cast<int>(c.basis.size());
            for (const auto& row : c.basis) all.push_back(row);
        }
        if (total_rank == n) {
            hnf_eis(all);
            bool identity = static_cast<int>(all.size()) == n;
            for (int i = 0; identity && i < n; ++i)
                for (int j = 0; identity && j < n; ++j) {
                    const EisInt& e = all[static_cast<size_t>(i)][static_cast<size_t>(j)];
                    if (i == j ? !e.is_one() : !e.is_zero()) identity = false;
                }
            if (identity) {
                std::vector<HermitianLattice> result;
                for (const auto& c : comps) {
                    EisRatMat rows;
                    for (const auto& brow : c.basis) {
                        std::vector<EisInt> coeff(brow.begin(), brow.end());
                        rows.push_back(L.from_basis(coeff));
                    }
                    result.emplace_back(L.ambient(), std::move(rows));
                }
                std::sort(result.begin(), result.end(),
                          [](const HermitianLattice& a, const HermitianLattice& b) {
                              if (a.rank() != b.rank()) return a.rank() > b.rank();
                              return a.key() < b.key();
                          });
                return result;
            }
        }
    }
    throw std::runtime_error("decompose: verification failed at maximal bound");
}

}  // namespace eisenlat
