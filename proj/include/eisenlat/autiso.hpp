#pragma once

#include <chrono>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "enumerate.hpp"
#include "lattice.hpp"

namespace eisenlat {

struct TimeoutError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A Z[w]-matrix carrying gram(L1) to gram(L2) by conjugate congruence.
struct IsometryWitness {
    EisMat matrix;  // rows: images of the canonical basis of L1, in L2 basis coordinates
};

struct AutGroupReport {
    std::vector<EisMat> generators;  // stabilizer-chain coset representatives
    Int order;
};

namespace detail {

/// Short-vector environment for backtrack searches on one lattice.
struct SearchEnv {
    int n = 0;
    LatGram64 G;
    long span_bound = 0;
    std::vector<std::int16_t> flat;                   // both signs expanded
    std::vector<std::int32_t> norms;
    std::vector<std::vector<E64>> wcache;             // G * conj(v)
    std::vector<std::vector<std::uint32_t>> by_norm;  // norm -> vector ids
    std::vector<std::uint64_t> profile;               // invariant hash (may be empty)
    std::vector<std::uint32_t> base_ids;              // rank-n independent short vectors
    std::vector<std::vector<E64>> base_rows;          // their coordinates
    Int base_index = 1;                               // |L / span(base)|
    EisRatMat base_inv;                               // inverse of the base matrix over Q(w)

    const std::int16_t* vec(std::uint32_t i) const { return &flat[size_t(i) * size_t(2 * n)]; }

    /// (u, v_j), linear in u.
    E64 product(const std::int16_t* u, std::uint32_t j) const { return G.inner(u, wcache[j]); }

    E64 product_ids(std::uint32_t i, std::uint32_t j) const { return G.inner(vec(i), wcache[j]); }
};

/**
 * Build the search environment: enumerate short vectors, raising the
 * bound until they span the whole lattice, cache Gram transforms and
 * pick a rank-n independent subset with index as small as greedy gets
 * (completions handle index > 1 through an exactness check at the leaf).
 */
inline SearchEnv make_env(const HermitianLattice& L, long max_bound = 8) {
    SearchEnv env;
    env.n = L.rank();
    env.G = LatGram64::from(L.gram());
    const int n = env.n;
    for (long bound = minimum(L).get_si();; ++bound) {
        if (bound > max_bound) throw std::runtime_error("make_env: short vectors do not span the lattice");
        RawShortVectors raw = enumerate_raw(L, bound);
        EisMat all;
        for (size_t k = 0; k < raw.size(); ++k) {
            std::vector<EisInt> row(static_cast<size_t>(n), EisInt());
            const std::int16_t* v = raw.vec(k);
            for (int j = 0; j < n; ++j) row[static_cast<size_t>(j)] = EisInt(Int(v[2 * j]), Int(v[2 * j + 1]));
            all.push_back(std::move(row));
        }
        hnf_eis(all);
        bool identity = static_cast<int>(all.size()) == n;
        for (int i = 0; identity && i < n; ++i)
            for (int j = 0; identity && j < n; ++j) {
                const EisInt& e = all[static_cast<size_t>(i)][static_cast<size_t>(j)];
                if (i == j ? !e.is_one() : !e.is_zero()) identity = false;
            }
        if (!identity) continue;

        env.span_bound = bound;
        size_t pairs = raw.size();
        env.flat.reserve(2 * pairs * size_t(2 * n));
        env.norms.reserve(2 * pairs);
        for (size_t k = 0; k < pairs; ++k) {
            const std::int16_t* v = raw.vec(k);
            for (int s = 0; s < 2; ++s)
                for (int j = 0; j < 2 * n; ++j)
                    env.flat.push_back(s == 0 ? v[j] : static_cast<std::int16_t>(-v[j]));
            env.norms.push_back(raw.norms[k]);
            env.norms.push_back(raw.norms[k]);
        }
        size_t total = env.norms.size();
        env.wcache.resize(total);
        for (size_t k = 0; k < total; ++k)
            env.wcache[k] = env.G.transform(env.vec(static_cast<std::uint32_t>(k)));
        env.by_norm.assign(static_cast<size_t>(bound) + 1, {});
        for (size_t k = 0; k < total; ++k)
            env.by_norm[static_cast<size_t>(env.norms[k])].push_back(static_cast<std::uint32_t>(k));

        // invariant profile per vector: the multiset of products against
        // the smallest norm class (a canonically defined, Aut-stable set)
        {
            size_t ref_norm = 0;
            for (size_t nv = 1; nv < env.by_norm.size(); ++nv)
                if (!env.by_norm[nv].empty()) { ref_norm = nv; break; }
            const auto& ref = env.by_norm[ref_norm];
            if (!ref.empty() && total * ref.size() <= 200000000ULL) {
                env.profile.resize(total);
                std::vector<std::pair<long, long>> prods;
                for (size_t k = 0; k < total; ++k) {
                    prods.clear();
                    prods.reserve(ref.size());
                    for (std::uint32_t l : ref) {
                        E64 p = env.product_ids(l, static_cast<std::uint32_t>(k));
                        prods.push_back({p.a, p.b});
                    }
                    std::sort(prods.begin(), prods.end());
                    std::uint64_t h = 1469598103934665603ULL;
                    for (auto& [a, b] : prods) {
                        h ^= static_cast<std::uint64_t>(a) * 0x9E3779B97F4A7C15ULL;
                        h *= 1099511628211ULL;
                        h ^= static_cast<std::uint64_t>(b) * 0xC2B2AE3D27D4EB4FULL;
                        h *= 1099511628211ULL;
                    }
                    env.profile[k] = h;
                }
            }
        }

        // greedy independent subset, smallest norms first
        EisMat picked_exact;
        for (long nv = 1; nv <= bound && static_cast<int>(env.base_ids.size()) < n; ++nv) {
            if (nv >= static_cast<long>(env.by_norm.size())) break;
            for (std::uint32_t id : env.by_norm[static_cast<size_t>(nv)]) {
                std::vector<EisInt> row(static_cast<size_t>(n), EisInt());
                const std::int16_t* v = env.vec(id);
                for (int j = 0; j < n; ++j) row[static_cast<size_t>(j)] = EisInt(Int(v[2 * j]), Int(v[2 * j + 1]));
                EisMat trial = picked_exact;
                trial.push_back(row);
                EisMat h = trial;
                hnf_eis(h);
                if (h.size() > picked_exact.size()) {
                    picked_exact = std::move(trial);
                    env.base_ids.push_back(id);
                    if (static_cast<int>(env.base_ids.size()) == n) break;
                }
            }
        }
        if (static_cast<int>(env.base_ids.size()) != n)
            throw std::logic_error("make_env: could not pick an independent subset");
        env.base_index = det_bareiss(picked_exact).norm();
        for (std::uint32_t id : env.base_ids) {
            const std::int16_t* v = env.vec(id);
            std::vector<E64> r(static_cast<size_t>(n));
            for (int j = 0; j < n; ++j) r[static_cast<size_t>(j)] = {v[2 * j], v[2 * j + 1]};
            env.base_rows.push_back(std::move(r));
        }
        {
            HermGram S;  // general square matrix; the Gauss-Jordan inverse works for any
            S.g.assign(static_cast<size_t>(n), std::vector<EisRat>(static_cast<size_t>(n)));
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    S.g[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                        EisRat(picked_exact[static_cast<size_t>(i)][static_cast<size_t>(j)]);
            env.base_inv = herm_inverse(S);
        }
        return env;
    }
}

/**
 * Backtrack search assigning Gram-consistent images to the source base
 * vectors.  A complete assignment extends uniquely to a Q(w)-linear map;
 * the leaf test checks the extension maps the source lattice into the
 * target one over Z[w] (always true when the base has index 1).
 */
struct Backtrack {
    const SearchEnv& src;
    const SearchEnv& dst;
    double budget_seconds;
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    long long nodes = 0;

    std::vector<std::vector<E64>> base_gram;  // (B_i, B_j) in src
    std::vector<int> order;                   // level -> base position

    Backtrack(const SearchEnv& s, const SearchEnv& d, double budget)
        : src(s), dst(d), budget_seconds(budget) {
        const int n = src.n;
        base_gram.assign(static_cast<size_t>(n), std::vector<E64>(static_cast<size_t>(n)));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                base_gram[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                    src.product_ids(src.base_ids[static_cast<size_t>(i)], src.base_ids[static_cast<size_t>(j)]);
        order.resize(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) order[static_cast<size_t>(i)] = i;
        std::stable_sort(order.begin(), order.end(),
                         [&](int a, int b) { return class_size(a) < class_size(b); });
    }

    size_t class_size(int pos) const {
        long nv = base_gram[static_cast<size_t>(pos)][static_cast<size_t>(pos)].a;
        if (nv < 0 || nv >= static_cast<long>(dst.by_norm.size())) return 0;
        return dst.by_norm[static_cast<size_t>(nv)].size();
    }

    void tick() {
        if ((++nodes & 0xFFF) == 0) {
            double el = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            if (el > budget_seconds) throw TimeoutError("backtrack: time budget exceeded");
        }
    }

    std::vector<std::uint32_t> candidates(int level, const std::vector<std::uint32_t>& imgs) const {
        int bp = order[static_cast<size_t>(level)];
        E64 nv = base_gram[static_cast<size_t>(bp)][static_cast<size_t>(bp)];
        std::vector<std::uint32_t> out;
        if (nv.a < 0 || nv.a >= static_cast<long>(dst.by_norm.size())) return out;
        bool use_profile = !src.profile.empty() && !dst.profile.empty();
        std::uint64_t want_profile =
            use_profile ? src.profile[src.base_ids[static_cast<size_t>(bp)]] : 0;
        for (std::uint32_t cand : dst.by_norm[static_cast<size_t>(nv.a)]) {
            if (use_profile && dst.profile[cand] != want_profile) continue;
            bool ok = true;
            for (int l = 0; ok && l < level; ++l) {
                int bq = order[static_cast<size_t>(l)];
                E64 want = base_gram[static_cast<size_t>(bp)][static_cast<size_t>(bq)];
                if (!(dst.product(dst.vec(cand), imgs[static_cast<size_t>(l)]) == want)) ok = false;
            }
            if (ok) out.push_back(cand);
        }
        return out;
    }

    /**
     * The linear extension in target coordinates: M = S^{-1} R on the
     * canonical source basis; empty result if it is not integral.
     */
    std::optional<EisMat> extension(const std::vector<std::uint32_t>& imgs) const {
        const int n = src.n;
        EisRatMat R(static_cast<size_t>(n));
        for (int l = 0; l < n; ++l) {
            const std::int16_t* v = dst.vec(imgs[static_cast<size_t>(l)]);
            auto& row = R[static_cast<size_t>(order[static_cast<size_t>(l)])];
            for (int j = 0; j < n; ++j) row.push_back(EisRat(EisInt(Int(v[2 * j]), Int(v[2 * j + 1]))));
        }
        EisMat M(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                EisRat acc;
                for (int k = 0; k < n; ++k)
                    acc += src.base_inv[static_cast<size_t>(i)][static_cast<size_t>(k)] * R[static_cast<size_t>(k)][static_cast<size_t>(j)];
                if (!acc.is_integral()) return std::nullopt;
                M[static_cast<size_t>(i)].push_back(acc.to_eis());
            }
        return M;
    }

    bool complete(int level, std::vector<std::uint32_t>& imgs, EisMat* leaf = nullptr) {
        const int n = src.n;
        if (level == n) {
            if (src.base_index == 1 && !leaf) return true;
            auto M = extension(imgs);
            if (!M) return false;
            if (leaf) *leaf = std::move(*M);
            return true;
        }
        for (std::uint32_t cand : candidates(level, imgs)) {
            tick();
            imgs.push_back(cand);
            if (complete(level + 1, imgs, leaf)) return true;
            imgs.pop_back();
        }
        return false;
    }
};

}  // namespace detail

/**
 * The full Hermitian automorphism group U(L): stabilizer-chain coset
 * representatives and the exact order |G| = prod over levels of the
 * number of base-vector images extendable to an automorphism when all
 * earlier base vectors are pinned.
 */
inline AutGroupReport automorphism_group(const HermitianLattice& L, double budget_seconds = 600.0) {
    if (!L.is_integral()) throw std::domain_error("automorphism_group: lattice is not integral");
    if (L.rank() == 0) throw std::domain_error("automorphism_group: zero lattice");
    detail::SearchEnv env = detail::make_env(L);
    detail::Backtrack bt(env, env, budget_seconds);
    const int n = L.rank();

    std::vector<std::uint32_t> identity_imgs;
    for (int level = 0; level < n; ++level)
        identity_imgs.push_back(env.base_ids[static_cast<size_t>(bt.order[static_cast<size_t>(level)])]);

    AutGroupReport rep;
    rep.order = 1;
    for (int level = 0; level < n; ++level) {
        std::vector<std::uint32_t> prefix(identity_imgs.begin(), identity_imgs.begin() + level);
        long orbit = 0;
        for (std::uint32_t cand : bt.candidates(level, prefix)) {
            std::vector<std::uint32_t> imgs = prefix;
            imgs.push_back(cand);
            EisMat leaf;
            if (bt.complete(level + 1, imgs, &leaf)) {
                ++orbit;
                if (cand != identity_imgs[static_cast<size_t>(level)]) {
                    if (env.base_index == 1) {
                        auto M = bt.extension(imgs);
                        if (!M) throw std::logic_error("automorphism_group: extension lost");
                        rep.generators.push_back(std::move(*M));
                    } else {
                        rep.generators.push_back(std::move(leaf));
                    }
                }
            }
        }
        if (orbit == 0) throw std::logic_error("automorphism_group: identity not recovered");
        rep.order *= orbit;
    }
    return rep;
}

/**
 * Exact isometry test: invariant rejection first (rank, discriminant,
 * norm counts at the spanning bound), then a witness search; exhausting
 * the tree proves non-isometry.  Throws TimeoutError when the budget
 * runs out, never returning a wrong verdict.
 */
inline std::optional<IsometryWitness> is_isometric(const HermitianLattice& L1,
                                                   const HermitianLattice& L2,
                                                   double budget_seconds = 600.0) {
    if (!L1.is_integral() || !L2.is_integral())
        throw std::domain_error("is_isometric: lattices must be integral");
    if (L1.rank() != L2.rank()) return std::nullopt;
    if (L1.rank() == 0) return IsometryWitness{};
    if (L1.discriminant() != L2.discriminant()) return std::nullopt;
    detail::SearchEnv e1 = detail::make_env(L1);
    detail::SearchEnv e2 = detail::make_env(L2);
    if (e1.span_bound != e2.span_bound) return std::nullopt;
    for (long nv = 1; nv <= e1.span_bound; ++nv) {
        size_t c1 = nv < static_cast<long>(e1.by_norm.size()) ? e1.by_norm[static_cast<size_t>(nv)].size() : 0;
        size_t c2 = nv < static_cast<long>(e2.by_norm.size()) ? e2.by_norm[static_cast<size_t>(nv)].size() : 0;
        if (c1 != c2) return std::nullopt;
    }
    detail::Backtrack bt(e1, e2, budget_seconds);
    std::vector<std::uint32_t> imgs;
    EisMat leaf;
    if (!bt.complete(0, imgs, &leaf)) return std::nullopt;

    // verify M G2 M^H == G1 exactly before handing the witness out
    HermGram G1 = L1.gram(), G2 = L2.gram();
    const int n = L1.rank();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            EisRat acc;
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l)
                    acc += EisRat(leaf[static_cast<size_t>(i)][static_cast<size_t>(k)]) * G2.at(k, l) *
                           EisRat(leaf[static_cast<size_t>(j)][static_cast<size_t>(l)]).conj();
            if (acc != G1.at(i, j)) throw std::logic_error("is_isometric: witness verification failed");
        }
    return IsometryWitness{std::move(leaf)};
}

}  // namespace eisenlat
