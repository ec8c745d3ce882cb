#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include <eisenlat/construct.hpp>
#include <eisenlat/enumerate.hpp>
#include <eisenlat/qseries.hpp>

using namespace eisenlat;

namespace {

std::mt19937_64 rng(424243);

HermitianLattice random_small_lattice(int n) {
    std::uniform_int_distribution<long> d(-2, 2);
    while (true) {
        EisRatMat rows(static_cast<size_t>(n), std::vector<EisRat>(static_cast<size_t>(n)));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) rows[static_cast<size_t>(i)][static_cast<size_t>(j)] = EisRat(EisInt(d(rng), d(rng)));
        try {
            HermitianLattice L(AmbientSpace::orthonormal(n), rows);
            if (L.rank() != n) continue;
            // keep Gram entries small so that the box oracle stays cheap
            HermGram G = L.gram();
            bool small = true;
            for (int i = 0; small && i < n; ++i)
                for (int j = 0; small && j < n; ++j)
                    if (G.at(i, j).norm() > 16) small = false;
            if (small) return L;
        } catch (const std::exception&) {
        }
    }
}

/// Naive box-search oracle: all coefficient vectors with |a|,|b| <= R.
std::map<Int, Int> box_counts(const HermitianLattice& L, long bound, long R) {
    const int n = L.rank();
    HermGram G = L.gram();
    std::map<Int, Int> counts;
    std::vector<EisInt> c(static_cast<size_t>(n));
    std::function<void(int)> rec = [&](int i) {
        if (i == n) {
            EisRat s;
            for (int p = 0; p < n; ++p)
                for (int q = 0; q < n; ++q) {
                    if (c[static_cast<size_t>(p)].is_zero() || c[static_cast<size_t>(q)].is_zero()) continue;
                    s += EisRat(c[static_cast<size_t>(p)]) * G.at(p, q) * EisRat(c[static_cast<size_t>(q)]).conj();
                }
            if (s.is_zero()) {
                bool zero = true;
                for (const auto& x : c)
                    if (!x.is_zero()) zero = false;
                if (zero) return;
            }
            if (s.im() != 0) throw std::logic_error("box oracle: non-real norm");
            Rational nv = s.rat();
            if (nv.get_den() == 1 && nv.get_num() >= 1 && nv.get_num() <= bound)
                counts[Int(nv.get_num())] += 1;
            return;
        }
        for (long a = -R; a <= R; ++a)
            for (long b = -R; b <= R; ++b) {
                c[static_cast<size_t>(i)] = EisInt(a, b);
                rec(i + 1);
            }
    };
    rec(0);
    return counts;
}

}  // namespace

TEST_CASE("short vectors against the box oracle at rank <= 3") {
    for (int n = 1; n <= 3; ++n) {
        for (int t = 0; t < (n == 3 ? 2 : 6); ++t) {
            HermitianLattice L = random_small_lattice(n);
            long bound = 4;
            ShortVectorReport rep = short_vectors(L, bound);
            auto oracle = box_counts(L, bound, 5);
            for (const auto& [nv, cnt] : oracle) CHECK(rep.counts_by_norm[nv] == cnt);
            for (const auto& [nv, cnt] : rep.counts_by_norm) {
                if (cnt != 0) CHECK(oracle[nv] == cnt);
            }
            // every reported vector has in-range coordinates, so the box
            // search cannot have missed any
            for (const auto& [coords, nv] : rep.vectors) {
                for (const auto& z : coords) {
                    REQUIRE(abs(z.a) <= 4);
                    REQUIRE(abs(z.b) <= 4);
                }
                (void)nv;
            }
        }
    }
}

TEST_CASE("report structure") {
    HermitianLattice A2 = lat_A(2);
    ShortVectorReport rep = short_vectors(A2, 2);
    CHECK(rep.counts_by_norm[2] == 18);
    CHECK(rep.vectors.size() == 18);
    // closed under negation and sorted lexicographically
    std::set<std::string> seen;
    for (const auto& [v, nv] : rep.vectors) {
        std::string key;
        for (const auto& z : v) key += z.str() + ",";
        seen.insert(key);
        std::string neg;
        for (const auto& z : v) neg += (-z).str() + ",";
        CHECK(rep.vectors.end() !=
              std::find_if(rep.vectors.begin(), rep.vectors.end(), [&](const auto& p) {
                  std::string k;
                  for (const auto& z : p.first) k += z.str() + ",";
                  return k == neg;
              }));
        (void)nv;
    }
    CHECK(seen.size() == 18);

    // bound 0 gives an empty report
    ShortVectorReport empty = short_vectors(A2, 0);
    CHECK(empty.vectors.empty());
    CHECK(empty.counts_by_norm.empty());
}

TEST_CASE("root counts of the reference lattices") {
    CHECK(mu2(lat_A(1)) == 6);
    CHECK(mu2(lat_A(2)) == 18);
    CHECK(mu2(lat_A(3)) == 36);
    CHECK(mu2(lat_D2(4)) == 72);
    CHECK(mu2(lat_D3(3)) == 54);
    CHECK(mu2(lat_E(6)) == 216);
    CHECK(mu2(lat_U5()) == 270);
}

TEST_CASE("minimum") {
    CHECK(minimum(lat_I(5)) == 1);
    CHECK(minimum(lat_A(2)) == 2);
    CHECK(minimum(lat_U6()) == 2);
    CHECK_THROWS(minimum(HermitianLattice()));
}

TEST_CASE("unit orbit divisibility") {
    for (int t = 0; t < 6; ++t) {
        HermitianLattice L = random_small_lattice(2);
        ShortVectorReport rep = short_vectors(L, 6);
        for (const auto& [nv, cnt] : rep.counts_by_norm) {
            if (nv >= 1) CHECK(cnt % 6 == 0);
        }
    }
}

TEST_CASE("theta coefficients") {
    // I_1 = Z[w]: counts of Eisenstein integers by norm
    auto c = theta_coeffs(lat_I(1), 12);
    QSeries t = theta_a2(12);
    for (int k = 0; k <= 12; ++k) CHECK(c[static_cast<size_t>(k)] == t[k]);

    // theta of the conjugate lattice is identical
    HermitianLattice U5 = lat_U5();
    CHECK(theta_coeffs(U5, 5) == theta_coeffs(conjugate(U5), 5));

    // A2: N_2 = 18
    auto a2 = theta_coeffs(lat_A(2), 3);
    CHECK(a2[0] == 1);
    CHECK(a2[1] == 0);
    CHECK(a2[2] == 18);
}

TEST_CASE("reduce_trace_basis") {
    // an already reduced A2 Gram is unchanged
    ZGram A2;
    A2.g = {{Int(2), Int(-1)}, {Int(-1), Int(2)}};
    ReducedGram r = reduce_trace_basis(A2);
    CHECK(r.gram.at(0, 0) == 2);
    CHECK(r.gram.at(1, 1) == 2);
    CHECK(r.gram.at(0, 1) == -1);
    CHECK(r.U[0][0] == 1);
    CHECK(r.U[0][1] == 0);
    CHECK(r.U[1][0] == 0);
    CHECK(r.U[1][1] == 1);

    // I_2 under the skewed basis {e1, 10 e1 + e2} reduces back to norms 1
    AmbientSpace a = AmbientSpace::orthonormal(2);
    HermitianLattice skew(a, {{EisRat(1), EisRat(0)}, {EisRat(EisInt(10, 0)), EisRat(1)}});
    CHECK(skew == lat_I(2));  // canonical form already fixes it
    ZGram Z = trace_lattice(skew);
    ReducedGram rr = reduce_trace_basis(Z);
    Int maxdiag = 0;
    for (int i = 0; i < rr.gram.n(); ++i) maxdiag = std::max(maxdiag, rr.gram.at(i, i));
    CHECK(maxdiag == 2);
    CHECK(rr.gram.det() == Z.det());
}

TEST_CASE("decompose") {
    auto comps = decompose(lat_I(2));
    REQUIRE(comps.size() == 2);
    CHECK(comps[0].rank() == 1);
    CHECK(comps[1].rank() == 1);

    // A1 + A2 block lattice inside I_5
    AmbientSpace a = AmbientSpace::orthonormal(5);
    EisRatMat rows = {
        {EisRat(1), EisRat(-1), EisRat(0), EisRat(0), EisRat(0)},
        {EisRat(0), EisRat(0), EisRat(1), EisRat(-1), EisRat(0)},
        {EisRat(0), EisRat(0), EisRat(0), EisRat(1), EisRat(-1)},
    };
    HermitianLattice L(a, rows);
    auto parts = decompose(L);
    REQUIRE(parts.size() == 2);
    CHECK(parts[0].rank() == 2);
    CHECK(parts[1].rank() == 1);
    CHECK(mu2(parts[0]) == 18);
    CHECK(mu2(parts[1]) == 6);

    // components are pairwise orthogonal and multiply out to L
    Rational dprod = 1;
    int ranks = 0;
    for (const auto& p : parts) {
        dprod *= p.discriminant();
        ranks += p.rank();
        for (const auto& q : parts) {
            if (&p == &q) continue;
            for (const auto& x : p.generators())
                for (const auto& y : q.generators()) CHECK(L.inner(x, y).is_zero());
        }
    }
    CHECK(ranks == L.rank());
    CHECK(dprod == L.discriminant());

    // U6 is indecomposable
    CHECK(decompose(lat_U6()).size() == 1);
}
