#include <catch2/catch_amalgamated.hpp>

#include <random>

#include <eisenlat/construct.hpp>
#include <eisenlat/lattice.hpp>

using namespace eisenlat;

namespace {

std::mt19937_64 rng(987654321);

std::vector<EisRat> row_of(std::initializer_list<std::string> xs) {
    std::vector<EisRat> r;
    for (const auto& s : xs) r.push_back(parse_eisrat(s));
    return r;
}

/// Random finite-index sublattice of I_n with small entries.
HermitianLattice random_sublattice(int n) {
    std::uniform_int_distribution<long> d(-2, 2);
    while (true) {
        EisRatMat rows(static_cast<size_t>(n), std::vector<EisRat>(static_cast<size_t>(n)));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) rows[static_cast<size_t>(i)][static_cast<size_t>(j)] = EisRat(EisInt(d(rng), d(rng)));
        try {
            HermitianLattice L(AmbientSpace::orthonormal(n), rows);
            if (L.rank() == n) return L;
        } catch (const std::exception&) {
        }
    }
}

}  // namespace

TEST_CASE("canonical basis removes redundancy") {
    AmbientSpace a = AmbientSpace::orthonormal(2);
    HermitianLattice L(a, {row_of({"1", "0"}), row_of({"1", "0"}), row_of({"0", "1"})});
    CHECK(L.rank() == 2);
    CHECK(L == lat_I(2));

    // <2 e1, w e1> = <e1> since gcd(2, w) is a unit
    HermitianLattice M(a, {row_of({"2", "0"}), row_of({"w", "0"})});
    CHECK(M.rank() == 1);
    CHECK(M.generators()[0] == row_of({"1", "0"}));

    // A2 from three redundant difference vectors
    AmbientSpace a3 = AmbientSpace::orthonormal(3);
    HermitianLattice A2(a3, {row_of({"1", "-1", "0"}), row_of({"0", "1", "-1"}),
                             row_of({"1", "0", "-1"})});
    CHECK(A2.rank() == 2);
    CHECK(A2 == lat_A(2));
    CHECK(canonical_basis(A2) == A2);  // idempotent
}

TEST_CASE("gram and discriminant of standard lattices") {
    HermGram g2 = lat_I(2).gram();
    CHECK(g2.at(0, 0) == EisRat(1));
    CHECK(g2.at(0, 1) == EisRat(0));
    CHECK(g2.at(1, 1) == EisRat(1));

    CHECK(lat_I(14).discriminant() == 1);
    CHECK(lat_A(2).discriminant() == 3);
    CHECK(lat_U5().discriminant() == 2);
    CHECK(lat_U6().discriminant() == 1);
    CHECK(lat_E(6).discriminant() == 3);
    CHECK(lat_E(7).discriminant() == 2);
    CHECK(lat_E(8).discriminant() == 1);
    CHECK(lat_D2(14).discriminant() == 4);
    CHECK(lat_D3(6).discriminant() == 3);

    CHECK(lat_U5().is_integral());
    CHECK_FALSE(lat_U5().is_unimodular());
    CHECK(lat_U6().is_unimodular());
    CHECK(lat_I(14).is_unimodular());
}

TEST_CASE("gram is conjugate symmetric with real diagonal") {
    for (int t = 0; t < 10; ++t) {
        HermitianLattice L = random_sublattice(3);
        HermGram G = L.gram();
        CHECK(G.conjugate_symmetric());
        for (int i = 0; i < G.n(); ++i) CHECK(G.at(i, i).im() == 0);
        Rational d = L.discriminant();
        CHECK(d > 0);
    }
}

TEST_CASE("dual lattices") {
    CHECK(dual(lat_I(4)) == lat_I(4));
    CHECK(dual(lat_U6()) == lat_U6());  // unimodular => self-dual

    HermitianLattice A2 = lat_A(2);
    HermitianLattice A2d = dual(A2);
    CHECK(A2d.discriminant() == Rational(1, 3));
    CHECK(A2d.contains(A2));
    CHECK(index(A2, A2d) == 9);

    for (int t = 0; t < 20; ++t) {
        HermitianLattice L = random_sublattice(5);
        CHECK(dual(dual(L)) == L);
    }
}

TEST_CASE("sum and index") {
    HermitianLattice I14 = lat_I(14);
    HermitianLattice D14 = lat_D2(14);
    CHECK(sum(D14, D14) == D14);
    CHECK(sum(D14, I14) == I14);
    CHECK(index(D14, I14) == 4);  // |Z[w]/2Z[w]|
    CHECK(D14.discriminant() == I14.discriminant() * 4);

    // d(Lsub) = d(Lsup) * |Lsup/Lsub| on random pairs
    for (int t = 0; t < 10; ++t) {
        HermitianLattice L = random_sublattice(3);
        HermitianLattice M = random_sublattice(3);
        HermitianLattice S = sum(L, M);
        Int ix = index(L, S);
        CHECK(L.discriminant() == S.discriminant() * Rational(ix));
    }
}

TEST_CASE("membership and coordinates") {
    HermitianLattice U6 = lat_U6();
    for (const auto& row : U6.generators()) CHECK(U6.contains(row));
    std::vector<EisRat> outside(6, EisRat(EisInt(1, 0), 5));
    CHECK_FALSE(U6.contains(outside));
    auto c = U6.coordinates(U6.from_basis(
        {EisInt(1, 0), EisInt(0, 1), EisInt(2, -1), EisInt(0, 0), EisInt(1, 1), EisInt(-3, 0)}));
    REQUIRE(c.has_value());
    CHECK((*c)[2] == EisInt(2, -1));
}

TEST_CASE("trace lattice") {
    // rank-1 Z[w] with Gram [1] has trace form [[2,-1],[-1,2]] of det 3
    ZGram T = trace_lattice(lat_I(1));
    REQUIRE(T.n() == 2);
    CHECK(T.at(0, 0) == 2);
    CHECK(T.at(0, 1) == -1);
    CHECK(T.at(1, 0) == -1);
    CHECK(T.at(1, 1) == 2);
    CHECK(T.det() == 3);

    ZGram TU = trace_lattice(lat_U6());
    CHECK(TU.n() == 12);
    Int d = TU.det();
    CHECK(d == 729);  // 3^6
    for (int i = 0; i < TU.n(); ++i) CHECK(TU.at(i, i) % 2 == 0);

    // symmetric and even for a few random integral lattices
    for (int t = 0; t < 5; ++t) {
        HermitianLattice L = random_sublattice(3);
        ZGram Z = trace_lattice(L);
        for (int i = 0; i < Z.n(); ++i) {
            CHECK(Z.at(i, i) % 2 == 0);
            for (int j = 0; j < Z.n(); ++j) CHECK(Z.at(i, j) == Z.at(j, i));
        }
        Rational dl = L.discriminant();
        CHECK(Rational(Z.det()) == Rational(27) * dl * dl);  // 3^3 d(L)^2 at rank 3
    }
}

TEST_CASE("conjugate lattice") {
    HermitianLattice U5 = lat_U5();
    HermitianLattice C = conjugate(U5);
    CHECK(conjugate(C) == U5);
    CHECK(C.discriminant() == U5.discriminant());
}

TEST_CASE("json round trip") {
    for (const HermitianLattice& L :
         {lat_U6(), lat_U5(), lat_D2(4), lat_E(7), exterior_square(lat_I(3))}) {
        auto j = lattice_to_json(L);
        HermitianLattice back = lattice_from_json(j);
        CHECK(back == L);
        // byte identity of the serialized form
        CHECK(lattice_to_json(back).dump() == j.dump());
    }
    CHECK_THROWS(lattice_from_json(nlohmann::json::object()));
}

TEST_CASE("lattice_from_gram") {
    // a diagonal Gram is reproduced verbatim
    HermGram D2;
    D2.g = {{EisRat(EisInt(2, 0))}};
    HermitianLattice L2 = lattice_from_gram(D2);
    CHECK(L2.rank() == 1);
    CHECK(L2.gram().at(0, 0) == EisRat(EisInt(2, 0)));

    // for a general Gram the canonical basis is congruent: discriminant,
    // rank and integrality are preserved
    HermitianLattice U5 = lat_U5();
    HermitianLattice L = lattice_from_gram(U5.gram());
    CHECK(L.rank() == U5.rank());
    CHECK(L.discriminant() == U5.discriminant());
    CHECK(L.is_integral());
}
