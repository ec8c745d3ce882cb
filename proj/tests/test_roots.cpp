#include <catch2/catch_amalgamated.hpp>

#include <eisenlat/roots.hpp>

using namespace eisenlat;

namespace {

/// Orthogonal block sum of standard lattices in a concatenated ambient.
HermitianLattice block_sum(const std::vector<std::string>& names) {
    AmbientSpace ambient;
    EisRatMat rows;
    int offset = 0;
    for (const auto& name : names) {
        HermitianLattice comp = std_lattice(name);
        for (const auto& b : comp.ambient().blocks) ambient.blocks.push_back(b);
        for (const auto& row : comp.generators()) {
            std::vector<EisRat> r(static_cast<size_t>(offset));
            r.insert(r.end(), row.begin(), row.end());
            rows.push_back(std::move(r));
        }
        offset += comp.ambient_dim();
    }
    for (auto& r : rows) r.resize(static_cast<size_t>(ambient.dim()));
    return HermitianLattice(ambient, rows);
}

}  // namespace

TEST_CASE("self identification of the alphabet") {
    struct Case {
        std::string name;
        std::string expect;
    };
    std::vector<Case> cases = {
        {"A_1", "A_1"},       {"A_2", "A_2"},       {"A_5", "A_5"},
        {"D_4(2)", "D_4(2)"}, {"D_5(2)", "D_5(2)"}, {"D_3(sqrt-3)", "D_3(sqrt-3)"},
        {"D_4(sqrt-3)", "D_4(sqrt-3)"},             {"E_6", "E_6"},
        {"E_7", "E_7"},       {"E_8", "E_8"},       {"U_5", "U_5"},
        {"U_6", "U_6"},
    };
    for (const auto& c : cases) {
        HermitianLattice L = std_lattice(c.name);
        RootSystemDescriptor d = classify_roots(L);
        INFO(c.name);
        CHECK(d.str() == c.expect);
        CHECK(d.total_rank == L.rank());
        CHECK(Int(d.root_count()) == mu2(L));
    }
}

TEST_CASE("rank-2 and rank-3 coincidences collapse into A") {
    // D_2(sqrt-3) = A_2 and D_3(2) = A_3 as lattices
    CHECK(classify_roots(lat_D(2, EisInt::sqrt_m3())).str() == "A_2");
    CHECK(classify_roots(lat_D(3, EisInt(2, 0))).str() == "A_3");
    CHECK(is_isometric(lat_D(2, EisInt::sqrt_m3()), lat_A(2)).has_value());
    CHECK(is_isometric(lat_D(3, EisInt(2, 0)), lat_A(3)).has_value());
}

TEST_CASE("root sublattice") {
    // the exterior square of U6 is root free
    HermitianLattice W = exterior_square(lat_U6());
    HermitianLattice R = root_sublattice(W);
    CHECK(R.rank() == 0);
    CHECK(classify_roots(W).str() == "empty");
    CHECK(classify_roots(W).total_rank == 0);

    // I_2 is spanned by its norm-2 vectors
    HermitianLattice R2 = root_sublattice(lat_I(2));
    CHECK(R2.rank() == 2);
    CHECK(R2 == lat_I(2));

    // U5's roots span U5
    CHECK(root_sublattice(lat_U5()) == lat_U5());
}

TEST_CASE("composite root systems") {
    HermitianLattice L = block_sum({"D_8(2)", "U_5", "A_1"});
    RootSystemDescriptor d = classify_roots(L);
    CHECK(d.str() == "D_8(2) U_5 A_1");
    CHECK(d.root_count() == 336 + 270 + 6);  // 612
    CHECK(mu2(L) == 612);

    HermitianLattice M = block_sum({"D_4(2)", "A_2", "A_2", "A_2", "A_2"});
    RootSystemDescriptor dm = classify_roots(M);
    CHECK(dm.str() == "D_4(2) A_2 A_2 A_2 A_2");
    CHECK(mu2(M) == 144);  // 72 + 4*18
    CHECK(dm.total_rank == 12);

    // an I_1 block contributes rank but no roots
    HermitianLattice N = block_sum({"A_2", "I_1"});
    CHECK(classify_roots(N).str() == "A_2");
    CHECK(classify_roots(N).total_rank <= N.rank());
}

TEST_CASE("parse_root_system") {
    bool bare = false;
    RootSystemDescriptor d = parse_root_system("D_8(2) U_5 A_1", &bare);
    CHECK_FALSE(bare);
    CHECK(d.str() == "D_8(2) U_5 A_1");
    CHECK(d.total_rank == 14);

    RootSystemDescriptor e = parse_root_system("A_1 U_5 D_8(2)", &bare);
    CHECK(e == d);  // canonical order is independent of input order

    RootSystemDescriptor f = parse_root_system("D_4 D_4(2) A_3", &bare);
    CHECK(bare);  // bare D_4 present, normalized to sqrt-3
    CHECK(f.str() == "D_4(2) D_4(sqrt-3) A_3");

    CHECK(parse_root_system("empty").components.empty());
    CHECK(parse_root_system("D_5(sqrt-3) D_5(sqrt-3) A_2 A_2").total_rank == 14);
    CHECK_THROWS(parse_root_system("Q_3"));
}
