#include <catch2/catch_amalgamated.hpp>

#include <random>

#include <eisenlat/qseries.hpp>

using namespace eisenlat;

namespace {

// Independent oracle for theta_A2: count Eisenstein integers by norm over
// a box that certainly covers all norms <= prec.
std::vector<Int> theta_box_oracle(int prec) {
    std::vector<Int> c(static_cast<size_t>(prec) + 1, Int(0));
    long R = prec + 2;
    for (long a = -2 * R; a <= 2 * R; ++a)
        for (long b = -2 * R; b <= 2 * R; ++b) {
            Int n = EisInt(a, b).norm();
            if (n <= prec) c[n.get_ui()] += 1;
        }
    return c;
}

// Independent oracle for the eta product: expand the truncated product
// with naive convolution.
QSeries delta3_oracle(int prec) {
    std::vector<Int> poly(static_cast<size_t>(prec) + 1, Int(0));
    poly[0] = 1;
    auto mul_factor = [&](int m) {
        // multiply by (1 - q^m)
        for (int k = prec; k >= m; --k) poly[static_cast<size_t>(k)] -= poly[size_t(k - m)];
    };
    for (int n = 1; n <= prec; ++n)
        for (int rep = 0; rep < 6; ++rep) {
            mul_factor(n);
            if (3 * n <= prec) mul_factor(3 * n);
        }
    QSeries s(prec);
    for (int k = 1; k <= prec; ++k) s[k] = poly[size_t(k - 1)];
    return s;
}

}  // namespace

TEST_CASE("delta3 expansion") {
    QSeries d = delta3(8);
    CHECK(d[0] == 0);
    CHECK(d[1] == 1);
    CHECK(d[2] == -6);
    CHECK(d[3] == 9);
    CHECK(d[4] == 4);
    CHECK(d == delta3_oracle(8));
    CHECK(delta3(20) == delta3_oracle(20));
}

TEST_CASE("theta_a2 against direct enumeration") {
    QSeries t = theta_a2(50);
    auto oracle = theta_box_oracle(50);
    for (int k = 0; k <= 50; ++k) CHECK(t[k] == oracle[static_cast<size_t>(k)]);
    CHECK(t[0] == 1);
    CHECK(t[1] == 6);
    CHECK(t[2] == 0);  // 2 is not a norm in Z[w]
    CHECK(t[3] == 6);
}

TEST_CASE("weight-14 basis matches the displayed expansions") {
    auto basis = weight14_basis(3);
    // theta3^14 = 1 + 84q + 3276q^2 + 78708q^3 + O(q^4)
    CHECK(basis[0][0] == 1);
    CHECK(basis[0][1] == 84);
    CHECK(basis[0][2] == 3276);
    CHECK(basis[0][3] == 78708);
    // theta3^8 Delta3 = q + 42q^2 + 729q^3 + O(q^4)
    CHECK(basis[1][0] == 0);
    CHECK(basis[1][1] == 1);
    CHECK(basis[1][2] == 42);
    CHECK(basis[1][3] == 729);
    // theta3^2 Delta3^2 = q^2 + 0q^3 + O(q^4)
    CHECK(basis[2][0] == 0);
    CHECK(basis[2][1] == 0);
    CHECK(basis[2][2] == 1);
    CHECK(basis[2][3] == 0);
}

TEST_CASE("series ring sanity") {
    QSeries t = theta_a2(20);
    QSeries d = delta3(20);
    CHECK((t * d) == (d * t));
    CHECK(((t * d) * t) == (t * (d * t)));
    CHECK((t.pow(3)) == (t * t * t));
}

TEST_CASE("decompose_theta") {
    auto basis = weight14_basis(8);
    // theta3^14 itself decomposes as (0, 0)
    auto [a0, c0] = decompose_theta(basis[0]);
    CHECK(a0 == 0);
    CHECK(c0 == 0);

    // random recombinations round-trip
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> dist(-500, 500);
    for (int i = 0; i < 50; ++i) {
        Int a(dist(rng)), c(dist(rng));
        QSeries theta = basis[0] + basis[1] * a + basis[2] * c;
        auto [ar, cr] = decompose_theta(theta);
        CHECK(ar == a);
        CHECK(cr == c);
    }

    // any series with N_1 = 0 has a = -84 and N_3 = 17472; the q^2
    // coefficient is N_2 = c - 252, so mu2 = 1092 corresponds to c = 1344
    QSeries theta = basis[0] + basis[1] * Int(-84) + basis[2] * Int(1344);
    CHECK(theta[1] == 0);
    CHECK(theta[2] == 1092);
    CHECK(theta[3] == 17472);  // 2^6 * 3 * 7 * 13
    auto [a, c] = decompose_theta(theta);
    CHECK(a == -84);
    CHECK(c == 1344);

    // a series outside the space is rejected
    QSeries bad = theta;
    bad[3] += 1;
    CHECK_THROWS_AS(decompose_theta(bad), std::domain_error);
}
