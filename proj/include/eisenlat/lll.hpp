#pragma once

#include <stdexcept>
#include <vector>

#include "lattice.hpp"

namespace eisenlat {

struct ReducedGram {
    ZGram gram;  // U * G * U^T
    ZMat U;      // unimodular change of basis, rows
};

namespace detail {

inline Int round_nearest(const Rational& x) {
    // round half towards +infinity; any fixed tie rule works
    Int num = x.get_num(), den = x.get_den();
    Int q;
    Int t = 2 * num + den;
    Int d = 2 * den;
    mpz_fdiv_q(q.get_mpz_t(), t.get_mpz_t(), d.get_mpz_t());
    return q;
}

}  // namespace detail

/**
 * Exact LLL reduction (delta = 0.99) of a positive definite integer Gram
 * matrix, working on the Gram matrix alone.  Returns the reduced Gram and
 * the unimodular transformation; determinant is preserved.
 */
inline ReducedGram lll_reduce(const ZGram& input, const Rational& delta = Rational(99, 100)) {
    const int d = input.n();
    ReducedGram out;
    out.gram = input;
    out.U.assign(static_cast<size_t>(d), std::vector<Int>(static_cast<size_t>(d), 0));
    for (int i = 0; i < d; ++i) out.U[static_cast<size_t>(i)][static_cast<size_t>(i)] = 1;
    if (d <= 1) return out;

    ZMat& G = out.gram.g;
    std::vector<std::vector<Rational>> mu(static_cast<size_t>(d), std::vector<Rational>(static_cast<size_t>(d), 0));
    std::vector<Rational> B(static_cast<size_t>(d), 0);

    auto compute_gso_row = [&](int i) {
        for (int j = 0; j < i; ++j) {
            Rational s(G[static_cast<size_t>(i)][static_cast<size_t>(j)]);
            for (int l = 0; l < j; ++l) s -= mu[static_cast<size_t>(i)][static_cast<size_t>(l)] * mu[static_cast<size_t>(j)][static_cast<size_t>(l)] * B[static_cast<size_t>(l)];
            if (B[static_cast<size_t>(j)] == 0) throw std::domain_error("lll_reduce: not positive definite");
            mu[static_cast<size_t>(i)][static_cast<size_t>(j)] = s / B[static_cast<size_t>(j)];
        }
        Rational b(G[static_cast<size_t>(i)][static_cast<size_t>(i)]);
        for (int l = 0; l < i; ++l) b -= mu[static_cast<size_t>(i)][static_cast<size_t>(l)] * mu[static_cast<size_t>(i)][static_cast<size_t>(l)] * B[static_cast<size_t>(l)];
        B[static_cast<size_t>(i)] = b;
        if (b <= 0) throw std::domain_error("lll_reduce: not positive definite");
    };
    for (int i = 0; i < d; ++i) compute_gso_row(i);

    auto row_op = [&](int k, int l, const Int& q) {
        // b_k -= q b_l on U and on the Gram matrix
        if (q == 0) return;
        for (int j = 0; j < d; ++j) out.U[static_cast<size_t>(k)][static_cast<size_t>(j)] -= q * out.U[static_cast<size_t>(l)][static_cast<size_t>(j)];
        for (int j = 0; j < d; ++j) G[static_cast<size_t>(k)][static_cast<size_t>(j)] -= q * G[static_cast<size_t>(l)][static_cast<size_t>(j)];
        for (int j = 0; j < d; ++j) G[static_cast<size_t>(j)][static_cast<size_t>(k)] -= q * G[static_cast<size_t>(j)][static_cast<size_t>(l)];
    };

    auto size_reduce = [&](int k, int l) {
        Rational m = mu[static_cast<size_t>(k)][static_cast<size_t>(l)];
        if (2 * abs(m.get_num()) <= m.get_den()) return;
        Int q = detail::round_nearest(m);
        row_op(k, l, q);
        for (int j = 0; j < l; ++j) mu[static_cast<size_t>(k)][static_cast<size_t>(j)] -= Rational(q) * mu[static_cast<size_t>(l)][static_cast<size_t>(j)];
        mu[static_cast<size_t>(k)][static_cast<size_t>(l)] -= Rational(q);
    };

    int k = 1;
    while (k < d) {
        size_reduce(k, k - 1);
        Rational lhs = B[static_cast<size_t>(k)];
        Rational m = mu[static_cast<size_t>(k)][size_t(k - 1)];
        Rational rhs = (delta - m * m) * B[size_t(k - 1)];
        if (lhs < rhs) {
            std::swap(out.U[static_cast<size_t>(k)], out.U[size_t(k - 1)]);
            std::swap(G[static_cast<size_t>(k)], G[size_t(k - 1)]);
            for (int j = 0; j < d; ++j) std::swap(G[static_cast<size_t>(j)][static_cast<size_t>(k)], G[static_cast<size_t>(j)][size_t(k - 1)]);
            // GSO update after swapping rows k-1 and k
            Rational B_new = B[static_cast<size_t>(k)] + m * m * B[size_t(k - 1)];
            Rational mu_new = m * B[size_t(k - 1)] / B_new;
            B[static_cast<size_t>(k)] = B[size_t(k - 1)] * B[static_cast<size_t>(k)] / B_new;
            B[size_t(k - 1)] = B_new;
            for (int j = 0; j < k - 1; ++j) std::swap(mu[static_cast<size_t>(k)][static_cast<size_t>(j)], mu[size_t(k - 1)][static_cast<size_t>(j)]);
            for (int i = k + 1; i < d; ++i) {
                Rational t = mu[static_cast<size_t>(i)][static_cast<size_t>(k)];
                mu[static_cast<size_t>(i)][static_cast<size_t>(k)] = mu[static_cast<size_t>(i)][size_t(k - 1)] - m * t;
                mu[static_cast<size_t>(i)][size_t(k - 1)] = t + mu_new * mu[static_cast<size_t>(i)][static_cast<size_t>(k)];
            }
            mu[static_cast<size_t>(k)][size_t(k - 1)] = mu_new;
            k = std::max(k - 1, 1);
        } else {
            for (int l = k - 2; l >= 0; --l) size_reduce(k, l);
            ++k;
        }
    }
    return out;
}

/// Spec-facing wrapper: reduce the trace Gram of a lattice.
inline ReducedGram reduce_trace_basis(const ZGram& Z) { return lll_reduce(Z); }

}  // namespace eisenlat
