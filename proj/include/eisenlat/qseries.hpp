#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "eisenstein.hpp"

namespace eisenlat {

/**
 * QSeries: a truncated integer power series c0 + c1 q + ... + c_prec q^prec.
 * Ring operations truncate at the smaller precision of the operands.
 */
struct QSeries {
    std::vector<Int> c;

    QSeries() = default;
    explicit QSeries(int prec) : c(static_cast<size_t>(prec) + 1, Int(0)) {
        if (prec < 0) throw std::domain_error("QSeries: negative precision");
    }

    int prec() const { return static_cast<int>(c.size()) - 1; }
    const Int& operator[](int k) const { return c.at(static_cast<size_t>(k)); }
    Int& operator[](int k) { return c.at(static_cast<size_t>(k)); }

    static QSeries one(int prec) {
        QSeries s(prec);
        s[0] = 1;
        return s;
    }

    QSeries truncate(int p) const {
        QSeries r(std::min(p, prec()));
        for (int k = 0; k <= r.prec(); ++k) r[k] = c[static_cast<size_t>(k)];
        return r;
    }

    QSeries operator+(const QSeries& o) const {
        QSeries r(std::min(prec(), o.prec()));
        for (int k = 0; k <= r.prec(); ++k) r[k] = (*this)[k] + o[k];
        return r;
    }
    QSeries operator-(const QSeries& o) const {
        QSeries r(std::min(prec(), o.prec()));
        for (int k = 0; k <= r.prec(); ++k) r[k] = (*this)[k] - o[k];
        return r;
    }
    QSeries operator*(const QSeries& o) const {
        QSeries r(std::min(prec(), o.prec()));
        for (int i = 0; i <= r.prec(); ++i) {
            if ((*this)[i] == 0) continue;
            for (int j = 0; i + j <= r.prec(); ++j) {
                if (o[j] == 0) continue;
                r[i + j] += (*this)[i] * o[j];
            }
        }
        return r;
    }
    QSeries operator*(const Int& k) const {
        QSeries r = *this;
        for (auto& x : r.c) x *= k;
        return r;
    }

    QSeries pow(int e) const {
        QSeries r = one(prec());
        QSeries base = *this;
        while (e > 0) {
            if (e & 1) r = r * base;
            base = base * base;
            e >>= 1;
        }
        return r;
    }

    bool operator==(const QSeries& o) const { return c == o.c; }

    std::string str() const {
        std::string s;
        for (int k = 0; k <= prec(); ++k) {
            if (!s.empty()) s += " ";
            s += c[static_cast<size_t>(k)].get_str();
        }
        return s;
    }
};

/// q * prod_{n>=1} (1-q^n)^6 (1-q^{3n})^6, the weight-6 cusp form at level 3.
inline QSeries delta3(int prec) {
    if (prec < 1) throw std::domain_error("delta3: precision must be >= 1");
    QSeries r = QSeries::one(prec);
    for (int n = 1; n <= prec; ++n) {
        for (int mult : {1, 3}) {
            int m = mult * n;
            if (m > prec) break;
            QSeries f(prec);
            f[0] = 1;
            f[m] = -1;
            r = r * f.pow(6);
        }
    }
    // shift by one power of q
    QSeries s(prec);
    for (int k = 1; k <= prec; ++k) s[k] = r[k - 1];
    return s;
}

/**
 * Theta series of Z[w] (the A2 root lattice of weight 1):
 * c_0 = 1, c_n = 6 * sum_{d | n} chi_{-3}(d) where chi_{-3}(d) is
 * +1, -1, 0 for d = 1, 2, 0 mod 3.
 */
inline QSeries theta_a2(int prec) {
    if (prec < 1) throw std::domain_error("theta_a2: precision must be >= 1");
    QSeries r(prec);
    r[0] = 1;
    for (int n = 1; n <= prec; ++n) {
        long s = 0;
        for (int d = 1; d <= n; ++d) {
            if (n % d) continue;
            int m = d % 3;
            if (m == 1) ++s;
            else if (m == 2) --s;
        }
        r[n] = 6 * s;
    }
    return r;
}

/**
 * The basis (theta3^14, theta3^8 * Delta3, theta3^2 * Delta3^2) of the
 * weight-14 space containing the theta series of unimodular rank-14
 * lattices.
 */
inline std::array<QSeries, 3> weight14_basis(int prec) {
    if (prec < 3) throw std::domain_error("weight14_basis: precision must be >= 3");
    QSeries t = theta_a2(prec);
    QSeries d = delta3(prec);
    return {t.pow(14), t.pow(8) * d, t.pow(2) * d * d};
}

/**
 * Solve theta = theta3^14 + a*theta3^8*Delta3 + c*theta3^2*Delta3^2 from
 * the q^1 and q^2 coefficients, and check the q^3 coefficient vanishes
 * against the residual.  Throws if theta is not in the space.
 */
inline std::pair<Int, Int> decompose_theta(const QSeries& theta) {
    if (theta.prec() < 3) throw std::domain_error("decompose_theta: need precision >= 3");
    if (theta[0] != 1) throw std::domain_error("decompose_theta: constant term must be 1");
    auto basis = weight14_basis(theta.prec());
    const QSeries& b0 = basis[0];
    const QSeries& b1 = basis[1];
    const QSeries& b2 = basis[2];
    // b1 = q + ..., b2 = q^2 + ..., so the system is triangular.
    Int a = theta[1] - b0[1];
    Int c = theta[2] - b0[2] - a * b1[2];
    for (int k = 3; k <= theta.prec(); ++k) {
        if (theta[k] != b0[k] + a * b1[k] + c * b2[k])
            throw std::domain_error("decompose_theta: series not in the weight-14 space (q^" +
                                    std::to_string(k) + ")");
    }
    return {a, c};
}

}  // namespace eisenlat
