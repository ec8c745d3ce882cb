#pragma once

#include <cctype>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "lattice.hpp"

namespace eisenlat {

// ---------------------------------------------------------------------------
// standard lattices

/// I_n: orthonormal basis over Z[w].
inline HermitianLattice lat_I(int n) {
    if (n < 1) throw std::domain_error("lat_I: rank must be positive");
    AmbientSpace a = AmbientSpace::orthonormal(n);
    EisRatMat rows(static_cast<size_t>(n), std::vector<EisRat>(static_cast<size_t>(n)));
    for (int i = 0; i < n; ++i) rows[static_cast<size_t>(i)][static_cast<size_t>(i)] = EisRat(1);
    return HermitianLattice(a, rows);
}

/// A_n inside I_{n+1}: coordinate sums equal to zero.
inline HermitianLattice lat_A(int n) {
    if (n < 1) throw std::domain_error("lat_A: rank must be positive");
    AmbientSpace a = AmbientSpace::orthonormal(n + 1);
    EisRatMat rows(static_cast<size_t>(n), std::vector<EisRat>(static_cast<size_t>(n) + 1));
    for (int i = 0; i < n; ++i) {
        rows[static_cast<size_t>(i)][static_cast<size_t>(i)] = EisRat(1);
        rows[static_cast<size_t>(i)][static_cast<size_t>(i) + 1] = EisRat(-1);
    }
    return HermitianLattice(a, rows);
}

/// D_n(alpha) inside I_n: coordinate sums divisible by alpha.
inline HermitianLattice lat_D(int n, const EisInt& alpha) {
    if (n < 2) throw std::domain_error("lat_D: rank must be >= 2");
    AmbientSpace a = AmbientSpace::orthonormal(n);
    EisRatMat rows;
    for (int i = 0; i + 1 < n; ++i) {
        std::vector<EisRat> r(static_cast<size_t>(n));
        r[static_cast<size_t>(i)] = EisRat(1);
        r[static_cast<size_t>(i) + 1] = EisRat(-1);
        rows.push_back(std::move(r));
    }
    std::vector<EisRat> last(static_cast<size_t>(n));
    last[static_cast<size_t>(n) - 1] = EisRat(alpha);
    rows.push_back(std::move(last));
    return HermitianLattice(a, rows);
}

inline HermitianLattice lat_D2(int n) { return lat_D(n, EisInt(2, 0)); }
inline HermitianLattice lat_D3(int n) { return lat_D(n, EisInt::sqrt_m3()); }

/**
 * E6/E7/E8 as Eisenstein lattices: the real root lattices (Bourbaki
 * simple roots inside Q^8) tensored with Z[w].  Discriminants 3, 2, 1 and
 * root counts 216, 378, 720.
 */
inline HermitianLattice lat_E(int k) {
    if (k < 6 || k > 8) throw std::domain_error("lat_E: k must be 6, 7 or 8");
    AmbientSpace a = AmbientSpace::orthonormal(8);
    EisRatMat rows;
    {
        // alpha_1 = (1 - e2 - ... - e7 + e8)/2
        std::vector<EisRat> r(8, EisRat(EisInt(-1, 0), 2));
        r[0] = EisRat(EisInt(1, 0), 2);
        r[7] = EisRat(EisInt(1, 0), 2);
        rows.push_back(std::move(r));
    }
    {
        std::vector<EisRat> r(8);
        r[0] = EisRat(1);
        r[1] = EisRat(1);
        rows.push_back(std::move(r));
    }
    for (int i = 1; i < k - 1; ++i) {
        // alpha_{i+2} = e_{i+1} - e_i (1-indexed coordinates)
        std::vector<EisRat> r(8);
        r[static_cast<size_t>(i)] = EisRat(1);
        r[static_cast<size_t>(i) - 1] = EisRat(-1);
        rows.push_back(std::move(r));
    }
    return HermitianLattice(a, rows);
}

/// U5 = < A5, (1/sqrt(-3)) (1, w, w^2, 1, w, w^2) >, discriminant 2.
inline HermitianLattice lat_U5() {
    HermitianLattice A5 = lat_A(5);
    EisRatMat rows = A5.generators();
    EisRat inv_s3 = EisRat(1) / EisRat(EisInt::sqrt_m3());
    EisInt w = EisInt::omega();
    EisInt w2 = w * w;
    std::vector<EisInt> pat = {EisInt(1, 0), w, w2, EisInt(1, 0), w, w2};
    std::vector<EisRat> g(6);
    for (int i = 0; i < 6; ++i) g[static_cast<size_t>(i)] = pat[static_cast<size_t>(i)] * inv_s3;
    rows.push_back(std::move(g));
    return HermitianLattice(A5.ambient(), rows);
}

/// U6 = < D6(sqrt(-3)), (1/sqrt(-3)) (1, ..., 1) >, unimodular.
inline HermitianLattice lat_U6() {
    HermitianLattice D6 = lat_D3(6);
    EisRatMat rows = D6.generators();
    EisRat inv_s3 = EisRat(1) / EisRat(EisInt::sqrt_m3());
    rows.push_back(std::vector<EisRat>(6, inv_s3));
    return HermitianLattice(D6.ambient(), rows);
}

/**
 * Lattice by name: I_n, A_n, D_n(2), D_n(sqrt-3), E6, E7, E8, U5, U6.
 * Underscores are optional ("D8(2)" = "D_8(2)").
 */
inline HermitianLattice std_lattice(const std::string& name_in) {
    std::string s;
    for (char c : name_in)
        if (c != '_' && !std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw std::invalid_argument("std_lattice: empty name");
    char kind = s[0];
    std::string rest = s.substr(1);
    auto parse_n = [&](const std::string& t) {
        if (t.empty()) throw std::invalid_argument("std_lattice: bad name '" + name_in + "'");
        return std::stoi(t);
    };
    switch (kind) {
        case 'I': return lat_I(parse_n(rest));
        case 'A': return lat_A(parse_n(rest));
        case 'E': return lat_E(parse_n(rest));
        case 'U': {
            int n = parse_n(rest);
            if (n == 5) return lat_U5();
            if (n == 6) return lat_U6();
            throw std::invalid_argument("std_lattice: unknown U lattice '" + name_in + "'");
        }
        case 'D': {
            auto open = rest.find('(');
            if (open == std::string::npos)
                throw std::invalid_argument("std_lattice: D needs a parameter: '" + name_in + "'");
            int n = parse_n(rest.substr(0, open));
            std::string par = rest.substr(open + 1);
            if (!par.empty() && par.back() == ')') par.pop_back();
            if (par == "2") return lat_D2(n);
            if (par == "sqrt-3" || par == "s3" || par == "v-3") return lat_D3(n);
            throw std::invalid_argument("std_lattice: unknown D parameter '" + par + "'");
        }
        default:
            throw std::invalid_argument("std_lattice: unknown name '" + name_in + "'");
    }
}

// ---------------------------------------------------------------------------
// F4 codes and the construction from self-dual codes

/**
 * F4Code: a linear code over F4 given by generator rows.  Self-duality is
 * with respect to the Hermitian inner product sum_i x_i y_i^2.
 */
struct F4Code {
    int length = 0;
    std::vector<std::vector<F4Elem>> generators;

    int dimension() const {
        // F4 Gaussian elimination
        auto rows = generators;
        int rank = 0;
        for (int col = 0; col < length && rank < static_cast<int>(rows.size()); ++col) {
            int piv = -1;
            for (int i = rank; i < static_cast<int>(rows.size()); ++i)
                if (!rows[static_cast<size_t>(i)][static_cast<size_t>(col)].is_zero()) { piv = i; break; }
            if (piv < 0) continue;
            std::swap(rows[static_cast<size_t>(rank)], rows[static_cast<size_t>(piv)]);
            F4Elem inv = rows[static_cast<size_t>(rank)][static_cast<size_t>(col)].inv();
            for (auto& x : rows[static_cast<size_t>(rank)]) x = x * inv;
            for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
                if (i == rank) continue;
                F4Elem f = rows[static_cast<size_t>(i)][static_cast<size_t>(col)];
                if (f.is_zero()) continue;
                for (int j = 0; j < length; ++j)
                    rows[static_cast<size_t>(i)][static_cast<size_t>(j)] = rows[static_cast<size_t>(i)][static_cast<size_t>(j)] + f * rows[static_cast<size_t>(rank)][static_cast<size_t>(j)];
            }
            ++rank;
        }
        return rank;
    }

    /// Hermitian inner product sum x_i * y_i^2.
    static F4Elem herm(const std::vector<F4Elem>& x, const std::vector<F4Elem>& y) {
        F4Elem s;
        for (size_t i = 0; i < x.size(); ++i) s = s + x[i] * y[i].frob();
        return s;
    }

    bool hermitian_self_dual() const {
        if (length % 2 != 0 || dimension() != length / 2) return false;
        for (const auto& g : generators)
            for (const auto& h : generators)
                if (!herm(g, h).is_zero()) return false;
        return true;
    }
};

/**
 * Construction A: the preimage of a Hermitian self-dual code under
 * Z[w]^m -> F4^m, with the form scaled by 1/2.  Unimodular of rank m.
 */
inline HermitianLattice from_code(const F4Code& C) {
    if (!C.hermitian_self_dual())
        throw std::invalid_argument("from_code: code is not Hermitian self-dual");
    const int m = C.length;
    AmbientSpace a = AmbientSpace::orthonormal(m);
    a.form_scale = Rational(1, 2);
    EisRatMat rows;
    for (int i = 0; i < m; ++i) {
        std::vector<EisRat> r(static_cast<size_t>(m));
        r[static_cast<size_t>(i)] = EisRat(EisInt(2, 0));
        rows.push_back(std::move(r));
    }
    for (const auto& g : C.generators) {
        std::vector<EisRat> r(static_cast<size_t>(m));
        for (int i = 0; i < m; ++i) r[static_cast<size_t>(i)] = EisRat(f4_lift(g[static_cast<size_t>(i)]));
        rows.push_back(std::move(r));
    }
    return HermitianLattice(a, rows);
}

// ---------------------------------------------------------------------------
// glue recipes

/**
 * GlueRecipe: standard components placed in consecutive coordinate
 * blocks, optional rank-1 lines, and glue rows spanning the glue group.
 * Glue rows are full-width ambient coordinate rows (component blocks
 * first, then one coordinate per line).
 */
struct GlueRecipe {
    std::vector<std::string> components;
    std::vector<Rational> lines;
    EisRatMat rows;
};

struct GlueError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline HermitianLattice glue(const GlueRecipe& recipe) {
    AmbientSpace ambient;
    EisRatMat rows;
    int offset = 0;
    for (const auto& name : recipe.components) {
        HermitianLattice comp = std_lattice(name);
        if (comp.ambient().form_scale != 1)
            throw GlueError("glue: component with nonunit form scale: " + name);
        for (const auto& b : comp.ambient().blocks) ambient.blocks.push_back(b);
        for (const auto& row : comp.generators()) {
            std::vector<EisRat> r;
            r.resize(static_cast<size_t>(offset));
            r.insert(r.end(), row.begin(), row.end());
            rows.push_back(std::move(r));
        }
        offset += comp.ambient_dim();
    }
    for (const auto& nrm : recipe.lines) ambient.add_line(nrm);
    const int dim = ambient.dim();
    for (auto& r : rows) r.resize(static_cast<size_t>(dim));
    for (const auto& g : recipe.rows) {
        if (static_cast<int>(g.size()) != dim)
            throw GlueError("glue: glue row has wrong length");
        rows.push_back(g);
    }
    HermitianLattice L(ambient, rows);
    // integrality check with the offending pair reported
    HermGram G = L.gram();
    for (int i = 0; i < G.n(); ++i)
        for (int j = 0; j <= i; ++j)
            if (!G.at(i, j).is_integral())
                throw GlueError("glue: non-integral product at basis pair (" +
                                std::to_string(i) + ", " + std::to_string(j) + ") = " +
                                G.at(i, j).str());
    return L;
}

// ---------------------------------------------------------------------------
// exterior square

/**
 * LDL presentation of a positive definite Hermitian Gram matrix:
 * a lattice in a line-block ambient whose Gram is exactly G.
 */
inline HermitianLattice lattice_from_gram(const HermGram& G) {
    const int n = G.n();
    if (n == 0) throw std::domain_error("lattice_from_gram: empty Gram");
    EisRatMat Lm(static_cast<size_t>(n), std::vector<EisRat>(static_cast<size_t>(n)));
    std::vector<Rational> D(static_cast<size_t>(n), Rational(0));
    for (int j = 0; j < n; ++j) {
        EisRat djj = G.at(j, j);
        for (int k = 0; k < j; ++k) {
            EisRat t = Lm[static_cast<size_t>(j)][static_cast<size_t>(k)] * Lm[static_cast<size_t>(j)][static_cast<size_t>(k)].conj();
            djj -= Rational(D[static_cast<size_t>(k)]) * t;
        }
        if (djj.im() != 0) throw std::logic_error("lattice_from_gram: non-real pivot");
        Rational d = djj.rat();
        if (d <= 0) throw std::domain_error("lattice_from_gram: not positive definite");
        D[static_cast<size_t>(j)] = d;
        Lm[static_cast<size_t>(j)][static_cast<size_t>(j)] = EisRat(1);
        for (int i = j + 1; i < n; ++i) {
            EisRat t = G.at(i, j);
            for (int k = 0; k < j; ++k)
                t -= D[static_cast<size_t>(k)] * (Lm[static_cast<size_t>(i)][static_cast<size_t>(k)] * Lm[static_cast<size_t>(j)][static_cast<size_t>(k)].conj());
            Lm[static_cast<size_t>(i)][static_cast<size_t>(j)] = t / EisRat(EisInt(d.get_num()), d.get_den());
        }
    }
    AmbientSpace a;
    for (const auto& d : D) a.add_line(d);
    return HermitianLattice(a, Lm);
}

/**
 * The exterior square of a rank-m lattice on the basis {b_i ^ b_j, i<j}
 * with (x^y, x'^y') = (x,x')(y,y') - (x,y')(y,x').
 */
inline HermitianLattice exterior_square(const HermitianLattice& L) {
    const int m = L.rank();
    if (m < 2) throw std::domain_error("exterior_square: rank must be >= 2");
    HermGram G = L.gram();
    std::vector<std::pair<int, int>> idx;
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) idx.push_back({i, j});
    const int n = static_cast<int>(idx.size());
    HermGram W;
    W.g.assign(static_cast<size_t>(n), std::vector<EisRat>(static_cast<size_t>(n)));
    for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q) {
            auto [i, j] = idx[static_cast<size_t>(p)];
            auto [k, l] = idx[static_cast<size_t>(q)];
            W.g[static_cast<size_t>(p)][static_cast<size_t>(q)] =
                G.at(i, k) * G.at(j, l) - G.at(i, l) * G.at(j, k);
        }
    return lattice_from_gram(W);
}

// ---------------------------------------------------------------------------
// scaled A_{n-1} plus code, for n = 2 r conj(r)

/**
 * For n = 2 N(r) and a self-dual code C of length n, the lattice
 * (1/sqrt 2) [ (preimage of C intersected with A_{n-1}) + (1/r)(1-n, 1, ..., 1) ]
 * is unimodular Hermitian of rank n-1.
 */
inline HermitianLattice scaled_an_code(const EisInt& r, const F4Code& C) {
    Int nr = r.norm();
    if (!nr.fits_sint_p()) throw std::domain_error("scaled_an_code: r too large");
    const int n = 2 * static_cast<int>(nr.get_si());
    if (C.length != n)
        throw std::invalid_argument("scaled_an_code: code length must be 2*N(r)");
    if (!C.hermitian_self_dual())
        throw std::invalid_argument("scaled_an_code: code is not Hermitian self-dual");

    // preimage of C in I_n
    EisMat pre;
    for (int i = 0; i < n; ++i) {
        std::vector<EisInt> row(static_cast<size_t>(n));
        row[static_cast<size_t>(i)] = EisInt(2, 0);
        pre.push_back(std::move(row));
    }
    for (const auto& g : C.generators) {
        std::vector<EisInt> row(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) row[static_cast<size_t>(i)] = f4_lift(g[static_cast<size_t>(i)]);
        pre.push_back(std::move(row));
    }
    hnf_eis(pre);

    // intersect with the zero-coordinate-sum hyperplane: row-reduce the
    // column of coordinate sums against an identity tail
    EisMat work;
    for (const auto& row : pre) {
        std::vector<EisInt> w;
        EisInt s(0, 0);
        for (const auto& x : row) s += x;
        w.push_back(s);
        w.insert(w.end(), row.begin(), row.end());
        work.push_back(std::move(w));
    }
    hnf_eis(work);
    EisRatMat rows;
    for (const auto& w : work) {
        if (!w[0].is_zero()) continue;  // nonzero coordinate sum
        std::vector<EisRat> row;
        for (size_t j = 1; j < w.size(); ++j) row.push_back(EisRat(w[j]));
        rows.push_back(std::move(row));
    }

    // glue vector (1/r)(1-n, 1, ..., 1)
    EisRat inv_r = EisRat(1) / EisRat(r);
    std::vector<EisRat> gluev(static_cast<size_t>(n), inv_r);
    gluev[0] = EisInt(Int(1 - n), Int(0)) * inv_r;
    rows.push_back(std::move(gluev));

    AmbientSpace a = AmbientSpace::orthonormal(n);
    a.form_scale = Rational(1, 2);
    return HermitianLattice(a, rows);
}

}  // namespace eisenlat
