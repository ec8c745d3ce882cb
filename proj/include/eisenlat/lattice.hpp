#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "eisenstein.hpp"

namespace eisenlat {

using EisMat = std::vector<std::vector<EisInt>>;
using EisRatMat = std::vector<std::vector<EisRat>>;
using ZMat = std::vector<std::vector<Int>>;

// ---------------------------------------------------------------------------
// Hermite normal form over Z[w]

/**
 * In-place Hermite triangularization of a row module over Z[w].
 * Pivots are canonical associates, entries above a pivot are reduced to
 * the canonical Euclidean residue, zero rows are dropped.  The result is
 * the unique canonical basis of the row span, so module equality is
 * string equality of the reduced rows.
 */
inline void hnf_eis(EisMat& rows) {
    const size_t m = rows.size();
    if (m == 0) return;
    const size_t d = rows[0].size();
    size_t r = 0;
    for (size_t col = 0; col < d && r < m; ++col) {
        // gather the column gcd at row r by Euclidean row reduction
        while (true) {
            size_t best = m;
            for (size_t i = r; i < m; ++i) {
                if (rows[i][col].is_zero()) continue;
                if (best == m || rows[i][col].norm() < rows[best][col].norm()) best = i;
            }
            if (best == m) break;  // column is zero from r down
            std::swap(rows[r], rows[best]);
            bool clean = true;
            for (size_t i = r + 1; i < m; ++i) {
                if (rows[i][col].is_zero()) continue;
                EisInt q = eis_divmod(rows[i][col], rows[r][col]).first;
                if (!q.is_zero())
                    for (size_t j = col; j < d; ++j) rows[i][j] -= q * rows[r][j];
                if (!rows[i][col].is_zero()) clean = false;
            }
            if (clean) break;
        }
        if (rows[r][col].is_zero()) continue;
        // normalize the pivot to its canonical associate
        EisInt piv = canonical_associate(rows[r][col]);
        EisInt u = eis_exact_div(piv, rows[r][col]);
        if (!u.is_one())
            for (size_t j = col; j < d; ++j) rows[r][j] = u * rows[r][j];
        // reduce the entries above the pivot
        for (size_t i = 0; i < r; ++i) {
            if (rows[i][col].is_zero()) continue;
            EisInt q = eis_divmod(rows[i][col], rows[r][col]).first;
            if (!q.is_zero())
                for (size_t j = col; j < d; ++j) rows[i][j] -= q * rows[r][j];
        }
        ++r;
    }
    rows.resize(r);
}

/// Hermite form of rational rows: scale to Z[w], triangularize, scale back.
inline void hnf_eisrat(EisRatMat& rows) {
    if (rows.empty()) return;
    Int scale = 1;
    for (const auto& row : rows)
        for (const auto& x : row) scale = lcm(scale, x.den);
    EisMat m(rows.size());
    for (size_t i = 0; i < rows.size(); ++i)
        for (const auto& x : rows[i]) {
            Int f = scale / x.den;
            m[i].push_back(EisInt(x.num.a * f, x.num.b * f));
        }
    hnf_eis(m);
    rows.assign(m.size(), {});
    for (size_t i = 0; i < m.size(); ++i)
        for (const auto& z : m[i]) rows[i].push_back(EisRat(z, scale));
}

// ---------------------------------------------------------------------------
// ambient spaces

/**
 * AmbientSpace: an orthogonal sum of orthonormal coordinate blocks and
 * rank-1 "lines" of prescribed norm, with a global scale on the form.
 * (x, y) = form_scale * sum_i x_i * conj(y_i) * weight_i, where the
 * weight is 1 on orthonormal coordinates and the line norm on a line.
 */
struct AmbientSpace {
    struct Block {
        bool is_line = false;
        int dim = 0;        // orthonormal block dimension; 1 for a line
        Rational norm = 1;  // line norm (x, x)
    };

    std::vector<Block> blocks;
    Rational form_scale = Rational(1);

    static AmbientSpace orthonormal(int n) {
        AmbientSpace a;
        a.blocks.push_back({false, n, Rational(1)});
        return a;
    }

    AmbientSpace& add_orthonormal(int n) {
        blocks.push_back({false, n, Rational(1)});
        return *this;
    }
    AmbientSpace& add_line(const Rational& norm) {
        if (norm <= 0) throw std::domain_error("AmbientSpace: line norm must be positive");
        blocks.push_back({true, 1, norm});
        return *this;
    }

    int dim() const {
        int d = 0;
        for (const auto& b : blocks) d += b.dim;
        return d;
    }

    std::vector<Rational> weights() const {
        std::vector<Rational> w;
        for (const auto& b : blocks)
            for (int i = 0; i < b.dim; ++i) w.push_back(b.is_line ? b.norm : Rational(1));
        return w;
    }

    bool operator==(const AmbientSpace& o) const {
        if (form_scale != o.form_scale || blocks.size() != o.blocks.size()) return false;
        for (size_t i = 0; i < blocks.size(); ++i)
            if (blocks[i].is_line != o.blocks[i].is_line || blocks[i].dim != o.blocks[i].dim ||
                blocks[i].norm != o.blocks[i].norm)
                return false;
        return true;
    }
};

/// Concatenation of two ambients (form scales must agree).
inline AmbientSpace ambient_concat(const AmbientSpace& a, const AmbientSpace& b) {
    if (a.form_scale != b.form_scale)
        throw std::invalid_argument("ambient_concat: mismatched form scales");
    AmbientSpace r = a;
    r.blocks.insert(r.blocks.end(), b.blocks.begin(), b.blocks.end());
    return r;
}

// ---------------------------------------------------------------------------
// Hermitian Gram matrices

/**
 * HermGram: an n x n conjugate-symmetric matrix over Q(w) with real
 * positive diagonal, the Gram matrix of a lattice basis.
 */
struct HermGram {
    EisRatMat g;

    int n() const { return static_cast<int>(g.size()); }
    const EisRat& at(int i, int j) const { return g[static_cast<size_t>(i)][static_cast<size_t>(j)]; }

    bool conjugate_symmetric() const {
        for (int i = 0; i < n(); ++i)
            for (int j = 0; j < n(); ++j)
                if (at(i, j) != at(j, i).conj()) return false;
        return true;
    }

    bool integral() const {
        for (const auto& row : g)
            for (const auto& x : row)
                if (!x.is_integral()) return false;
        return true;
    }

    EisMat to_eis() const {
        EisMat m(g.size());
        for (size_t i = 0; i < g.size(); ++i)
            for (const auto& x : g[i]) m[i].push_back(x.to_eis());
        return m;
    }

    /// Conjugate every entry (the Gram of the conjugate lattice).
    HermGram conj() const {
        HermGram r = *this;
        for (auto& row : r.g)
            for (auto& x : row) x = x.conj();
        return r;
    }
};

/// Determinant of a square EisInt matrix by fraction-free (Bareiss) elimination.
inline EisInt det_bareiss(EisMat m) {
    const size_t n = m.size();
    if (n == 0) return EisInt(1, 0);
    EisInt prev(1, 0);
    int sign = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k].is_zero()) {
            size_t piv = n;
            for (size_t i = k + 1; i < n; ++i)
                if (!m[i][k].is_zero()) { piv = i; break; }
            if (piv == n) return EisInt(0, 0);
            std::swap(m[k], m[piv]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i) {
            for (size_t j = k + 1; j < n; ++j) {
                EisInt t = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                m[i][j] = eis_exact_div(t, prev);
            }
            m[i][k] = EisInt(0, 0);
        }
        prev = m[k][k];
    }
    EisInt d = m[n - 1][n - 1];
    return sign < 0 ? -d : d;
}

/// Exact determinant of a Hermitian Gram matrix; checks it is real.
inline Rational herm_det(const HermGram& G) {
    const int n = G.n();
    if (n == 0) return Rational(1);
    Int scale = 1;
    for (const auto& row : G.g)
        for (const auto& x : row) scale = lcm(scale, x.den);
    EisMat m(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const EisRat& x = G.at(i, j);
            Int f = scale / x.den;
            m[static_cast<size_t>(i)].push_back(EisInt(x.num.a * f, x.num.b * f));
        }
    EisInt d = det_bareiss(std::move(m));
    if (d.b != 0) throw std::logic_error("herm_det: determinant has nonzero imaginary part");
    Rational r(d.a);
    Rational den(scale);
    for (int i = 1; i < n; ++i) den *= Rational(scale);
    r /= den;
    r.canonicalize();
    return r;
}

/// Inverse of a Hermitian Gram matrix by Gauss-Jordan elimination over Q(w).
inline EisRatMat herm_inverse(const HermGram& G) {
    const int n = G.n();
    EisRatMat a(G.g);
    EisRatMat inv(static_cast<size_t>(n), std::vector<EisRat>(static_cast<size_t>(n)));
    for (int i = 0; i < n; ++i) inv[static_cast<size_t>(i)][static_cast<size_t>(i)] = EisRat(1);
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int i = col; i < n; ++i)
            if (!a[static_cast<size_t>(i)][static_cast<size_t>(col)].is_zero()) { piv = i; break; }
        if (piv < 0) throw std::domain_error("herm_inverse: singular matrix");
        std::swap(a[static_cast<size_t>(col)], a[static_cast<size_t>(piv)]);
        std::swap(inv[static_cast<size_t>(col)], inv[static_cast<size_t>(piv)]);
        EisRat p = a[static_cast<size_t>(col)][static_cast<size_t>(col)];
        for (int j = 0; j < n; ++j) {
            a[static_cast<size_t>(col)][static_cast<size_t>(j)] =
                a[static_cast<size_t>(col)][static_cast<size_t>(j)] / p;
            inv[static_cast<size_t>(col)][static_cast<size_t>(j)] =
                inv[static_cast<size_t>(col)][static_cast<size_t>(j)] / p;
        }
        for (int i = 0; i < n; ++i) {
            if (i == col) continue;
            EisRat f = a[static_cast<size_t>(i)][static_cast<size_t>(col)];
            if (f.is_zero()) continue;
            for (int j = 0; j < n; ++j) {
                a[static_cast<size_t>(i)][static_cast<size_t>(j)] -=
                    f * a[static_cast<size_t>(col)][static_cast<size_t>(j)];
                inv[static_cast<size_t>(i)][static_cast<size_t>(j)] -=
                    f * inv[static_cast<size_t>(col)][static_cast<size_t>(j)];
            }
        }
    }
    return inv;
}

// ---------------------------------------------------------------------------
// ZGram: the 2n x 2n trace form

/**
 * ZGram: the trace form Tr h(x, y) on the Z-basis {b1, w b1, ..., bn, w bn}.
 * Even diagonal, determinant 3^n d(L)^2 for an integral lattice.
 */
struct ZGram {
    ZMat g;

    int n() const { return static_cast<int>(g.size()); }
    const Int& at(int i, int j) const { return g[static_cast<size_t>(i)][static_cast<size_t>(j)]; }

    Int det() const {
        // integer Bareiss
        ZMat m = g;
        const size_t d = m.size();
        if (d == 0) return 1;
        Int prev = 1;
        int sign = 1;
        for (size_t k = 0; k + 1 < d; ++k) {
            if (m[k][k] == 0) {
                size_t piv = d;
                for (size_t i = k + 1; i < d; ++i)
                    if (m[i][k] != 0) { piv = i; break; }
                if (piv == d) return 0;
                std::swap(m[k], m[piv]);
                sign = -sign;
            }
            for (size_t i = k + 1; i < d; ++i) {
                for (size_t j = k + 1; j < d; ++j) {
                    Int t = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                    mpz_divexact(m[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                }
                m[i][k] = 0;
            }
            prev = m[k][k];
        }
        return sign < 0 ? -m[d - 1][d - 1] : m[d - 1][d - 1];
    }
};

// ---------------------------------------------------------------------------
// HermitianLattice

/**
 * HermitianLattice: a finitely generated Z[w]-module given by generator
 * rows in an ambient space.  Construction puts the generators into the
 * canonical Hermite form, so two values are equal as modules iff their
 * generator matrices are equal entrywise.
 */
class HermitianLattice {
public:
    HermitianLattice() = default;

    HermitianLattice(AmbientSpace ambient, EisRatMat generators)
        : ambient_(std::move(ambient)), gens_(std::move(generators)) {
        for (const auto& row : gens_)
            if (static_cast<int>(row.size()) != ambient_.dim())
                throw std::invalid_argument("HermitianLattice: generator length != ambient dim");
        hnf_eisrat(gens_);
    }

    int rank() const { return static_cast<int>(gens_.size()); }
    int ambient_dim() const { return ambient_.dim(); }
    const AmbientSpace& ambient() const { return ambient_; }
    const EisRatMat& generators() const { return gens_; }

    bool operator==(const HermitianLattice& o) const {
        return ambient_ == o.ambient_ && gens_ == o.gens_;
    }
    bool operator!=(const HermitianLattice& o) const { return !(*this == o); }

    /// Hermitian product of two ambient coordinate rows (linear in the
    /// first argument, conjugate-linear in the second).
    EisRat inner(const std::vector<EisRat>& x, const std::vector<EisRat>& y) const {
        if (x.size() != y.size() || static_cast<int>(x.size()) != ambient_.dim())
            throw std::invalid_argument("inner: dimension mismatch");
        auto w = ambient_.weights();
        EisRat s;
        for (size_t i = 0; i < x.size(); ++i) {
            if (x[i].is_zero() || y[i].is_zero()) continue;
            s += w[i] * (x[i] * y[i].conj());
        }
        return ambient_.form_scale * s;
    }

    HermGram gram() const {
        if (rank() == 0) return HermGram{};
        HermGram G;
        G.g.assign(gens_.size(), std::vector<EisRat>(gens_.size()));
        for (size_t i = 0; i < gens_.size(); ++i)
            for (size_t j = i; j < gens_.size(); ++j) {
                G.g[i][j] = inner(gens_[i], gens_[j]);
                if (j != i) G.g[j][i] = G.g[i][j].conj();
            }
        return G;
    }

    /// d(L) = det of the Gram matrix, an exact positive rational.
    Rational discriminant() const {
        Rational d = herm_det(gram());
        if (d <= 0) throw std::logic_error("discriminant: not positive definite");
        return d;
    }

    bool is_integral() const { return gram().integral(); }
    bool is_unimodular() const {
        HermGram G = gram();
        return G.integral() && herm_det(G) == 1;
    }

    /// Ambient coordinates of a vector given by Z[w] coefficients in the basis.
    std::vector<EisRat> from_basis(const std::vector<EisInt>& coeffs) const {
        if (coeffs.size() != gens_.size())
            throw std::invalid_argument("from_basis: wrong coefficient count");
        std::vector<EisRat> v(static_cast<size_t>(ambient_.dim()));
        for (size_t i = 0; i < coeffs.size(); ++i) {
            if (coeffs[i].is_zero()) continue;
            for (size_t j = 0; j < v.size(); ++j) v[j] += coeffs[i] * gens_[i][j];
        }
        return v;
    }

    /**
     * Express an ambient row as Z[w] coefficients in the canonical basis;
     * nullopt if the vector is not in the lattice.
     */
    std::optional<std::vector<EisInt>> coordinates(const std::vector<EisRat>& v) const {
        std::vector<EisRat> rem = v;
        std::vector<EisInt> coeff(gens_.size());
        for (size_t i = 0; i < gens_.size(); ++i) {
            size_t p = pivot_col(i);
            if (rem[p].is_zero()) continue;
            EisRat q = rem[p] / gens_[i][p];
            if (!q.is_integral()) return std::nullopt;
            coeff[i] = q.to_eis();
            for (size_t j = 0; j < rem.size(); ++j) rem[j] -= q * gens_[i][j];
        }
        for (const auto& x : rem)
            if (!x.is_zero()) return std::nullopt;
        return coeff;
    }

    bool contains(const std::vector<EisRat>& v) const { return coordinates(v).has_value(); }
    bool contains(const HermitianLattice& sub) const {
        if (!(ambient_ == sub.ambient_)) return false;
        for (const auto& row : sub.gens_)
            if (!contains(row)) return false;
        return true;
    }

    std::string key() const {
        std::string s = rational_str(ambient_.form_scale);
        for (const auto& b : ambient_.blocks)
            s += "|" + std::to_string(b.is_line) + ":" + std::to_string(b.dim) + ":" +
                 rational_str(b.norm);
        for (const auto& row : gens_) {
            s += ";";
            for (const auto& x : row) s += x.str() + ",";
        }
        return s;
    }

private:
    size_t pivot_col(size_t row) const {
        for (size_t j = 0; j < gens_[row].size(); ++j)
            if (!gens_[row][j].is_zero()) return j;
        throw std::logic_error("pivot_col: zero generator row");
    }

    AmbientSpace ambient_;
    EisRatMat gens_;
};

/// Re-canonicalization; the constructor already produces the canonical form.
inline HermitianLattice canonical_basis(const HermitianLattice& L) {
    return HermitianLattice(L.ambient(), L.generators());
}

inline Rational discriminant(const HermitianLattice& L) { return L.discriminant(); }
inline HermGram gram(const HermitianLattice& L) { return L.gram(); }
inline bool is_integral(const HermitianLattice& L) { return L.is_integral(); }
inline bool is_unimodular(const HermitianLattice& L) { return L.is_unimodular(); }

/// The dual lattice L^# = {x in QL : (x, L) subset Z[w]} inside span(L).
inline HermitianLattice dual(const HermitianLattice& L) {
    if (L.rank() == 0) return L;
    EisRatMat inv = herm_inverse(L.gram());
    const auto& B = L.generators();
    EisRatMat rows(inv.size(), std::vector<EisRat>(static_cast<size_t>(L.ambient_dim())));
    for (size_t i = 0; i < inv.size(); ++i)
        for (size_t k = 0; k < B.size(); ++k) {
            if (inv[i][k].is_zero()) continue;
            for (size_t j = 0; j < rows[i].size(); ++j) rows[i][j] += inv[i][k] * B[k][j];
        }
    return HermitianLattice(L.ambient(), std::move(rows));
}

/// Z[w]-span of the union of two lattices in the same ambient.
inline HermitianLattice sum(const HermitianLattice& a, const HermitianLattice& b) {
    if (!(a.ambient() == b.ambient()))
        throw std::invalid_argument("sum: ambients differ");
    EisRatMat rows = a.generators();
    rows.insert(rows.end(), b.generators().begin(), b.generators().end());
    return HermitianLattice(a.ambient(), std::move(rows));
}

/**
 * |Lsup / Lsub| as an abelian group, computed from the triangular forms.
 * For Z[w]-lattices the discriminants satisfy d(Lsub) = d(Lsup) * index.
 */
inline Int index(const HermitianLattice& sub, const HermitianLattice& sup) {
    if (!(sub.ambient() == sup.ambient()))
        throw std::invalid_argument("index: ambients differ");
    if (sub.rank() != sup.rank())
        throw std::invalid_argument("index: ranks differ");
    EisInt det(1, 0);
    for (const auto& row : sub.generators()) {
        auto c = sup.coordinates(row);
        if (!c) throw std::invalid_argument("index: not a sublattice");
        // triangular structure: the i-th sub row has leading coefficient at i
    }
    // transition matrix T with sub = T * sup (row convention)
    const auto& S = sub.generators();
    EisMat T(S.size());
    for (size_t i = 0; i < S.size(); ++i) {
        auto c = sup.coordinates(S[i]);
        T[i] = std::move(*c);
    }
    det = det_bareiss(std::move(T));
    Int idx = det.norm();
    if (idx == 0) throw std::logic_error("index: degenerate transition");
    return idx;
}

/// Entry-wise complex conjugation of a lattice (same ambient).
inline HermitianLattice conjugate(const HermitianLattice& L) {
    EisRatMat rows = L.generators();
    for (auto& row : rows)
        for (auto& x : row) x = x.conj();
    return HermitianLattice(L.ambient(), std::move(rows));
}

/**
 * The rank-2n trace lattice of an integral Hermitian lattice on the basis
 * {b1, w b1, ..., bn, w bn}: T = Tr h(x, y), det 3^n d(L)^2, even diagonal.
 */
inline ZGram trace_lattice(const HermitianLattice& L) {
    HermGram G = L.gram();
    if (!G.integral()) throw std::domain_error("trace_lattice: lattice is not integral");
    const int n = G.n();
    ZGram T;
    T.g.assign(static_cast<size_t>(2 * n), std::vector<Int>(static_cast<size_t>(2 * n)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            EisInt g = G.at(i, j).to_eis();
            const Int& x = g.a;
            const Int& y = g.b;
            // Tr(g) = 2x - y, Tr(w g) = -x - y, Tr(w^2 g) = 2y - x
            T.g[size_t(2 * i)][size_t(2 * j)] = 2 * x - y;
            T.g[size_t(2 * i)][size_t(2 * j + 1)] = 2 * y - x;
            T.g[size_t(2 * i + 1)][size_t(2 * j)] = -x - y;
            T.g[size_t(2 * i + 1)][size_t(2 * j + 1)] = 2 * x - y;
        }
    return T;
}

// ---------------------------------------------------------------------------
// JSON encoding
//
// { "ambient": { "blocks": [ {"orthonormal": 14} | {"line": "9"} ... ],
//                "form_scale": "1/2" },
//   "generators": [ [ "(1+2*w)/2", "1/2", ... ], ... ] }

inline nlohmann::ordered_json lattice_to_json(const HermitianLattice& L) {
    nlohmann::ordered_json j;
    nlohmann::ordered_json blocks = nlohmann::ordered_json::array();
    for (const auto& b : L.ambient().blocks) {
        nlohmann::ordered_json e;
        if (b.is_line) e["line"] = rational_str(b.norm);
        else e["orthonormal"] = b.dim;
        blocks.push_back(e);
    }
    j["ambient"]["blocks"] = blocks;
    j["ambient"]["form_scale"] = rational_str(L.ambient().form_scale);
    nlohmann::ordered_json gens = nlohmann::ordered_json::array();
    for (const auto& row : L.generators()) {
        nlohmann::ordered_json r = nlohmann::ordered_json::array();
        for (const auto& x : row) r.push_back(x.str());
        gens.push_back(r);
    }
    j["generators"] = gens;
    return j;
}

inline HermitianLattice lattice_from_json(const nlohmann::json& j) {
    if (!j.contains("ambient") || !j.contains("generators"))
        throw std::invalid_argument("lattice_from_json: missing ambient or generators");
    AmbientSpace a;
    for (const auto& e : j.at("ambient").at("blocks")) {
        if (e.contains("orthonormal")) a.add_orthonormal(e.at("orthonormal").get<int>());
        else if (e.contains("line")) a.add_line(parse_rational(e.at("line").get<std::string>()));
        else throw std::invalid_argument("lattice_from_json: unknown block kind");
    }
    if (j.at("ambient").contains("form_scale"))
        a.form_scale = parse_rational(j.at("ambient").at("form_scale").get<std::string>());
    EisRatMat rows;
    for (const auto& r : j.at("generators")) {
        std::vector<EisRat> row;
        for (const auto& x : r) row.push_back(parse_eisrat(x.get<std::string>()));
        rows.push_back(std::move(row));
    }
    return HermitianLattice(std::move(a), std::move(rows));
}

}  // namespace eisenlat
