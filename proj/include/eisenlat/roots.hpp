#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "autiso.hpp"
#include "construct.hpp"
#include "enumerate.hpp"
#include "lattice.hpp"

namespace eisenlat {

/**
 * One irreducible Eisenstein root system from the alphabet of the
 * classification: A_n, D_n(2), D_n(sqrt-3), E6/E7/E8, U5, U6.
 * Components that match nothing are kept as explicit unknown(...) tokens.
 */
struct RootComponent {
    enum class Type { A, D2, D3, E, U, Unknown };
    Type type = Type::Unknown;
    int n = 0;           // rank parameter
    long root_count = 0; // for Unknown diagnostics
    std::string disc;    // for Unknown diagnostics

    int rank() const { return n; }

    std::string str() const {
        switch (type) {
            case Type::A: return "A_" + std::to_string(n);
            case Type::D2: return "D_" + std::to_string(n) + "(2)";
            case Type::D3: return "D_" + std::to_string(n) + "(sqrt-3)";
            case Type::E: return "E_" + std::to_string(n);
            case Type::U: return "U_" + std::to_string(n);
            case Type::Unknown:
                return "unknown(" + std::to_string(n) + "," + std::to_string(root_count) + "," +
                       disc + ")";
        }
        return "?";
    }

    /// Roots of the reference lattice of this type.
    static long reference_root_count(Type t, int n) {
        switch (t) {
            case Type::A: return 3L * n * (n + 1);
            case Type::D2: return 6L * n * (n - 1);
            case Type::D3: return 9L * n * (n - 1);
            case Type::E: return n == 6 ? 216 : (n == 7 ? 378 : 720);
            case Type::U: return n == 5 ? 270 : 756;
            default: return 0;
        }
    }

    static Rational reference_disc(Type t, int n) {
        switch (t) {
            case Type::A: return Rational(n + 1);
            case Type::D2: return Rational(4);
            case Type::D3: return Rational(3);
            case Type::E: return n == 6 ? Rational(3) : (n == 7 ? Rational(2) : Rational(1));
            case Type::U: return n == 5 ? Rational(2) : Rational(1);
            default: return Rational(0);
        }
    }

    HermitianLattice reference() const {
        switch (type) {
            case Type::A: return lat_A(n);
            case Type::D2: return lat_D2(n);
            case Type::D3: return lat_D3(n);
            case Type::E: return lat_E(n);
            case Type::U: return n == 5 ? lat_U5() : lat_U6();
            default: throw std::domain_error("RootComponent: no reference for unknown");
        }
    }

    bool operator==(const RootComponent& o) const {
        return type == o.type && n == o.n &&
               (type != Type::Unknown || (root_count == o.root_count && disc == o.disc));
    }
};

/**
 * RootSystemDescriptor: the multiset of irreducible components of the
 * root sublattice, in canonical order (rank descending, then type, then
 * parameter).  The string form matches the catalog notation, e.g.
 * "D_8(2) U_5 A_1".
 */
struct RootSystemDescriptor {
    std::vector<RootComponent> components;
    int total_rank = 0;

    void canonicalize() {
        std::sort(components.begin(), components.end(),
                  [](const RootComponent& a, const RootComponent& b) {
                      if (a.rank() != b.rank()) return a.rank() > b.rank();
                      if (a.type != b.type) return static_cast<int>(a.type) < static_cast<int>(b.type);
                      return a.str() < b.str();
                  });
        total_rank = 0;
        for (const auto& c : components) total_rank += c.rank();
    }

    std::string str() const {
        if (components.empty()) return "empty";
        std::string s;
        for (const auto& c : components) {
            if (!s.empty()) s += " ";
            s += c.str();
        }
        return s;
    }

    long root_count() const {
        long s = 0;
        for (const auto& c : components)
            if (c.type != RootComponent::Type::Unknown)
                s += RootComponent::reference_root_count(c.type, c.n);
            else
                s += c.root_count;
        return s;
    }

    bool has_unknown() const {
        for (const auto& c : components)
            if (c.type == RootComponent::Type::Unknown) return true;
        return false;
    }

    bool operator==(const RootSystemDescriptor& o) const { return components == o.components; }
};

/**
 * Parse a catalog root-system string ("D_8(2) U_5 A_1", "empty", ...).
 * A bare D_n has no parameter in the source tables; it is normalized to
 * D_n(sqrt-3) and reported through *bare_d_flag so data validation can
 * surface the row instead of deciding silently.
 */
inline RootSystemDescriptor parse_root_system(const std::string& text, bool* bare_d_flag = nullptr) {
    RootSystemDescriptor d;
    if (bare_d_flag) *bare_d_flag = false;
    std::string token;
    std::vector<std::string> tokens;
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            if (!token.empty()) tokens.push_back(token);
            token.clear();
        } else {
            token += c;
        }
    }
    if (!token.empty()) tokens.push_back(token);
    if (tokens.size() == 1 && (tokens[0] == "empty" || tokens[0] == "0")) {
        d.canonicalize();
        return d;
    }
    for (const auto& t : tokens) {
        RootComponent c;
        char kind = t[0];
        std::string rest = t.substr(1);
        if (!rest.empty() && rest[0] == '_') rest = rest.substr(1);
        auto open = rest.find('(');
        std::string par;
        if (open != std::string::npos) {
            par = rest.substr(open + 1);
            if (!par.empty() && par.back() == ')') par.pop_back();
            rest = rest.substr(0, open);
        }
        c.n = std::stoi(rest);
        switch (kind) {
            case 'A': c.type = RootComponent::Type::A; break;
            case 'E': c.type = RootComponent::Type::E; break;
            case 'U': c.type = RootComponent::Type::U; break;
            case 'D':
                if (par == "2") c.type = RootComponent::Type::D2;
                else if (par == "sqrt-3" || par == "s3") c.type = RootComponent::Type::D3;
                else if (par.empty()) {
                    c.type = RootComponent::Type::D3;
                    if (bare_d_flag) *bare_d_flag = true;
                } else {
                    throw std::invalid_argument("parse_root_system: bad D parameter in '" + t + "'");
                }
                break;
            default:
                throw std::invalid_argument("parse_root_system: bad token '" + t + "'");
        }
        d.components.push_back(c);
    }
    d.canonicalize();
    return d;
}

/// Z[w]-span of all vectors of norm 2; the empty lattice when min > 2.
inline HermitianLattice root_sublattice(const HermitianLattice& L) {
    if (!L.is_integral()) throw std::domain_error("root_sublattice: lattice is not integral");
    if (L.rank() == 0) return L;
    RawShortVectors raw = enumerate_raw(L, 2);
    EisRatMat rows;
    for (size_t k = 0; k < raw.size(); ++k) {
        if (raw.norms[k] != 2) continue;
        const std::int16_t* v = raw.vec(k);
        std::vector<EisInt> coeff(static_cast<size_t>(raw.n), EisInt());
        for (int j = 0; j < raw.n; ++j) coeff[static_cast<size_t>(j)] = EisInt(Int(v[2 * j]), Int(v[2 * j + 1]));
        rows.push_back(L.from_basis(coeff));
    }
    return HermitianLattice(L.ambient(), std::move(rows));
}

namespace detail {

/// Identify one indecomposable root-generated lattice.
inline RootComponent identify_root_component(const HermitianLattice& C) {
    const int r = C.rank();
    long count = mu2(C).get_si();
    Rational disc = C.discriminant();
    using T = RootComponent::Type;
    std::vector<RootComponent> candidates;
    auto consider = [&](T t, int n) {
        if (n != r) return;
        if (RootComponent::reference_root_count(t, n) != count) return;
        if (RootComponent::reference_disc(t, n) != disc) return;
        RootComponent c;
        c.type = t;
        c.n = n;
        candidates.push_back(c);
    };
    consider(T::A, r);
    if (r >= 4) consider(T::D2, r);
    if (r >= 3) consider(T::D3, r);
    if (r >= 6 && r <= 8) consider(T::E, r);
    if (r == 5 || r == 6) consider(T::U, r);
    // D_2(sqrt-3) = A_2 and D_3(2) = A_3 as lattices, so the alphabet is
    // restricted to parameters where the fingerprints are pairwise
    // distinct; the isometry fallback below is the final arbiter should
    // a collision appear anyway.
    if (candidates.size() == 1) return candidates[0];
    for (const auto& cand : candidates)
        if (is_isometric(C, cand.reference()).has_value()) return cand;
    RootComponent c;
    c.type = T::Unknown;
    c.n = r;
    c.root_count = count;
    c.disc = rational_str(disc);
    return c;
}

}  // namespace detail

/**
 * Identify the root system of L: decompose the root sublattice and match
 * each component against the reference alphabet by
 * (rank, root count, discriminant).  The fingerprints are pairwise
 * distinct over the alphabet; anything unmatched is reported as an
 * explicit unknown token, never silently guessed.
 */
inline RootSystemDescriptor classify_roots(const HermitianLattice& L) {
    RootSystemDescriptor d;
    HermitianLattice R = root_sublattice(L);
    if (R.rank() == 0) {
        d.canonicalize();
        return d;
    }
    for (const HermitianLattice& comp : decompose(R))
        d.components.push_back(detail::identify_root_component(comp));
    d.canonicalize();
    return d;
}

}  // namespace eisenlat
