#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace eisenlat {

using Int = mpz_class;
using Rational = mpq_class;

/**
 * EisInt: an Eisenstein integer a + b*w, where w is a primitive third
 * root of unity (w^2 = -w - 1).  The ring Z[w] is a Euclidean PID with
 * unit group {±1, ±w, ±w^2}; sqrt(-3) is represented by 1 + 2w.
 */
struct EisInt {
    Int a, b;

    EisInt() : a(0), b(0) {}
    EisInt(Int a_, Int b_) : a(std::move(a_)), b(std::move(b_)) {}
    explicit EisInt(Int x) : a(std::move(x)), b(0) {}
    EisInt(long x) : a(x), b(0) {}

    static EisInt omega() { return EisInt(0, 1); }
    static EisInt sqrt_m3() { return EisInt(1, 2); }  // (1+2w)^2 = -3

    bool is_zero() const { return a == 0 && b == 0; }
    bool is_one() const { return a == 1 && b == 0; }

    EisInt conj() const { return EisInt(a - b, -b); }

    // N(a+bw) = a^2 - ab + b^2 >= 0, zero only at 0.
    Int norm() const { return a * a - a * b + b * b; }

    // Tr(a+bw) = 2a - b.
    Int trace() const { return 2 * a - b; }

    EisInt operator-() const { return EisInt(-a, -b); }
    EisInt operator+(const EisInt& o) const { return EisInt(a + o.a, b + o.b); }
    EisInt operator-(const EisInt& o) const { return EisInt(a - o.a, b - o.b); }
    EisInt operator*(const EisInt& o) const {
        // (a+bw)(c+dw) = ac - bd + (ad + bc - bd) w
        Int bd = b * o.b;
        return EisInt(a * o.a - bd, a * o.b + b * o.a - bd);
    }
    EisInt& operator+=(const EisInt& o) { a += o.a; b += o.b; return *this; }
    EisInt& operator-=(const EisInt& o) { a -= o.a; b -= o.b; return *this; }
    EisInt& operator*=(const EisInt& o) { *this = *this * o; return *this; }

    bool operator==(const EisInt& o) const { return a == o.a && b == o.b; }
    bool operator!=(const EisInt& o) const { return !(*this == o); }

    // Total order used for canonical sorting only (not compatible with ring ops).
    bool operator<(const EisInt& o) const {
        int c = cmp(a, o.a);
        if (c != 0) return c < 0;
        return b < o.b;
    }

    bool is_unit() const { return norm() == 1; }

    // true iff both coordinates are divisible by 2 (i.e. z in 2Z[w])
    bool even() const { return mpz_even_p(a.get_mpz_t()) && mpz_even_p(b.get_mpz_t()); }

    std::string str() const;
};

inline EisInt operator*(const Int& c, const EisInt& z) { return EisInt(c * z.a, c * z.b); }
inline EisInt operator*(const EisInt& z, const Int& c) { return EisInt(c * z.a, c * z.b); }

/// The six units ±1, ±w, ±w^2 of Z[w].
inline const std::array<EisInt, 6>& eis_units() {
    static const std::array<EisInt, 6> u = {
        EisInt(1, 0),  EisInt(-1, 0), EisInt(0, 1),
        EisInt(0, -1), EisInt(-1, -1), EisInt(1, 1)};
    return u;
}

inline Int eis_norm(const EisInt& z) { return z.norm(); }

/**
 * Euclidean division: x = q*y + r with N(r) < N(y).  q is the point of
 * Z[w] nearest to x/y in the norm metric; ties are broken by the
 * lexicographically smallest (a, b) so the result is deterministic.
 */
inline std::pair<EisInt, EisInt> eis_divmod(const EisInt& x, const EisInt& y) {
    if (y.is_zero()) throw std::domain_error("eis_divmod: division by zero");
    // x/y = x*conj(y)/N(y); round both coordinates and search the
    // surrounding 3x3 grid for the nearest lattice point.
    EisInt t = x * y.conj();
    Int n = y.norm();
    Int qa0, qb0;
    mpz_fdiv_q(qa0.get_mpz_t(), t.a.get_mpz_t(), n.get_mpz_t());
    mpz_fdiv_q(qb0.get_mpz_t(), t.b.get_mpz_t(), n.get_mpz_t());
    bool have = false;
    EisInt best_q, best_r;
    Int best_norm;
    for (int da = 0; da <= 1; ++da) {
        for (int db = 0; db <= 1; ++db) {
            EisInt q(qa0 + da, qb0 + db);
            EisInt r = x - q * y;
            Int rn = r.norm();
            if (!have || rn < best_norm ||
                (rn == best_norm && (q.a < best_q.a || (q.a == best_q.a && q.b < best_q.b)))) {
                have = true;
                best_q = q;
                best_r = r;
                best_norm = rn;
            }
        }
    }
    // Covering radius^2 of Z[w] is 1/3, so N(r) <= N(y)/3 < N(y).
    return {best_q, best_r};
}

/// Exact division; throws if y does not divide x.
inline EisInt eis_exact_div(const EisInt& x, const EisInt& y) {
    auto [q, r] = eis_divmod(x, y);
    if (!r.is_zero()) throw std::domain_error("eis_exact_div: not divisible");
    return q;
}

/**
 * Canonical associate: the unique unit multiple of z lying in the
 * sector {a > b >= 0}.  Fixing it makes Hermite forms unique.
 */
inline EisInt canonical_associate(const EisInt& z) {
    if (z.is_zero()) return z;
    for (const EisInt& u : eis_units()) {
        EisInt w = u * z;
        if (w.a > w.b && w.b >= 0) return w;
    }
    throw std::logic_error("canonical_associate: no sector representative");
}

/// gcd up to the canonical associate (Euclidean algorithm).
inline EisInt eis_gcd(EisInt x, EisInt y) {
    while (!y.is_zero()) {
        auto [q, r] = eis_divmod(x, y);
        x = y;
        y = r;
    }
    return canonical_associate(x);
}

/**
 * F4Elem: the residue field Z[w]/2Z[w] with four elements {0, 1, w, w^2},
 * w^2 = w + 1.  Encoded as bits (a mod 2) | (b mod 2) << 1.
 */
struct F4Elem {
    std::uint8_t v = 0;

    F4Elem() = default;
    explicit F4Elem(std::uint8_t v_) : v(v_) {
        if (v > 3) throw std::domain_error("F4Elem: bad encoding");
    }
    static F4Elem zero() { return F4Elem(0); }
    static F4Elem one() { return F4Elem(1); }
    static F4Elem w() { return F4Elem(2); }
    static F4Elem w2() { return F4Elem(3); }

    bool is_zero() const { return v == 0; }

    F4Elem operator+(F4Elem o) const { return F4Elem(std::uint8_t(v ^ o.v)); }
    F4Elem operator*(F4Elem o) const {
        static const std::uint8_t tab[4][4] = {
            {0, 0, 0, 0}, {0, 1, 2, 3}, {0, 2, 3, 1}, {0, 3, 1, 2}};
        return F4Elem(tab[v][o.v]);
    }
    /// Frobenius x -> x^2, the nontrivial field automorphism.
    F4Elem frob() const { return *this * *this; }
    F4Elem inv() const {
        if (v == 0) throw std::domain_error("F4Elem: inverse of zero");
        return v == 1 ? one() : (v == 2 ? w2() : w());
    }
    bool operator==(F4Elem o) const { return v == o.v; }
    bool operator!=(F4Elem o) const { return v != o.v; }

    std::string str() const {
        static const char* names[4] = {"0", "1", "w", "w2"};
        return names[v];
    }
    static F4Elem parse(const std::string& s) {
        if (s == "0") return zero();
        if (s == "1") return one();
        if (s == "w") return w();
        if (s == "w2") return w2();
        throw std::invalid_argument("F4Elem: cannot parse '" + s + "'");
    }
};

/// Reduction Z[w] -> Z[w]/2Z[w] = F4; a ring homomorphism with kernel 2Z[w].
inline F4Elem f4_reduce(const EisInt& z) {
    std::uint8_t a = static_cast<std::uint8_t>(mpz_odd_p(z.a.get_mpz_t()) ? 1 : 0);
    std::uint8_t b = static_cast<std::uint8_t>(mpz_odd_p(z.b.get_mpz_t()) ? 1 : 0);
    return F4Elem(std::uint8_t(a | (b << 1)));
}

/// A lift of an F4 element back to Z[w] with coordinates in {0, 1}.
inline EisInt f4_lift(F4Elem x) {
    return EisInt(Int(x.v & 1), Int((x.v >> 1) & 1));
}

/**
 * EisRat: an element of Q(w) = Q(sqrt(-3)) stored as num/den with an
 * Eisenstein numerator and a positive rational-integer denominator,
 * reduced so that gcd(content(num), den) = 1.
 */
struct EisRat {
    EisInt num;
    Int den;

    EisRat() : num(), den(1) {}
    EisRat(EisInt n, Int d) : num(std::move(n)), den(std::move(d)) { reduce(); }
    EisRat(const EisInt& n) : num(n), den(1) {}
    EisRat(long x) : num(x), den(1) {}

    void reduce() {
        if (den == 0) throw std::domain_error("EisRat: zero denominator");
        if (den < 0) {
            den = -den;
            num = -num;
        }
        Int g = gcd(gcd(num.a, num.b), den);
        if (g > 1) {
            num.a /= g;
            num.b /= g;
            den /= g;
        }
    }

    bool is_zero() const { return num.is_zero(); }
    bool is_integral() const { return den == 1; }

    EisRat conj() const { return EisRat(num.conj(), den); }
    Rational norm() const { return Rational(num.norm()) / Rational(den * den); }
    Rational trace() const { return Rational(num.trace()) / Rational(den); }

    /// The rational part: z = rat() + im()*w.
    Rational rat() const { return Rational(num.a) / Rational(den); }
    Rational im() const { return Rational(num.b) / Rational(den); }

    EisRat operator-() const { return EisRat(-num, den); }
    EisRat operator+(const EisRat& o) const {
        return EisRat(o.den * num + den * o.num, den * o.den);
    }
    EisRat operator-(const EisRat& o) const {
        return EisRat(o.den * num - den * o.num, den * o.den);
    }
    EisRat operator*(const EisRat& o) const { return EisRat(num * o.num, den * o.den); }
    EisRat operator/(const EisRat& o) const {
        if (o.is_zero()) throw std::domain_error("EisRat: division by zero");
        return EisRat(num * o.num.conj() * o.den, den * o.num.norm());
    }
    EisRat& operator+=(const EisRat& o) { *this = *this + o; return *this; }
    EisRat& operator-=(const EisRat& o) { *this = *this - o; return *this; }
    EisRat& operator*=(const EisRat& o) { *this = *this * o; return *this; }

    bool operator==(const EisRat& o) const { return num == o.num && den == o.den; }
    bool operator!=(const EisRat& o) const { return !(*this == o); }

    /// Requires den == 1.
    EisInt to_eis() const {
        if (den != 1) throw std::domain_error("EisRat: not an Eisenstein integer");
        return num;
    }

    std::string str() const;
};

inline EisRat operator*(const EisInt& z, const EisRat& r) { return EisRat(z) * r; }
inline EisRat operator*(const Rational& c, const EisRat& r) {
    return EisRat(Int(c.get_num()) * r.num, r.den * Int(c.get_den()));
}

// ---------------------------------------------------------------------------
// text encoding: EisInt as "a+b*w", EisRat as "(a+b*w)/d"

inline std::string EisInt::str() const {
    if (b == 0) return a.get_str();
    std::string s;
    if (a != 0) s = a.get_str();
    if (b > 0 && !s.empty()) s += "+";
    if (b == -1) s += "-";
    else if (b != 1) s += b.get_str() + "*";
    s += "w";
    return s;
}

inline std::string EisRat::str() const {
    if (den == 1) return num.str();
    std::string n = num.str();
    bool wrap = (num.a != 0 && num.b != 0);
    return (wrap ? "(" + n + ")" : n) + "/" + den.get_str();
}

namespace detail {

inline bool parse_int_at(const std::string& s, size_t& i, Int& out) {
    size_t j = i;
    if (j < s.size() && (s[j] == '+' || s[j] == '-')) ++j;
    size_t k = j;
    while (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) ++k;
    if (k == j) return false;
    out = Int(s.substr(i, k - i));
    i = k;
    return true;
}

}  // namespace detail

/// Parse "a", "b*w", "a+b*w", "w", "-w", "a+w", ... (no spaces handled here).
inline EisInt parse_eis(const std::string& raw) {
    std::string s;
    for (char c : raw)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw std::invalid_argument("parse_eis: empty string");
    size_t i = 0;
    Int a = 0, b = 0;
    bool any = false;
    while (i < s.size()) {
        int sign = 1;
        if (s[i] == '+') { ++i; }
        else if (s[i] == '-') { sign = -1; ++i; }
        Int mag = 1;
        bool had_digits = false;
        size_t save = i;
        if (detail::parse_int_at(s, i, mag)) {
            had_digits = true;
        } else {
            i = save;
            mag = 1;
        }
        if (i < s.size() && (s[i] == '*' || s[i] == 'w')) {
            if (s[i] == '*') {
                ++i;
                if (i >= s.size() || s[i] != 'w')
                    throw std::invalid_argument("parse_eis: expected w after '*' in '" + raw + "'");
            }
            ++i;  // consume 'w'
            b += sign * mag;
        } else if (had_digits) {
            a += sign * mag;
        } else {
            throw std::invalid_argument("parse_eis: cannot parse '" + raw + "'");
        }
        any = true;
    }
    if (!any) throw std::invalid_argument("parse_eis: cannot parse '" + raw + "'");
    return EisInt(a, b);
}

/// Parse "(a+b*w)/d", "a+b*w", "a/d", ...
inline EisRat parse_eisrat(const std::string& raw) {
    std::string s;
    for (char c : raw)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    size_t slash = std::string::npos;
    int depth = 0;
    for (size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '(') ++depth;
        else if (s[i] == ')') --depth;
        else if (s[i] == '/' && depth == 0) { slash = i; break; }
    }
    std::string nums = (slash == std::string::npos) ? s : s.substr(0, slash);
    if (nums.size() >= 2 && nums.front() == '(' && nums.back() == ')')
        nums = nums.substr(1, nums.size() - 2);
    EisInt n = parse_eis(nums);
    Int d = 1;
    if (slash != std::string::npos) {
        std::string dens = s.substr(slash + 1);
        if (dens.empty()) throw std::invalid_argument("parse_eisrat: missing denominator");
        d = Int(dens);
    }
    return EisRat(n, d);
}

/// Deterministic 64-bit hash for fingerprinting (FNV-1a over the digits).
inline std::uint64_t hash_str(const std::string& s, std::uint64_t h = 1469598103934665603ULL) {
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

inline std::string rational_str(const Rational& q) {
    Rational c = q;
    c.canonicalize();
    return c.get_str();
}

inline Rational parse_rational(const std::string& s) {
    Rational q(s);
    q.canonicalize();
    return q;
}

}  // namespace eisenlat
