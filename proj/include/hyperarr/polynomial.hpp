#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "hyperarr/errors.hpp"
#include "hyperarr/rational.hpp"

namespace hyperarr {

/// Exact univariate polynomial over Z. coeffs[i] is the coefficient of t^i;
/// the empty vector is the zero polynomial and a nonzero polynomial keeps a
/// nonzero leading coefficient. Characteristic polynomials, cyclotomic
/// polynomials and certificate payloads all live in this type.
struct CharPoly {
    std::vector<Int> coeffs;

    CharPoly() = default;
    explicit CharPoly(std::vector<Int> c) : coeffs(std::move(c)) { trim(); }

    static CharPoly zero() { return CharPoly{}; }
    static CharPoly constant(Int c) {
        CharPoly p;
        if (c != 0) p.coeffs.push_back(std::move(c));
        return p;
    }
    /// t^d
    static CharPoly power(std::size_t d) {
        CharPoly p;
        p.coeffs.assign(d + 1, Int(0));
        p.coeffs[d] = 1;
        return p;
    }
    /// t - b
    static CharPoly linear_root(const Int& b) {
        CharPoly p;
        p.coeffs = {-b, Int(1)};
        return p;
    }

    bool is_zero() const { return coeffs.empty(); }
    // degree of the zero polynomial is -1 by convention
    long degree() const { return static_cast<long>(coeffs.size()) - 1; }
    bool is_monic() const { return !coeffs.empty() && coeffs.back() == 1; }

    const Int& leading() const { return coeffs.back(); }

    void trim() {
        while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
    }

    friend bool operator==(const CharPoly& a, const CharPoly& b) = default;
};

inline CharPoly operator+(const CharPoly& a, const CharPoly& b) {
    CharPoly r;
    r.coeffs.resize(std::max(a.coeffs.size(), b.coeffs.size()), Int(0));
    for (std::size_t i = 0; i < a.coeffs.size(); ++i) r.coeffs[i] += a.coeffs[i];
    for (std::size_t i = 0; i < b.coeffs.size(); ++i) r.coeffs[i] += b.coeffs[i];
    r.trim();
    return r;
}

inline CharPoly operator-(const CharPoly& a, const CharPoly& b) {
    CharPoly r;
    r.coeffs.resize(std::max(a.coeffs.size(), b.coeffs.size()), Int(0));
    for (std::size_t i = 0; i < a.coeffs.size(); ++i) r.coeffs[i] += a.coeffs[i];
    for (std::size_t i = 0; i < b.coeffs.size(); ++i) r.coeffs[i] -= b.coeffs[i];
    r.trim();
    return r;
}

inline CharPoly operator*(const CharPoly& a, const CharPoly& b) {
    if (a.is_zero() || b.is_zero()) return CharPoly::zero();
    CharPoly r;
    r.coeffs.assign(a.coeffs.size() + b.coeffs.size() - 1, Int(0));
    for (std::size_t i = 0; i < a.coeffs.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs.size(); ++j)
            r.coeffs[i + j] += a.coeffs[i] * b.coeffs[j];
    r.trim();
    return r;
}

/// Exact evaluation at an integer point (Horner).
inline Int evaluate(const CharPoly& p, const Int& x) {
    Int acc(0);
    for (auto it = p.coeffs.rbegin(); it != p.coeffs.rend(); ++it) acc = acc * x + *it;
    return acc;
}

namespace detail {

// Division in Q[t]; returns {quotient, remainder} as rational coefficient
// vectors (index = degree, not trimmed).
inline std::pair<std::vector<Rat>, std::vector<Rat>> qdivrem(const CharPoly& num,
                                                             const CharPoly& den) {
    std::vector<Rat> rem(num.coeffs.begin(), num.coeffs.end());
    const long dd = den.degree();
    std::vector<Rat> quot;
    if (num.degree() >= dd) quot.assign(num.degree() - dd + 1, Rat(0));
    const Rat lead(den.leading());
    for (long d = num.degree(); d >= dd; --d) {
        Rat c = rem[d] / lead;
        if (c == 0) continue;
        quot[d - dd] = c;
        for (long i = 0; i <= dd; ++i) rem[d - dd + i] -= c * Rat(den.coeffs[i]);
    }
    while (!rem.empty() && rem.back() == 0) rem.pop_back();
    return {std::move(quot), std::move(rem)};
}

} // namespace detail

/// True iff q = p * s for some integer polynomial s.
inline bool poly_divides(const CharPoly& p, const CharPoly& q) {
    if (p.is_zero()) throw usage_error("poly_divides: divisor is zero");
    if (q.is_zero()) return true;
    if (q.degree() < p.degree()) return false;
    auto [quot, rem] = detail::qdivrem(q, p);
    if (!rem.empty()) return false;
    for (const Rat& c : quot)
        if (c.get_den() != 1) return false;
    return true;
}

/// Exact quotient q / p in Z[t]; throws usage_error when p does not divide q.
inline CharPoly exact_quotient(const CharPoly& q, const CharPoly& p) {
    if (p.is_zero()) throw usage_error("exact_quotient: divisor is zero");
    if (q.is_zero()) return CharPoly::zero();
    auto [quot, rem] = detail::qdivrem(q, p);
    if (!rem.empty()) throw usage_error("exact_quotient: division is not exact");
    CharPoly r;
    r.coeffs.reserve(quot.size());
    for (const Rat& c : quot) {
        if (c.get_den() != 1) throw usage_error("exact_quotient: quotient is not integral");
        r.coeffs.push_back(c.get_num());
    }
    r.trim();
    return r;
}

/// If the monic polynomial p factors as prod (t - b_i) with all b_i
/// nonnegative integers, returns the sorted multiset {b_i}; otherwise nullopt.
/// Trial roots run over 0..sum|coeffs| and every root is divided out to full
/// multiplicity.
inline std::optional<std::vector<long>> integer_roots_split(const CharPoly& p) {
    if (!p.is_monic()) throw usage_error("integer_roots_split: polynomial is not monic");
    Int bound(0);
    for (const Int& c : p.coeffs) bound += abs(c);
    CharPoly cur = p;
    std::vector<long> roots;
    for (Int r(0); r <= bound && cur.degree() > 0; ++r) {
        while (cur.degree() > 0 && evaluate(cur, r) == 0) {
            roots.push_back(static_cast<long>(r.get_si()));
            cur = exact_quotient(cur, CharPoly::linear_root(r));
        }
    }
    if (cur.degree() > 0) return std::nullopt;
    return roots; // ascending by construction
}

/// Human-readable form, e.g. "t^3 - 3t^2 + 2t".
inline std::string poly_display(const CharPoly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    for (long d = p.degree(); d >= 0; --d) {
        const Int& c = p.coeffs[d];
        if (c == 0) continue;
        const bool neg = c < 0;
        const Int a = abs(c);
        if (out.empty())
            out += neg ? "-" : "";
        else
            out += neg ? " - " : " + ";
        if (a != 1 || d == 0) out += a.get_str();
        if (d >= 1) out += "t";
        if (d >= 2) out += "^" + std::to_string(d);
    }
    return out;
}

} // namespace hyperarr
