#pragma once

#include <gmpxx.h>

#include <string>

#include "hyperarr/errors.hpp"

namespace hyperarr {

// Exact rationals are provided by GMP. mpq_class keeps values canonical
// (positive denominator, gcd(num, den) = 1) once canonicalize() has run;
// every Rat built through this header is canonical.
using Rat = mpq_class;
using Int = mpz_class;

/// Format as "p/q", omitting "/q" when the denominator is 1.
inline std::string rat_to_string(const Rat& q) {
    return q.get_str();
}

/// Strict parser for the "p/q" wire form: decimal integers, q > 0, and the
/// fraction must already be in lowest terms. Rejects anything else.
inline Rat rat_from_string(const std::string& s) {
    const auto bad = [&](const char* why) -> Rat {
        throw io_error("bad rational \"" + s + "\": " + why);
    };
    const auto slash = s.find('/');
    const std::string num_str = s.substr(0, slash);
    const std::string den_str = slash == std::string::npos ? "" : s.substr(slash + 1);

    const auto is_integer_literal = [](const std::string& t) {
        if (t.empty()) return false;
        std::size_t i = t[0] == '-' ? 1 : 0;
        if (i == t.size()) return false;
        for (; i < t.size(); ++i)
            if (t[i] < '0' || t[i] > '9') return false;
        return true;
    };
    if (!is_integer_literal(num_str)) return bad("numerator is not a decimal integer");

    Int num;
    if (num.set_str(num_str, 10) != 0) return bad("unparsable numerator");

    Int den(1);
    if (slash != std::string::npos) {
        if (!is_integer_literal(den_str) || den_str[0] == '-')
            return bad("denominator is not a positive decimal integer");
        if (den.set_str(den_str, 10) != 0) return bad("unparsable denominator");
        if (den == 0) return bad("zero denominator");
        if (den == 1) return bad("denominator 1 must be omitted");
        Int g;
        mpz_gcd(g.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        if (g != 1) return bad("fraction is not in lowest terms");
    }
    Rat q(num, den);
    q.canonicalize();
    return q;
}

} // namespace hyperarr
