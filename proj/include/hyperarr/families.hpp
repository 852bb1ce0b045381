#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "hyperarr/arrangement.hpp"
#include "hyperarr/constructions.hpp"

namespace hyperarr {

/// Boolean arrangement: the coordinate hyperplanes x_i = 0 in dimension l.
inline Arrangement boolean_arrangement(std::size_t l) {
    if (l == 0) throw usage_error("boolean_arrangement: dimension must be positive");
    std::vector<CycVec> normals;
    for (std::size_t i = 0; i < l; ++i) {
        CycVec v(l, Cyc::from_rat(0));
        v[i] = Cyc::from_rat(1);
        normals.push_back(std::move(v));
    }
    return Arrangement::make(1, l, normals);
}

/// Braid arrangement: x_i - x_j = 0 for i < j in dimension l.
inline Arrangement braid_arrangement(std::size_t l) {
    if (l < 2) throw usage_error("braid_arrangement: dimension must be at least 2");
    std::vector<CycVec> normals;
    for (std::size_t i = 0; i < l; ++i)
        for (std::size_t j = i + 1; j < l; ++j) {
            CycVec v(l, Cyc::from_rat(0));
            v[i] = Cyc::from_rat(1);
            v[j] = Cyc::from_rat(-1);
            normals.push_back(std::move(v));
        }
    return Arrangement::make(1, l, normals);
}

/// Intermediate arrangement A_l^k(r): the hyperplanes
///   x_i - zeta^m x_j = 0   (1 <= i < j <= l, 0 <= m < r, zeta = primitive
///                           r-th root of unity)
///   x_i = 0                (1 <= i <= k)
/// Interpolates between the reflection arrangements of G(r,r,l) (k = 0) and
/// G(r,1,l) (k = l).
inline Arrangement intermediate_arrangement(unsigned r, std::size_t l, std::size_t k) {
    if (r < 1) throw usage_error("intermediate_arrangement: r must be at least 1");
    if (l < 2) throw usage_error("intermediate_arrangement: dimension must be at least 2");
    if (k > l) throw usage_error("intermediate_arrangement: k must satisfy 0 <= k <= dimension");
    std::vector<CycVec> normals;
    for (std::size_t i = 0; i < l; ++i)
        for (std::size_t j = i + 1; j < l; ++j)
            for (unsigned m = 0; m < r; ++m) {
                CycVec v(l, Cyc::from_rat(0, r));
                v[i] = Cyc::from_rat(1, r);
                v[j] = -zeta(r, m);
                normals.push_back(std::move(v));
            }
    for (std::size_t i = 0; i < k; ++i) {
        CycVec v(l, Cyc::from_rat(0, r));
        v[i] = Cyc::from_rat(1, r);
        normals.push_back(std::move(v));
    }
    return Arrangement::make(r, l, normals);
}

/// Reflection arrangement of the full monomial group G(r,1,l):
/// all x_i - zeta^m x_j together with all coordinate hyperplanes.
inline Arrangement monomial_full_arrangement(unsigned r, std::size_t l) {
    return intermediate_arrangement(r, l, l);
}

/// Reflection arrangement of G(r,r,l): the x_i - zeta^m x_j alone.
inline Arrangement monomial_g_arrangement(unsigned r, std::size_t l) {
    return intermediate_arrangement(r, l, 0);
}

/// Named family selector, e.g. "braid:l=4" or "intermediate:r=3,l=4,k=1".
/// Grammar:  name[:key=value[,key=value...]]
/// Families: boolean (l), braid (l), intermediate (r, l, k),
///           monomial_full (r, l), monomial_g (r, l).
struct FamilySpec {
    std::string name;
    unsigned r = 0;
    std::size_t l = 0;
    std::size_t k = 0;
    bool has_r = false, has_l = false, has_k = false;
};

namespace detail {

inline unsigned long parse_family_number(const std::string& text, const std::string& selector) {
    if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos)
        throw usage_error("bad selector '" + selector + "': '" + text + "' is not a nonnegative integer");
    return std::stoul(text);
}

} // namespace detail

inline FamilySpec parse_family(const std::string& selector) {
    FamilySpec spec;
    const auto colon = selector.find(':');
    spec.name = selector.substr(0, colon);
    if (colon != std::string::npos) {
        std::string rest = selector.substr(colon + 1);
        std::size_t pos = 0;
        while (pos < rest.size()) {
            auto end = rest.find(',', pos);
            if (end == std::string::npos) end = rest.size();
            const std::string item = rest.substr(pos, end - pos);
            const auto eq = item.find('=');
            if (eq == std::string::npos)
                throw usage_error("bad selector '" + selector + "': expected key=value, got '" + item + "'");
            const std::string key = item.substr(0, eq);
            const unsigned long value = detail::parse_family_number(item.substr(eq + 1), selector);
            if (key == "r") {
                spec.r = static_cast<unsigned>(value);
                spec.has_r = true;
            } else if (key == "l") {
                spec.l = value;
                spec.has_l = true;
            } else if (key == "k") {
                spec.k = value;
                spec.has_k = true;
            } else {
                throw usage_error("bad selector '" + selector + "': unknown key '" + key + "'");
            }
            pos = end + 1;
        }
    }
    return spec;
}

inline Arrangement family_arrangement(const std::string& selector) {
    const FamilySpec spec = parse_family(selector);
    auto need = [&](bool have, const char* key) {
        if (!have)
            throw usage_error("selector '" + selector + "' is missing required parameter '" + key + "'");
    };
    if (spec.name == "boolean") {
        need(spec.has_l, "l");
        return boolean_arrangement(spec.l);
    }
    if (spec.name == "braid") {
        need(spec.has_l, "l");
        return braid_arrangement(spec.l);
    }
    if (spec.name == "intermediate") {
        need(spec.has_r, "r");
        need(spec.has_l, "l");
        need(spec.has_k, "k");
        return intermediate_arrangement(spec.r, spec.l, spec.k);
    }
    if (spec.name == "monomial_full") {
        need(spec.has_r, "r");
        need(spec.has_l, "l");
        return monomial_full_arrangement(spec.r, spec.l);
    }
    if (spec.name == "monomial_g") {
        need(spec.has_r, "r");
        need(spec.has_l, "l");
        return monomial_g_arrangement(spec.r, spec.l);
    }
    throw usage_error("unknown family '" + spec.name + "'");
}

/// The flat X spanned by the first coordinate axis, realized as the closure
/// of the hyperplanes containing it (those whose normal has zero first
/// entry). For an intermediate arrangement with k >= 1 the localization A_X
/// is again an intermediate arrangement, one dimension down.
inline Flat example_localization_flat(const Arrangement& a) {
    if (a.dim() < 4) throw usage_error("example_localization_flat: need dimension at least 4");
    if (a.order() < 3) throw usage_error("example_localization_flat: need order at least 3");
    // hyperplanes through e_1: alpha(e_1) = 0, i.e. first normal coordinate 0
    std::vector<std::size_t> through;
    for (std::size_t h = 0; h < a.size(); ++h)
        if (a[h].normal[0].is_zero()) through.push_back(h);
    if (through.empty()) throw usage_error("example_localization_flat: no hyperplane contains e_1");
    return flat_closure(a, through);
}

} // namespace hyperarr
