#pragma once

#include <numeric>
#include <vector>

#include "hyperarr/arrangement.hpp"
#include "hyperarr/errors.hpp"

namespace hyperarr {

/// A_X: the hyperplanes of A containing the flat X, in the same ambient space.
inline Arrangement localize(const Arrangement& a, const Flat& x) {
    if (!is_flat_of(a, x)) throw usage_error("localize: X is not a flat of A");
    std::vector<CycVec> normals;
    for (std::size_t i : x.incidence.indices()) normals.push_back(a[i].normal);
    return Arrangement::make(a.order(), a.dim(), normals);
}

/// A^X: the arrangement induced on X by the hyperplanes not containing X.
/// Coordinates on X are fixed by the nullspace basis of the incident normal
/// span (reduced echelon form), so the result is deterministic.
/// restrict_to(A, V) = A.
inline Arrangement restrict_to(const Arrangement& a, const Flat& x) {
    if (!is_flat_of(a, x)) throw usage_error("restrict_to: X is not a flat of A");
    const std::vector<CycVec> basis = x.span.nullspace(); // x.dim vectors of length dim(A)
    std::vector<CycVec> normals;
    for (std::size_t h = 0; h < a.size(); ++h) {
        if (x.incidence.test(h)) continue;
        const CycVec& alpha = a[h].normal;
        CycVec beta(x.dim, Cyc(a.order()));
        for (std::size_t j = 0; j < basis.size(); ++j) {
            Cyc dot(a.order());
            for (std::size_t i = 0; i < alpha.size(); ++i)
                if (!alpha[i].is_zero() && !basis[j][i].is_zero()) dot = dot + alpha[i] * basis[j][i];
            beta[j] = std::move(dot);
        }
        normals.push_back(std::move(beta));
    }
    return Arrangement::make(a.order(), x.dim, normals);
}

/// A' = A minus the hyperplane at index h.
inline Arrangement deletion(const Arrangement& a, std::size_t h) {
    if (a.is_empty()) throw usage_error("deletion: arrangement is empty");
    if (h >= a.size()) throw usage_error("deletion: hyperplane index out of range");
    std::vector<CycVec> normals;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (i != h) normals.push_back(a[i].normal);
    return Arrangement::make(a.order(), a.dim(), normals);
}

/// The triple (A, A', A'') at a hyperplane: deletion and restriction to H.
struct Triple {
    Arrangement deleted;
    Arrangement restricted;
};

inline Triple triple(const Arrangement& a, std::size_t h) {
    return Triple{deletion(a, h), restrict_to(a, flat_of_hyperplane(a, h))};
}

/// Product arrangement in V1 + V2: each factor's hyperplanes are padded into
/// their coordinate block; coefficients are promoted to the lcm of the two
/// field orders. |A1 x A2| = |A1| + |A2|.
inline Arrangement product(const Arrangement& a1, const Arrangement& a2) {
    const unsigned long order = std::lcm(a1.order(), a2.order());
    const std::size_t dim = a1.dim() + a2.dim();
    std::vector<CycVec> normals;
    normals.reserve(a1.size() + a2.size());
    const Cyc zero(order);
    for (const Hyperplane& h : a1.hyperplanes()) {
        CycVec n(dim, zero);
        for (std::size_t i = 0; i < a1.dim(); ++i) n[i] = promote(h.normal[i], order);
        normals.push_back(std::move(n));
    }
    for (const Hyperplane& h : a2.hyperplanes()) {
        CycVec n(dim, zero);
        for (std::size_t i = 0; i < a2.dim(); ++i) n[a1.dim() + i] = promote(h.normal[i], order);
        normals.push_back(std::move(n));
    }
    return Arrangement::make(order, dim, normals);
}

} // namespace hyperarr
