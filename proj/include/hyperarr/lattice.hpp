#pragma once

#include <algorithm>
#include <unordered_map>
#include <vector>

#include "hyperarr/arrangement.hpp"
#include "hyperarr/polynomial.hpp"

namespace hyperarr {

/// Intersection lattice of an arrangement: all flats grouped by codimension
/// with their Moebius numbers. Flats are ordered by (codimension, lex
/// incidence), so the layout is deterministic. The ambient space V is the
/// unique codimension-0 flat with mu(V) = 1.
struct Lattice {
    std::vector<Flat> flats;
    std::vector<Int> mobius;                                       // parallel to flats
    std::unordered_map<IndexSet, std::size_t, IndexSet::Hash> index; // incidence -> position

    std::size_t size() const { return flats.size(); }

    const Flat* find(const IndexSet& incidence) const {
        auto it = index.find(incidence);
        return it == index.end() ? nullptr : &flats[it->second];
    }
};

/// Breadth-first closure enumeration by codimension: each flat of
/// codimension c is extended by every non-incident hyperplane, the closure of
/// the enlarged span is taken, and duplicates are dropped by incidence set.
/// Moebius numbers then follow the recursion mu(V) = 1,
/// mu(X) = -sum of mu(Y) over flats Y with incidence(Y) strictly inside
/// incidence(X).
inline Lattice build_lattice(const Arrangement& a) {
    Lattice lat;
    std::vector<std::vector<Flat>> levels; // levels[c] = flats of codimension c
    levels.emplace_back();
    levels[0].push_back(top_flat(a));

    std::unordered_map<IndexSet, std::size_t, IndexSet::Hash> seen_level;
    for (std::size_t codim = 0; !levels[codim].empty(); ++codim) {
        levels.emplace_back();
        auto& next = levels[codim + 1];
        seen_level.clear();
        for (const Flat& x : levels[codim]) {
            if (x.dim == 0) continue;
            for (std::size_t h = 0; h < a.size(); ++h) {
                if (x.incidence.test(h)) continue;
                EchelonBasis span = x.span;
                span.insert(a[h].normal); // always independent: h is not incident
                IndexSet incidence(a.size());
                for (std::size_t i = 0; i < a.size(); ++i)
                    if (span.contains(a[i].normal)) incidence.set(i);
                if (seen_level.emplace(incidence, next.size()).second) {
                    const std::size_t fdim = a.dim() - span.rank(); // before span is moved from
                    next.push_back(Flat(std::move(incidence), fdim, std::move(span)));
                }
            }
        }
        std::sort(next.begin(), next.end(),
                  [](const Flat& l, const Flat& r) { return IndexSet::lex_less(l.incidence, r.incidence); });
        if (next.empty()) break;
    }

    for (auto& level : levels)
        for (Flat& f : level) {
            lat.index.emplace(f.incidence, lat.flats.size());
            lat.flats.push_back(std::move(f));
        }

    lat.mobius.assign(lat.flats.size(), Int(0));
    for (std::size_t i = 0; i < lat.flats.size(); ++i) {
        if (i == 0) {
            lat.mobius[0] = 1;
            continue;
        }
        Int acc(0);
        for (std::size_t j = 0; j < i; ++j)
            if (lat.flats[j].incidence.subset_of(lat.flats[i].incidence)) acc += lat.mobius[j];
        lat.mobius[i] = -acc;
    }
    return lat;
}

/// chi(A, t) = sum over flats of mu(X) t^dim(X); monic of degree dim(A).
inline CharPoly char_poly(const Lattice& lat, std::size_t ambient_dim) {
    std::vector<Int> coeffs(ambient_dim + 1, Int(0));
    for (std::size_t i = 0; i < lat.flats.size(); ++i) coeffs[lat.flats[i].dim] += lat.mobius[i];
    return CharPoly(std::move(coeffs));
}

inline CharPoly char_poly(const Arrangement& a) { return char_poly(build_lattice(a), a.dim()); }

/// Every flat, ordered by (codimension, lexicographic incidence set).
inline std::vector<Flat> all_flats(const Arrangement& a) { return build_lattice(a).flats; }

} // namespace hyperarr
