#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "hyperarr/errors.hpp"
#include "hyperarr/linalg.hpp"

namespace hyperarr {

/// Set of hyperplane indices, used as the identity of a flat.
class IndexSet {
public:
    IndexSet() = default;
    explicit IndexSet(std::size_t universe) : words_((universe + 63) / 64, 0) {}

    void set(std::size_t i) { words_[i / 64] |= std::uint64_t(1) << (i % 64); }
    bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1; }
    std::size_t count() const {
        std::size_t n = 0;
        for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
        return n;
    }
    bool subset_of(const IndexSet& other) const {
        for (std::size_t k = 0; k < words_.size(); ++k)
            if (words_[k] & ~other.words_[k]) return false;
        return true;
    }
    std::vector<std::size_t> indices() const {
        std::vector<std::size_t> out;
        for (std::size_t k = 0; k < words_.size(); ++k)
            for (std::uint64_t w = words_[k]; w; w &= w - 1)
                out.push_back(64 * k + static_cast<std::size_t>(std::countr_zero(w)));
        return out;
    }

    friend bool operator==(const IndexSet& a, const IndexSet& b) = default;

    /// Lexicographic order on the bit string b_0 b_1 ... (bit i = membership
    /// of hyperplane i); a fixed total order used to sort flats.
    static bool lex_less(const IndexSet& a, const IndexSet& b) {
        for (std::size_t k = 0; k < a.words_.size(); ++k) {
            if (a.words_[k] == b.words_[k]) continue;
            const std::uint64_t diff = a.words_[k] ^ b.words_[k];
            const int bit = std::countr_zero(diff);
            return !((a.words_[k] >> bit) & 1);
        }
        return false;
    }

    struct Hash {
        std::size_t operator()(const IndexSet& s) const {
            std::size_t h = 1469598103934665603ull;
            for (auto w : s.words_) {
                h ^= static_cast<std::size_t>(w);
                h *= 1099511628211ull;
            }
            return h;
        }
    };

private:
    std::vector<std::uint64_t> words_;
};

struct Hyperplane {
    CycVec normal; // canonical: the first nonzero coordinate equals 1

    friend bool operator==(const Hyperplane& a, const Hyperplane& b) { return a.normal == b.normal; }
};

namespace detail {

inline std::string cyc_vec_key(const CycVec& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ";";
        s += v[i].key();
    }
    return s;
}

} // namespace detail

/// Central arrangement of hyperplanes in K^dim, K = Q(zeta_order). The
/// hyperplane list is duplicate-free and sorted by the serialized canonical
/// normal, so equal arrangements have equal representations and hyperplane
/// indices are reproducible.
class Arrangement {
public:
    static Arrangement make(unsigned long order, std::size_t dim, const std::vector<CycVec>& normals) {
        Arrangement a;
        a.order_ = order;
        a.dim_ = dim;
        if (order == 0) throw usage_error("Arrangement: order must be positive");
        std::map<std::string, CycVec> canonical; // key -> normalized normal, sorted & deduped
        for (const CycVec& raw : normals) {
            if (raw.size() != dim) throw usage_error("Arrangement: normal has wrong length");
            for (const Cyc& c : raw)
                if (c.order() != order) throw usage_error("Arrangement: coefficient order mismatch");
            CycVec n = normalize_normal(raw);
            canonical.emplace(detail::cyc_vec_key(n), std::move(n));
        }
        a.hyperplanes_.reserve(canonical.size());
        a.keys_.reserve(canonical.size());
        for (auto& [key, normal] : canonical) {
            a.hyperplanes_.push_back(Hyperplane{std::move(normal)});
            a.keys_.push_back(key);
        }
        a.build_key();
        return a;
    }

    /// The empty arrangement Phi_dim (dim = 0 included).
    static Arrangement empty(std::size_t dim, unsigned long order = 1) {
        Arrangement a;
        a.order_ = order;
        a.dim_ = dim;
        a.build_key();
        return a;
    }

    unsigned long order() const { return order_; }
    std::size_t dim() const { return dim_; }
    std::size_t size() const { return hyperplanes_.size(); }
    bool is_empty() const { return hyperplanes_.empty(); }
    const std::vector<Hyperplane>& hyperplanes() const { return hyperplanes_; }
    const Hyperplane& operator[](std::size_t i) const { return hyperplanes_[i]; }
    const std::string& normal_key(std::size_t i) const { return keys_[i]; }

    /// Canonical serialized form: order, dimension and the sorted normals.
    /// Two arrangements are equal iff their keys are equal.
    const std::string& canonical_key() const { return key_; }

    friend bool operator==(const Arrangement& a, const Arrangement& b) { return a.key_ == b.key_; }

    /// Scale so the first nonzero coordinate is 1; rejects the zero vector.
    static CycVec normalize_normal(const CycVec& raw) {
        std::size_t lead = raw.size();
        for (std::size_t i = 0; i < raw.size(); ++i) {
            if (!raw[i].is_zero()) {
                lead = i;
                break;
            }
        }
        if (lead == raw.size()) throw usage_error("Arrangement: zero normal vector");
        CycVec n(raw);
        if (!n[lead].is_one()) {
            const Cyc inv = cyc_inv(n[lead]);
            for (Cyc& c : n) c = c * inv;
        }
        return n;
    }

private:
    void build_key() {
        key_ = std::to_string(order_) + ":" + std::to_string(dim_) + ":";
        for (std::size_t i = 0; i < keys_.size(); ++i) {
            if (i) key_ += "|";
            key_ += keys_[i];
        }
    }

    unsigned long order_ = 1;
    std::size_t dim_ = 0;
    std::vector<Hyperplane> hyperplanes_;
    std::vector<std::string> keys_;
    std::string key_;
};

/// Intersection subspace of an arrangement, identified by the set of
/// hyperplanes containing it (a closed incidence set) together with its
/// dimension and the echelon basis of the incident normal span.
struct Flat {
    IndexSet incidence;
    std::size_t dim = 0;
    EchelonBasis span;

    Flat(IndexSet inc, std::size_t d, EchelonBasis s) : incidence(std::move(inc)), dim(d), span(std::move(s)) {}
};

/// Closure of a set of hyperplanes: the flat X = intersection of the chosen
/// hyperplanes, whose incidence set collects every hyperplane containing X.
inline Flat flat_closure(const Arrangement& a, const std::vector<std::size_t>& chosen) {
    EchelonBasis span(a.dim(), a.order());
    for (std::size_t i : chosen) {
        if (i >= a.size()) throw usage_error("flat_closure: hyperplane index out of range");
        span.insert(a[i].normal);
    }
    IndexSet incidence(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        if (span.contains(a[i].normal)) incidence.set(i);
    const std::size_t dim = a.dim() - span.rank(); // before span is moved from
    return Flat(std::move(incidence), dim, std::move(span));
}

/// The ambient space V as a flat (empty incidence, full dimension).
inline Flat top_flat(const Arrangement& a) { return flat_closure(a, {}); }

inline Flat flat_of_hyperplane(const Arrangement& a, std::size_t i) {
    if (i >= a.size()) throw usage_error("flat_of_hyperplane: index out of range");
    return flat_closure(a, {i});
}

/// Recompute the closure of X's incidence set and compare; used to honor the
/// "X must be a flat of A" preconditions.
inline bool is_flat_of(const Arrangement& a, const Flat& x) {
    Flat again = flat_closure(a, x.incidence.indices());
    return again.incidence == x.incidence && again.dim == x.dim;
}

} // namespace hyperarr
