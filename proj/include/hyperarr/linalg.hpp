#pragma once

#include <cstddef>
#include <vector>

#include "hyperarr/cyclotomic.hpp"
#include "hyperarr/errors.hpp"

namespace hyperarr {

using CycVec = std::vector<Cyc>;

/// Row space in reduced row-echelon form over Q(zeta_N), with exact zero
/// tests. This is the workhorse behind rank, flat closures and restriction
/// coordinates: pivot entries are 1, pivot columns are clear elsewhere, and
/// pivot columns increase row by row, so the basis of a subspace is unique
/// and deterministic.
class EchelonBasis {
public:
    EchelonBasis(std::size_t dim, unsigned long order) : dim_(dim), order_(order) {}

    std::size_t dim() const { return dim_; }
    unsigned long order() const { return order_; }
    std::size_t rank() const { return rows_.size(); }
    const std::vector<CycVec>& rows() const { return rows_; }
    const std::vector<std::size_t>& pivots() const { return pivots_; }

    /// Eliminate v against the basis; the returned residual has zeros in all
    /// pivot columns.
    CycVec reduce(CycVec v) const {
        check(v);
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            const Cyc c = v[pivots_[r]]; // by value: the loop below writes v[pivot]
            if (c.is_zero()) continue;
            for (std::size_t j = 0; j < dim_; ++j)
                if (!rows_[r][j].is_zero()) v[j] = v[j] - c * rows_[r][j];
        }
        return v;
    }

    bool contains(const CycVec& v) const {
        for (const Cyc& c : reduce(v))
            if (!c.is_zero()) return false;
        return true;
    }

    /// Insert v into the span. Returns false (and leaves the basis unchanged)
    /// when v is already contained.
    bool insert(const CycVec& v) {
        CycVec res = reduce(v);
        std::size_t pivot = dim_;
        for (std::size_t j = 0; j < dim_; ++j) {
            if (!res[j].is_zero()) {
                pivot = j;
                break;
            }
        }
        if (pivot == dim_) return false;
        const Cyc inv = cyc_inv(res[pivot]);
        for (std::size_t j = 0; j < dim_; ++j)
            if (!res[j].is_zero()) res[j] = res[j] * inv;
        // clear the new pivot column in the existing rows
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            const Cyc c = rows_[r][pivot];
            if (c.is_zero()) continue;
            for (std::size_t j = 0; j < dim_; ++j)
                if (!res[j].is_zero()) rows_[r][j] = rows_[r][j] - c * res[j];
        }
        // keep pivot columns sorted
        std::size_t pos = 0;
        while (pos < pivots_.size() && pivots_[pos] < pivot) ++pos;
        rows_.insert(rows_.begin() + pos, std::move(res));
        pivots_.insert(pivots_.begin() + pos, pivot);
        return true;
    }

    /// Basis of the kernel of the row space (as a set of row vectors), one
    /// vector per free column in ascending column order. For the empty basis
    /// this is the standard basis, so downstream coordinates are stable.
    std::vector<CycVec> nullspace() const {
        std::vector<bool> is_pivot(dim_, false);
        for (std::size_t p : pivots_) is_pivot[p] = true;
        std::vector<CycVec> basis;
        basis.reserve(dim_ - rank());
        for (std::size_t f = 0; f < dim_; ++f) {
            if (is_pivot[f]) continue;
            CycVec v(dim_, Cyc(order_));
            v[f] = Cyc::from_rat(Rat(1), order_);
            for (std::size_t r = 0; r < rows_.size(); ++r) v[pivots_[r]] = -rows_[r][f];
            basis.push_back(std::move(v));
        }
        return basis;
    }

private:
    void check(const CycVec& v) const {
        if (v.size() != dim_) throw usage_error("EchelonBasis: vector length mismatch");
        for (const Cyc& c : v)
            if (c.order() != order_) throw usage_error("EchelonBasis: coefficient order mismatch");
    }

    std::size_t dim_;
    unsigned long order_;
    std::vector<CycVec> rows_;
    std::vector<std::size_t> pivots_;
};

/// Rank of a list of vectors over Q(zeta_N).
inline std::size_t rank_of(const std::vector<CycVec>& vectors, std::size_t dim, unsigned long order) {
    EchelonBasis basis(dim, order);
    for (const CycVec& v : vectors) basis.insert(v);
    return basis.rank();
}

} // namespace hyperarr
