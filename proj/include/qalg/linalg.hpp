#pragma once

// Exact sparse row echelon over the Scalar field. Each stored row is monic
// at its pivot, and the pivot is the row's largest column index, so the
// remainder of a vector modulo the row space is unique regardless of the
// order in which rows were inserted.

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <random>
#include <utility>
#include <vector>

#include "qalg/scalar.hpp"

namespace qalg {

using SparseRow = std::map<std::size_t, Scalar>;

inline void axpy(SparseRow& v, const Scalar& c, const SparseRow& r) {
    for (const auto& [col, x] : r) {
        auto it = v.find(col);
        if (it == v.end()) {
            v.emplace(col, c * x);
        } else {
            it->second += c * x;
            if (it->second.is_zero()) v.erase(it);
        }
    }
}

inline std::size_t row_weight(const SparseRow& r) {
    std::size_t w = 0;
    for (const auto& [c, x] : r) w += 1 + 4 * static_cast<std::size_t>(x.variable_count()) + x.num().size() + x.den().size();
    return w;
}

/// Order in which rows are fed to elimination.
enum class RowOrder { simplest_first, as_given, reversed, shuffled };

class Echelon {
public:
    /// Insert a row; returns true if it enlarged the row space.
    bool insert(SparseRow r) {
        r = reduce(std::move(r));
        if (r.empty()) return false;
        auto lead = std::prev(r.end());
        std::size_t col = lead->first;
        Scalar inv = lead->second.inverse();
        if (!inv.is_one())
            for (auto& [c, x] : r) x = x * inv;
        pivots_.emplace(col, std::move(r));
        return true;
    }

    /// Remainder of v modulo the row space.
    SparseRow reduce(SparseRow v) const {
        if (pivots_.empty()) return v;
        auto it = v.end();
        while (it != v.begin()) {
            --it;
            auto p = pivots_.find(it->first);
            if (p == pivots_.end()) continue;
            Scalar c = -it->second;
            std::size_t col = it->first;
            axpy(v, c, p->second);
            // Everything touched lies strictly below col.
            it = v.lower_bound(col);
        }
        return v;
    }

    bool contains(const SparseRow& v) const { return reduce(v).empty(); }
    std::size_t rank() const { return pivots_.size(); }
    bool is_pivot(std::size_t col) const { return pivots_.count(col) != 0; }
    const std::map<std::size_t, SparseRow>& pivots() const { return pivots_; }

private:
    std::map<std::size_t, SparseRow> pivots_;
};

inline std::vector<std::size_t> row_permutation(const std::vector<SparseRow>& rows, RowOrder order, unsigned seed = 0) {
    std::vector<std::size_t> idx(rows.size());
    std::iota(idx.begin(), idx.end(), 0);
    switch (order) {
        case RowOrder::simplest_first: {
            std::vector<std::size_t> w(rows.size());
            for (std::size_t k = 0; k < rows.size(); ++k) w[k] = row_weight(rows[k]);
            std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return w[a] < w[b]; });
            break;
        }
        case RowOrder::as_given:
            break;
        case RowOrder::reversed:
            std::reverse(idx.begin(), idx.end());
            break;
        case RowOrder::shuffled: {
            std::mt19937 rng(seed);
            std::shuffle(idx.begin(), idx.end(), rng);
            break;
        }
    }
    return idx;
}

inline Echelon echelon_of(const std::vector<SparseRow>& rows, RowOrder order = RowOrder::simplest_first,
                          unsigned seed = 0) {
    Echelon e;
    for (std::size_t k : row_permutation(rows, order, seed)) e.insert(rows[k]);
    return e;
}

inline SparseRow to_sparse(const std::vector<Scalar>& dense) {
    SparseRow r;
    for (std::size_t k = 0; k < dense.size(); ++k)
        if (!dense[k].is_zero()) r.emplace(k, dense[k]);
    return r;
}

inline std::size_t rank_of(const std::vector<std::vector<Scalar>>& m) {
    std::vector<SparseRow> rows;
    for (const auto& r : m) rows.push_back(to_sparse(r));
    return echelon_of(rows).rank();
}

/// Basis of {x : m x = 0} for an r×n matrix.
inline std::vector<std::vector<Scalar>> nullspace(const std::vector<std::vector<Scalar>>& m, std::size_t n) {
    // Rows of [m^T | I] with the m^T block on the high columns.
    std::vector<SparseRow> rows(n);
    for (std::size_t j = 0; j < n; ++j) {
        rows[j].emplace(j, Scalar(1));
        for (std::size_t i = 0; i < m.size(); ++i)
            if (!m[i][j].is_zero()) rows[j].emplace(n + i, m[i][j]);
    }
    Echelon e = echelon_of(rows, RowOrder::as_given);
    std::vector<std::vector<Scalar>> out;
    for (const auto& [col, row] : e.pivots()) {
        if (col >= n) continue;
        std::vector<Scalar> v(n);
        for (const auto& [c, x] : row) v[c] = x;
        out.push_back(std::move(v));
    }
    return out;
}

/// True when the two families of vectors span the same subspace.
inline bool same_span(const std::vector<SparseRow>& u, const std::vector<SparseRow>& v) {
    Echelon eu = echelon_of(u), ev = echelon_of(v);
    if (eu.rank() != ev.rank()) return false;
    return std::all_of(v.begin(), v.end(), [&](const SparseRow& r) { return eu.contains(r); });
}

}  // namespace qalg
