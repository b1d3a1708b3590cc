#pragma once

// Configuration containment: the specialized q·(1_k 0_l) family via row-split
// enumeration, and general (0,1)-pattern containment via backtracking over
// injective row maps.  A column "matches" a split (R1, R0) of disjoint row
// sets when it is all ones on R1 and all zeros on R0; A contains q·(1_k 0_l)
// exactly when some split with |R1| = k, |R0| = l is matched by at least q
// column positions (duplicate columns count separately).

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "bitmatrix.hpp"
#include "pattern.hpp"

namespace forbcfg {

struct SplitWitness {
    std::vector<int> row_ones;        // R1, ascending, 0-based rows
    std::vector<int> row_zeros;       // R0, ascending, disjoint from R1
    std::vector<int> column_indices;  // q distinct column positions, ascending
};

struct SplitCount {
    long long count = 0;              // maximum matched-column count over splits
    std::vector<int> row_ones;        // lexicographically least maximizing split
    std::vector<int> row_zeros;
};

namespace detail {

// Visit all (R1, R0) splits with |R1| = k, |R0| = l in lexicographic order of
// (R1, R0) as sorted row lists.  Visitor returns true to stop early.
// Advance v to the next size-subset of [0, universe) in lexicographic order;
// false once exhausted.
inline bool next_subset(std::vector<int>& v, int size, int universe) {
    int i = size - 1;
    while (i >= 0 && v[static_cast<size_t>(i)] == universe - size + i) --i;
    if (i < 0) return false;
    ++v[static_cast<size_t>(i)];
    for (int j = i + 1; j < size; ++j) v[static_cast<size_t>(j)] = v[static_cast<size_t>(j - 1)] + 1;
    return true;
}

template <typename F>
bool for_each_split(int m, int k, int l, F&& visit) {
    std::vector<int> r1(static_cast<size_t>(k)), r0(static_cast<size_t>(l));
    for (int i = 0; i < k; ++i) r1[static_cast<size_t>(i)] = i;
    while (true) {
        std::uint64_t ones_mask = 0;
        for (int r : r1) ones_mask |= 1ull << r;
        // R0 runs over l-subsets of the rows not in R1, lexicographically.
        std::vector<int> rest;
        rest.reserve(static_cast<size_t>(m - k));
        for (int r = 0; r < m; ++r)
            if (!((ones_mask >> r) & 1u)) rest.push_back(r);
        std::vector<int> idx(static_cast<size_t>(l));
        for (int i = 0; i < l; ++i) idx[static_cast<size_t>(i)] = i;
        while (true) {
            std::uint64_t zeros_mask = 0;
            for (int i = 0; i < l; ++i) {
                r0[static_cast<size_t>(i)] = rest[static_cast<size_t>(idx[static_cast<size_t>(i)])];
                zeros_mask |= 1ull << r0[static_cast<size_t>(i)];
            }
            if (visit(r1, r0, ones_mask, zeros_mask)) return true;
            if (l == 0 || !next_subset(idx, l, static_cast<int>(rest.size()))) break;
        }
        if (k == 0 || !next_subset(r1, k, m)) break;
    }
    return false;
}

}  // namespace detail

// Maximum number of columns matching any (k, l) split, with the
// lexicographically least maximizing split.  A avoids q·(1_k 0_l) iff
// count <= q - 1.
inline SplitCount max_split_count(const BitMatrix& A, int k, int l) {
    if (k < 0 || l < 0 || k + l > A.m)
        throw std::domain_error("max_split_count: need 0 <= k, 0 <= l, k + l <= m");
    SplitCount best;
    best.count = -1;
    detail::for_each_split(A.m, k, l, [&](const std::vector<int>& r1, const std::vector<int>& r0,
                                          std::uint64_t ones, std::uint64_t zeros) {
        long long c = 0;
        for (std::uint64_t col : A.cols)
            if ((col & ones) == ones && (col & zeros) == 0) ++c;
        if (c > best.count) {
            best.count = c;
            best.row_ones = r1;
            best.row_zeros = r0;
        }
        return false;
    });
    return best;
}

// Witness for q·(1_k 0_l) containment, or empty if A avoids the pattern.
// The witness is the lexicographically least by (R1, R0, column positions).
inline std::optional<SplitWitness> contains_pattern(const BitMatrix& A, const Pattern& P) {
    validate_pattern(P);
    if (P.k + P.l > A.m)
        throw std::domain_error("contains_pattern: pattern rows k + l = " +
                                std::to_string(P.k + P.l) + " exceed matrix rows m = " +
                                std::to_string(A.m));
    std::optional<SplitWitness> found;
    detail::for_each_split(A.m, P.k, P.l, [&](const std::vector<int>& r1, const std::vector<int>& r0,
                                              std::uint64_t ones, std::uint64_t zeros) {
        std::vector<int> cols;
        for (int j = 0; j < A.n(); ++j) {
            std::uint64_t col = A.cols[static_cast<size_t>(j)];
            if ((col & ones) == ones && (col & zeros) == 0) {
                cols.push_back(j);
                if (static_cast<int>(cols.size()) == P.q) break;
            }
        }
        if (static_cast<int>(cols.size()) >= P.q) {
            found = SplitWitness{r1, r0, std::move(cols)};
            return true;
        }
        return false;
    });
    return found;
}

struct GeneralWitness {
    std::vector<int> row_map;  // row_map[i] = row of A playing row i of F (injective)
    std::vector<int> col_map;  // col_map[j] = column position of A playing column j of F
};

// General configuration containment: F occurs in A when some injective row map
// and injective column-position map make all entries agree.  Backtracking over
// row assignments in lexicographic order with restriction-class counting: a
// partial row map survives only if, for every 0/1 pattern over the mapped rows,
// F has no more columns with that restriction than A has.  At full depth this
// counting is exact, so a witness column assignment always exists and is taken
// greedily (each F column gets the least unused compatible A position).
inline std::optional<GeneralWitness> contains_general(const BitMatrix& A, const BitMatrix& F) {
    if (F.m > A.m || F.n() > A.n()) return std::nullopt;
    if (F.n() == 0) {
        GeneralWitness w;
        for (int i = 0; i < F.m; ++i) w.row_map.push_back(i);
        return w;
    }

    const int fm = F.m;
    std::vector<int> row_map;                      // chosen A-rows, in F-row order
    std::vector<bool> used_row(static_cast<size_t>(A.m), false);

    // Restriction of every F column to F-rows 0..depth-1 packed as bits, and of
    // every A column to the currently mapped A rows in the same order.
    auto feasible = [&](int depth) {
        std::map<std::uint64_t, long long> need;
        for (std::uint64_t fc : F.cols) {
            std::uint64_t p = 0;
            for (int i = 0; i < depth; ++i) p |= ((fc >> i) & 1u) << i;
            need[p]++;
        }
        std::map<std::uint64_t, long long> have;
        for (std::uint64_t ac : A.cols) {
            std::uint64_t p = 0;
            for (int i = 0; i < depth; ++i) p |= ((ac >> row_map[static_cast<size_t>(i)]) & 1u) << i;
            have[p]++;
        }
        for (const auto& [p, cnt] : need)
            if (have[p] < cnt) return false;
        return true;
    };

    std::optional<GeneralWitness> result;
    auto assign_columns = [&]() {
        // Exact class counts guarantee success; assign ascending.
        GeneralWitness w;
        w.row_map = row_map;
        std::vector<bool> used_col(static_cast<size_t>(A.n()), false);
        for (std::uint64_t fc : F.cols) {
            int pick = -1;
            for (int j = 0; j < A.n(); ++j) {
                if (used_col[static_cast<size_t>(j)]) continue;
                bool ok = true;
                for (int i = 0; i < fm; ++i) {
                    if (((A.cols[static_cast<size_t>(j)] >> row_map[static_cast<size_t>(i)]) & 1u) !=
                        ((fc >> i) & 1u)) { ok = false; break; }
                }
                if (ok) { pick = j; break; }
            }
            if (pick < 0) return false;  // cannot happen when feasible(fm) held
            used_col[static_cast<size_t>(pick)] = true;
            w.col_map.push_back(pick);
        }
        result = std::move(w);
        return true;
    };

    auto rec = [&](auto&& self) -> bool {
        int depth = static_cast<int>(row_map.size());
        if (depth == fm) return assign_columns();
        for (int r = 0; r < A.m; ++r) {
            if (used_row[static_cast<size_t>(r)]) continue;
            row_map.push_back(r);
            used_row[static_cast<size_t>(r)] = true;
            if (feasible(depth + 1) && self(self)) return true;
            used_row[static_cast<size_t>(r)] = false;
            row_map.pop_back();
        }
        return false;
    };
    rec(rec);
    return result;
}

}  // namespace forbcfg
