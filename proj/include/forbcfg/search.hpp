#pragma once

// Exact forb computation by branch-and-bound over the 2^m candidate columns.
// State is the per-split match count (a split is a disjoint (R1, R0) row-set
// pair with |R1| = k, |R0| = l); a matrix avoids q·(1_k 0_l) exactly when
// every split's count stays below q.  Supports a per-column multiplicity cap
// (1 = simple matrices) and a column-sum restriction, which together express
// the design-style searches.

#include <algorithm>
#include <cstdint>
#include <iostream>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "bitmatrix.hpp"
#include "bounds.hpp"
#include "detect.hpp"
#include "pattern.hpp"

namespace forbcfg {

struct SearchProblem {
    int m = 0;
    Pattern pattern;
    int cap = 1;  // max copies of any single column; 1 = simple mode
    std::optional<std::vector<int>> allowed_sums;  // nullopt = all sums 0..m
    std::vector<std::uint64_t> forced_include;     // columns every solution must contain
    bool limit_override = false;
};

struct SearchResult {
    long long max_columns = 0;
    BitMatrix witness;
    unsigned long long nodes_explored = 0;
    bool proof_of_optimality = false;
};

namespace detail {

struct SplitTable {
    std::vector<std::uint64_t> r1, r0;  // parallel arrays of row masks
    int size() const { return static_cast<int>(r1.size()); }
};

inline SplitTable build_splits(int m, int k, int l) {
    SplitTable t;
    for_each_split(m, k, l, [&](const std::vector<int>&, const std::vector<int>&,
                                std::uint64_t ones, std::uint64_t zeros) {
        t.r1.push_back(ones);
        t.r0.push_back(zeros);
        return false;
    });
    return t;
}

inline std::vector<int> matched_splits(const SplitTable& t, std::uint64_t col) {
    std::vector<int> out;
    for (int s = 0; s < t.size(); ++s)
        if ((col & t.r1[static_cast<size_t>(s)]) == t.r1[static_cast<size_t>(s)] &&
            (col & t.r0[static_cast<size_t>(s)]) == 0)
            out.push_back(s);
    return out;
}

struct ForbSearch {
    int q = 0, cap = 1, m = 0;
    std::vector<std::vector<int>> matched;       // per candidate: split indices
    std::vector<long long> weight;               // per candidate: configs_per_column
    std::vector<std::uint64_t> cand;             // ascending candidate columns
    std::vector<int> count;                      // per split: current match count
    std::vector<int> copies;                     // per candidate: copies already taken
    bool use_capacity = false;
    long long capacity_total = 0, weight_used = 0;
    std::vector<std::uint64_t> cur;              // current column multiset (ordered)
    long long best = -1;
    std::vector<std::uint64_t> best_cols;
    unsigned long long nodes = 0;

    int maxadd(int ci) const {
        int room = cap - copies[static_cast<size_t>(ci)];
        for (int s : matched[static_cast<size_t>(ci)])
            room = std::min(room, q - 1 - count[static_cast<size_t>(s)]);
        return std::max(room, 0);
    }

    // Upper bound on columns still addable from candidates idx.. given the
    // current split counts: per-candidate headroom, tightened by the total
    // split capacity (each added column of weight w consumes w of the
    // remaining (q-1)*#splits budget; cheapest columns first maximizes the
    // count, zero-weight columns are free).
    long long suffix_bound(size_t idx) {
        long long plain = 0;
        long long cap_left = capacity_total - weight_used;
        // bucket additions by weight via column sum: weight depends only on sum
        std::vector<std::pair<long long, long long>> buckets;  // (weight, addable)
        for (size_t j = idx; j < cand.size(); ++j) {
            int add = maxadd(static_cast<int>(j));
            if (add == 0) continue;
            plain += add;
            if (use_capacity) buckets.push_back({weight[j], add});
        }
        if (!use_capacity) return plain;
        std::sort(buckets.begin(), buckets.end());
        long long by_capacity = 0;
        for (const auto& [w, add] : buckets) {
            if (w == 0) {
                by_capacity += add;
                continue;
            }
            if (cap_left <= 0) break;
            long long take = std::min<long long>(add, cap_left / w);
            by_capacity += take;
            cap_left -= take * w;
            if (take < add) break;  // heavier buckets cannot fit either
        }
        return std::min(plain, by_capacity);
    }

    void rec(size_t idx) {
        ++nodes;
        long long here = static_cast<long long>(cur.size());
        if (here > best) {
            best = here;
            best_cols = cur;
        }
        if (idx >= cand.size()) return;
        if (here + suffix_bound(idx) <= best) return;  // cannot strictly improve
        int top = maxadd(static_cast<int>(idx));
        for (int t = top; t >= 0; --t) {
            for (int c = 0; c < t; ++c) {
                for (int s : matched[idx]) ++count[static_cast<size_t>(s)];
                cur.push_back(cand[idx]);
            }
            copies[idx] += t;
            weight_used += t * weight[idx];
            rec(idx + 1);
            copies[idx] -= t;
            weight_used -= t * weight[idx];
            for (int c = 0; c < t; ++c) {
                for (int s : matched[idx]) --count[static_cast<size_t>(s)];
                cur.pop_back();
            }
        }
    }
};

}  // namespace detail

// Exact maximum column count over matrices avoiding the pattern under the
// problem's mode, with the lexicographically least optimal witness (columns
// ascending, ties between optima resolved toward more copies of smaller
// columns).  Default scale limits: m <= 6 with cap 1 and no sum restriction,
// m <= 7 otherwise; set limit_override to push past them (runtime grows
// doubly exponentially in m).
inline SearchResult forb_exact(const SearchProblem& p) {
    validate_pattern(p.pattern);
    if (p.m < 1 || p.m > 63) throw std::invalid_argument("forb_exact: need 1 <= m <= 63");
    if (p.pattern.k + p.pattern.l > p.m)
        throw std::invalid_argument("forb_exact: pattern rows k+l exceed m");
    if (p.cap < 1) throw std::invalid_argument("forb_exact: multiplicity cap must be >= 1");
    const bool plain_simple = p.cap == 1 && !p.allowed_sums;
    const int limit = plain_simple ? 6 : 7;
    if (p.m > limit) {
        if (!p.limit_override)
            throw std::invalid_argument(
                "forb_exact: m = " + std::to_string(p.m) + " exceeds the default limit " +
                std::to_string(limit) +
                " for this mode; set limit_override to proceed (cost grows doubly "
                "exponentially in m)");
        std::cerr << "forb_exact: warning: m = " << p.m
                  << " is past the default limit; this may run a very long time\n";
    }

    detail::ForbSearch S;
    S.q = p.pattern.q;
    S.cap = p.cap;
    S.m = p.m;
    detail::SplitTable splits = detail::build_splits(p.m, p.pattern.k, p.pattern.l);
    S.count.assign(static_cast<size_t>(splits.size()), 0);

    std::set<int> sums;
    if (p.allowed_sums) {
        for (int s : *p.allowed_sums) {
            if (s < 0 || s > p.m)
                throw std::invalid_argument("forb_exact: allowed sum " + std::to_string(s) +
                                            " outside 0.." + std::to_string(p.m));
            sums.insert(s);
        }
    }
    const std::uint64_t top = p.m == 63 ? ~0ull >> 1 : (1ull << p.m) - 1;
    for (std::uint64_t c = 0;; ++c) {
        if (!p.allowed_sums || sums.count(std::popcount(c))) {
            S.cand.push_back(c);
            S.matched.push_back(detail::matched_splits(splits, c));
            S.weight.push_back(
                configs_per_column(p.m, std::popcount(c), p.pattern.k, p.pattern.l));
        }
        if (c == top) break;
    }
    S.copies.assign(S.cand.size(), 0);

    const int k = p.pattern.k, l = p.pattern.l;
    S.use_capacity = (k == 1 && l == 1) || (k == 2 && l == 1) || (k == 2 && l == 2);
    if (S.use_capacity) S.capacity_total = pigeonhole_total_bound(p.m, p.pattern.q, k, l);

    // Forced columns are applied before the search; they count toward the
    // result and the witness.
    for (std::uint64_t f : p.forced_include) {
        if (f > top) throw std::invalid_argument("forb_exact: forced column out of range");
        auto it = std::lower_bound(S.cand.begin(), S.cand.end(), f);
        if (it == S.cand.end() || *it != f)
            throw std::invalid_argument("forb_exact: forced column violates the sum restriction");
        size_t ci = static_cast<size_t>(it - S.cand.begin());
        if (++S.copies[ci] > p.cap)
            throw std::invalid_argument("forb_exact: forced columns exceed the multiplicity cap");
        for (int s : S.matched[ci])
            if (++S.count[static_cast<size_t>(s)] > p.pattern.q - 1)
                throw std::invalid_argument("forb_exact: forced columns already contain the pattern");
        S.weight_used += S.weight[ci];
        S.cur.push_back(f);
    }
    std::sort(S.cur.begin(), S.cur.end());

    S.rec(0);

    SearchResult r;
    r.max_columns = S.best;
    std::sort(S.best_cols.begin(), S.best_cols.end());
    r.witness = BitMatrix(p.m, S.best_cols);
    r.nodes_explored = S.nodes;
    r.proof_of_optimality = true;
    return r;
}

// First column (ascending bitmask) whose addition keeps A pattern-avoiding
// and mode-respecting, or nullopt when A is maximal.  cap = 1 restricts to
// columns not already present (simple mode).
inline std::optional<std::uint64_t> is_maximal(const BitMatrix& A, const Pattern& P, int cap = 1,
                                               const std::optional<std::vector<int>>& allowed_sums =
                                                   std::nullopt) {
    validate_pattern(P);
    if (P.k + P.l > A.m) throw std::invalid_argument("is_maximal: pattern rows k+l exceed m");
    if (A.m > 24)
        throw std::invalid_argument("is_maximal: m > 24 would scan over 16M candidate columns");
    detail::SplitTable splits = detail::build_splits(A.m, P.k, P.l);
    std::vector<int> count(static_cast<size_t>(splits.size()), 0);
    for (std::uint64_t col : A.cols) {
        for (int s : detail::matched_splits(splits, col))
            if (++count[static_cast<size_t>(s)] > P.q - 1)
                throw std::domain_error("is_maximal: matrix already contains " + format_pattern(P));
    }
    std::set<int> sums;
    if (allowed_sums) sums.insert(allowed_sums->begin(), allowed_sums->end());
    const std::uint64_t top = A.m == 63 ? ~0ull >> 1 : (1ull << A.m) - 1;
    for (std::uint64_t c = 0;; ++c) {
        bool ok = true;
        if (allowed_sums && !sums.count(std::popcount(c))) ok = false;
        if (ok) {
            long long have = std::count(A.cols.begin(), A.cols.end(), c);
            if (have >= cap) ok = false;
        }
        if (ok) {
            for (int s : detail::matched_splits(splits, c))
                if (count[static_cast<size_t>(s)] > P.q - 2) {
                    ok = false;
                    break;
                }
        }
        if (ok) return c;
        if (c == top) return std::nullopt;
    }
}

// Exact maximum column count with sums restricted to [3, v-1] (shape (2,1))
// or [3, v-3] (shape (2,2)), per-column multiplicity capped at lambda, and
// the pattern (lambda+1)·(1_k 0_l) forbidden — the search-side view of the
// triple-system column bound lambda/3 * C(v,2).
struct DesignBoundReport {
    SearchResult search;
    long long design_bound = 0;   // floor(lambda * C(v,2) / 3)
    bool achieves_design_bound = false;
};

inline DesignBoundReport design_bound_check(int v, int lambda, int k, int l,
                                            bool limit_override = false) {
    if (lambda < 1) throw std::invalid_argument("design_bound_check: need lambda >= 1");
    if (!((k == 2 && l == 1) || (k == 2 && l == 2)))
        throw std::invalid_argument("design_bound_check: shape must be (2,1) or (2,2)");
    int hi = l == 1 ? v - 1 : v - 3;
    if (v < 4 || hi < 3)
        throw std::invalid_argument("design_bound_check: v too small for the sum range");
    SearchProblem p;
    p.m = v;
    p.pattern = Pattern{lambda + 1, k, l};
    p.cap = lambda;
    std::vector<int> sums;
    for (int s = 3; s <= hi; ++s) sums.push_back(s);
    p.allowed_sums = sums;
    p.limit_override = limit_override;
    DesignBoundReport r;
    r.search = forb_exact(p);
    r.design_bound = floor_div(static_cast<long long>(lambda) * binom(v, 2), 3);
    r.achieves_design_bound = r.search.max_columns == r.design_bound;
    return r;
}

}  // namespace forbcfg
