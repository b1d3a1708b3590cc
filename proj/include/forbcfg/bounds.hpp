#pragma once

// Closed-form column-count bounds for m-rowed simple matrices avoiding
// q·(1_k 0_l), plus the pigeonhole capacities and the Turan edge threshold
// used by the counting arguments.  All arithmetic is exact (long long).

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bitmatrix.hpp"
#include "pattern.hpp"

namespace forbcfg {

// Exact maximum for the single-row split family q·(1_1 0_1), valid once
// m >= max(3q + 2, 8q - 19) with q >= 3: floor((q+1)m/2) + 2.
inline std::optional<long long> forb_formula_q10(int m, int q) {
    if (q < 3) return std::nullopt;
    long long threshold = std::max(3LL * q + 2, 8LL * q - 19);
    if (m < threshold) return std::nullopt;
    return floor_div((static_cast<long long>(q) + 1) * m, 2) + 2;
}

// Pigeonhole upper bound for q·(1_1 0_1), valid for all m >= 3, q >= 1:
// floor(((q+1)m(m-2) + (q-3)m) / (2(m-2))) + 2.
inline long long pigeonhole_q10(int m, int q) {
    if (m < 3) throw std::domain_error("pigeonhole_q10: need m >= 3");
    if (q < 1) throw std::domain_error("pigeonhole_q10: need q >= 1");
    long long mm = m, qq = q;
    long long num = (qq + 1) * mm * (mm - 2) + (qq - 3) * mm;
    return floor_div(num, 2 * (mm - 2)) + 2;
}

// A closed-form value together with whether the un-floored expression was an
// integer (the exact theorem value is only attained when it is).
struct FormulaValue {
    long long value = 0;
    bool integral = false;
};

// Asymptotic maximum for q·(1_2 0_1): m + 2 + (q+1)·C(m,2)/3, exact when
// divisible by 3 (always at m = 1, 3 mod 6), otherwise floored and flagged.
inline FormulaValue forb_formula_q110(int m, int q) {
    if (q <= 2) throw std::invalid_argument("forb_formula_q110: need q > 2");
    long long num = (static_cast<long long>(q) + 1) * binom(m, 2);
    return {m + 2 + floor_div(num, 3), num % 3 == 0};
}

// Asymptotic maximum for q·(1_2 0_2): 2 + 2m + (q+3)·C(m,2)/3.
inline FormulaValue forb_formula_q1100(int m, int q) {
    if (q <= 2) throw std::invalid_argument("forb_formula_q1100: need q > 2");
    long long num = (static_cast<long long>(q) + 3) * binom(m, 2);
    return {2 + 2 * m + floor_div(num, 3), num % 3 == 0};
}

// Number of (k1, l1) sub-splits a column of sum k carries in an m-row matrix
// when k1 of its ones and l1 of its zeros are selected: C(k,k1)·C(m-k,l1).
inline long long configs_per_column(int m, int col_sum, int k1, int l1) {
    if (m < 1 || col_sum < 0 || col_sum > m)
        throw std::domain_error("configs_per_column: need 0 <= col_sum <= m, m >= 1");
    if (k1 < 0 || l1 < 0) throw std::domain_error("configs_per_column: need k1, l1 >= 0");
    return binom(col_sum, k1) * binom(m - col_sum, l1);
}

// Total split capacity of an avoiding matrix: with every split matched by at
// most q - 1 columns, the column-weight sums are bounded by
//   (1,1): (2q-2)·C(m,2)      (splits ordered-pair style: 2·C(m,2) of them)
//   (2,1): 3(q-1)·C(m,3)      (each 3-subset holds 3 splits)
//   (2,2): 6(q-1)·C(m,4)      (each 4-subset holds 6 splits)
inline long long pigeonhole_total_bound(int m, int q, int k, int l) {
    if (q < 1) throw std::domain_error("pigeonhole_total_bound: need q >= 1");
    if (k == 1 && l == 1) return (2LL * q - 2) * binom(m, 2);
    if (k == 2 && l == 1) return 3LL * (q - 1) * binom(m, 3);
    if (k == 2 && l == 2) return 6LL * (q - 1) * binom(m, 4);
    throw std::domain_error("pigeonhole_total_bound: shape (" + std::to_string(k) + "," +
                            std::to_string(l) + ") not supported (use (1,1), (2,1), (2,2))");
}

// Edge count above which an m-vertex graph is forced to contain a k-clique:
// floor(m^2 (k-2) / (2(k-1))).
inline long long turan_edge_threshold(int m, int k) {
    if (m < 1) throw std::domain_error("turan_edge_threshold: need m >= 1");
    if (k < 2) throw std::domain_error("turan_edge_threshold: need k >= 2");
    long long mm = m;
    return floor_div(mm * mm * (k - 2), 2LL * (k - 1));
}

// Bound summary for forb(m, q·(1_k 0_l)).  lower_construction is realizable
// by an explicit simple avoiding matrix; upper_pigeonhole is a counting
// bound valid at the stated m; upper_theorem is present only when an exact
// or theorem-level upper bound applies at this m (for (2,1)/(2,2) that
// requires a caller-supplied threshold M with m > M).  Whenever present,
// lower_construction <= upper_theorem <= upper_pigeonhole is maintained;
// a theorem value below the construction bound (possible only when the
// supplied M is too small for the theorem to actually apply) is dropped and
// flagged in notes.
struct BoundReport {
    int m = 0;
    Pattern pattern;
    long long lower_construction = 0;
    long long upper_pigeonhole = 0;
    std::optional<long long> upper_theorem;
    std::vector<std::string> notes;
};

namespace detail {

// Best known simple avoiding construction sizes, each gated by the exact
// conditions under which the construction is simple and avoiding.
inline long long lower_candidates_q10(int m, int q) {
    long long best = 2;  // [K^0 K^m]
    if (q >= 2) best = std::max(best, static_cast<long long>(m) + 2);  // + K^1
    if (m >= 2 && q >= 2 && (1ull << (m - 2)) <= static_cast<unsigned long long>(q - 1))
        best = std::max(best, 1LL << m);  // complete K_m: every split matched 2^{m-2} times
    if (m >= 4 && m <= q - 1)
        best = std::max(best, 2 + 2LL * m + binom(m, 2));  // [K^0 K^1 K^2 K^{m-1} K^m]
    if (q >= 3 && m >= 3 && (q == 3 || m >= 4) && q - 3 <= m - 1) {
        // [K^0 K^1 H K^{m-1} K^m] with H the incidence matrix of a (q-3)-regular
        // (or near-regular, when parity forbids regular) graph on m vertices
        best = std::max(best, floor_div((static_cast<long long>(q) + 1) * m, 2) + 2);
    }
    return best;
}

inline long long lower_candidates_q110(int m, int q, std::vector<std::string>& notes) {
    long long best = 2;
    if (q >= 1) best = std::max(best, static_cast<long long>(m) + 2);
    if (q >= 2 && m >= 2) best = std::max(best, m + 2 + binom(m, 2));
    if (m >= 3 && q >= 2 && (1ull << (m - 3)) <= static_cast<unsigned long long>(q - 1))
        best = std::max(best, 1LL << m);
    if (m >= 4 && m <= q + 1)
        best = std::max(best, 2 + static_cast<long long>(m) + binom(m, 2) + binom(m, 3));
    if (q >= 3 && (m % 6 == 1 || m % 6 == 3) && m >= 7 && m >= q) {
        // [K^0 K^1 K^2 T K^m] with T the incidence matrix of a simple
        // (q-2)-fold triple system on m points (exists at these residues
        // once m >= (q-2)+2)
        FormulaValue f = forb_formula_q110(m, q);
        best = std::max(best, f.value);
        if (!f.integral) notes.push_back("triple-system lower bound floored (non-integral)");
    }
    return best;
}

inline long long lower_candidates_q1100(int m, int q, std::vector<std::string>& notes) {
    long long best = 2;
    if (m >= 3) best = std::max(best, 2LL * m + 2);
    if (q >= 2 && m >= 4) best = std::max(best, 2 + 2LL * m + binom(m, 2));
    if (q >= 3 && m >= 5) best = std::max(best, 2 + 2LL * m + 2 * binom(m, 2));
    if (m >= 4 && q >= 2 && (1ull << (m - 4)) <= static_cast<unsigned long long>(q - 1))
        best = std::max(best, 1LL << m);
    if (m >= 6 && m <= q + 1)
        best = std::max(best, 2 + 2LL * m + 2 * binom(m, 2) + binom(m, 3));
    if (q >= 5 && (m % 6 == 1 || m % 6 == 3) && m >= 7 && m >= (q - 2) / 2 + 2) {
        // [K^0 K^1 K^2 T T'^c K^{m-2} K^{m-1} K^m] with simple a-fold and
        // b-fold triple systems, a + b = q - 3, a,b >= 1; the balanced split
        // a = ceil((q-3)/2) minimizes the multiplicity requirement.
        FormulaValue f = forb_formula_q1100(m, q);
        best = std::max(best, f.value);
        if (!f.integral) notes.push_back("triple-system lower bound floored (non-integral)");
    }
    return best;
}

}  // namespace detail

// Best-known sandwich for forb(m, q·(1_k 0_l)) at this m, restricted to the
// shapes (1,1), (2,1), (2,2).  theorem_threshold_M: for (2,1)/(2,2) the exact
// value is only known beyond an unspecified threshold; pass the threshold to
// assert m is beyond it and obtain upper_theorem.
inline BoundReport bound_report(const Pattern& P, int m,
                                std::optional<long long> theorem_threshold_M = std::nullopt) {
    validate_pattern(P);
    if (m < 1 || m > 63) throw std::domain_error("bound_report: need 1 <= m <= 63");
    BoundReport R;
    R.m = m;
    R.pattern = P;
    const int q = P.q, k = P.k, l = P.l;

    if (k + l > m) {
        // Pattern has more rows than the matrix: every simple matrix avoids it.
        R.lower_construction = 1LL << m;
        R.upper_pigeonhole = 1LL << m;
        R.upper_theorem = 1LL << m;
        R.notes.push_back("pattern rows exceed m; all 2^m simple columns avoid");
        return R;
    }

    if (k == 1 && l == 1) {
        R.lower_construction = detail::lower_candidates_q10(m, q);
        if (m >= 3) R.upper_pigeonhole = pigeonhole_q10(m, q);
        else R.upper_pigeonhole = 2LL * q;  // m = 2: each of the 2 splits holds <= q-1, plus 00/11
        if (auto t = forb_formula_q10(m, q)) {
            R.upper_theorem = t;
            R.notes.push_back("m meets the exact-theorem threshold");
        }
    } else if (k == 2 && l == 1) {
        R.lower_construction = detail::lower_candidates_q110(m, q, R.notes);
        if (m >= 3)
            R.upper_pigeonhole = m + 2 + (static_cast<long long>(q) - 1) * binom(m, 2);
        else
            R.upper_pigeonhole = 1LL << m;
        if (theorem_threshold_M && m > *theorem_threshold_M && q >= 3) {
            FormulaValue f = forb_formula_q110(m, q);
            R.upper_theorem = f.value;
            if (!f.integral) R.notes.push_back("theorem upper bound floored (non-integral)");
        }
    } else if (k == 2 && l == 2) {
        R.lower_construction = detail::lower_candidates_q1100(m, q, R.notes);
        if (m >= 4)
            R.upper_pigeonhole = 2LL * m + 2 + (static_cast<long long>(q) - 1) * binom(m, 2);
        else
            R.upper_pigeonhole = 1LL << m;
        if (theorem_threshold_M && m > *theorem_threshold_M && q >= 3) {
            FormulaValue f = forb_formula_q1100(m, q);
            R.upper_theorem = f.value;
            if (!f.integral) R.notes.push_back("theorem upper bound floored (non-integral)");
        }
    } else {
        throw std::domain_error("bound_report: shape (" + std::to_string(k) + "," +
                                std::to_string(l) + ") not supported (use (1,1), (2,1), (2,2))");
    }

    if ((k == 2 && l == 1) || (k == 2 && l == 2)) {
        R.notes.push_back(m % 6 == 1 || m % 6 == 3 ? "m = 1,3 (mod 6): formula value integral"
                                                   : "m != 1,3 (mod 6): formula values floored");
    }
    R.upper_pigeonhole = std::min(R.upper_pigeonhole, 1LL << m);
    if (R.upper_theorem && *R.upper_theorem < R.lower_construction) {
        // The supplied threshold was below where the theorem holds; keep the
        // report consistent rather than emit a contradictory sandwich.
        R.notes.push_back("theorem bound below construction at this m; threshold too small, dropped");
        R.upper_theorem.reset();
    }
    if (R.upper_theorem) R.upper_theorem = std::min(*R.upper_theorem, R.upper_pigeonhole);
    return R;
}

}  // namespace forbcfg
