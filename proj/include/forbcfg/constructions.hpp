#pragma once

// Explicit extremal and near-extremal matrices for the q·(1_k 0_l) families,
// assembled from complete sum-blocks K^s, graph edge-incidence blocks, and
// triple-system incidence blocks.  Every builder re-checks its own output
// (simplicity where promised, exact column count, pattern avoidance via the
// detector) and throws rather than return a matrix violating its contract.

#include <algorithm>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bitmatrix.hpp"
#include "bounds.hpp"
#include "designs.hpp"
#include "detect.hpp"
#include "pattern.hpp"

namespace forbcfg {

namespace detail {

inline void construction_check(const char* who, const BitMatrix& A, const Pattern& P,
                               long long expected_n, bool expect_simple) {
    if (A.n() != expected_n)
        throw std::runtime_error(std::string(who) + ": self-check failed: built " +
                                 std::to_string(A.n()) + " columns, declared " +
                                 std::to_string(expected_n));
    if (expect_simple && !is_simple(A))
        throw std::runtime_error(std::string(who) + ": self-check failed: output not simple");
    if (contains_pattern(A, P))
        throw std::runtime_error(std::string(who) + ": self-check failed: output contains " +
                                 format_pattern(P));
}

// Edge columns (sum-2 incidence vectors, ascending bitmask order) of a graph
// on m vertices in which every vertex has degree d, except that when m and d
// are both odd (md odd edges impossible) the last vertex gets degree d-1.
// Realization: circulant offsets 1..floor(d/2); for odd d either the
// antipodal offset m/2 (m even) or the near-matching {i, i+(m-1)/2} for
// i = 0..(m-3)/2 (m odd), which leaves vertex m-1 unmatched.
inline std::vector<std::uint64_t> near_regular_edge_columns(int m, int d) {
    if (d < 0 || d >= m)
        throw std::domain_error("near_regular_edge_columns: need 0 <= d < m");
    std::set<std::pair<int, int>> edges;
    for (int o = 1; o <= d / 2; ++o)
        for (int i = 0; i < m; ++i) {
            int j = (i + o) % m;
            edges.insert({std::min(i, j), std::max(i, j)});
        }
    if (d % 2 == 1) {
        if (m % 2 == 0) {
            for (int i = 0; i < m / 2; ++i) edges.insert({i, i + m / 2});
        } else {
            for (int i = 0; i <= (m - 3) / 2; ++i) edges.insert({i, i + (m - 1) / 2});
        }
    }
    long long want = (static_cast<long long>(m) * d) / 2;  // floor covers the odd-odd case
    if (static_cast<long long>(edges.size()) != want)
        throw std::runtime_error("near_regular_edge_columns: built " +
                                 std::to_string(edges.size()) + " edges, expected " +
                                 std::to_string(want));
    std::vector<std::uint64_t> cols;
    cols.reserve(edges.size());
    for (const auto& [a, b] : edges) cols.push_back((1ull << a) | (1ull << b));
    std::sort(cols.begin(), cols.end());
    return cols;
}

}  // namespace detail

// [K^0 K^1 H K^{m-1} K^m] where H holds the edge columns of a (q-3)-regular
// (near-regular when m(q-3) is odd) graph: floor((q+1)m/2) + 2 columns,
// simple, avoiding q·(1_1 0_1).
inline BitMatrix build_q10(int m, int q) {
    if (q < 3) throw std::domain_error("build_q10: need q >= 3");
    if (m <= q - 3) throw std::domain_error("build_q10: need m > q-3");
    // m = 2 would demand q+3 > 4 columns; no simple matrix that wide exists
    if (m < 3 || m > 63) throw std::domain_error("build_q10: need 3 <= m <= 63");
    const int d = q - 3;
    std::vector<BitMatrix> parts;
    parts.push_back(k_block(m, 0));
    parts.push_back(k_block(m, 1));
    if (d > 0) parts.push_back(BitMatrix(m, detail::near_regular_edge_columns(m, d)));
    parts.push_back(k_block(m, m - 1));
    parts.push_back(k_block(m, m));
    BitMatrix A = hcat(parts);
    long long expected = floor_div((static_cast<long long>(q) + 1) * m, 2) + 2;
    detail::construction_check("build_q10", A, Pattern{q, 1, 1}, expected, true);
    return A;
}

// [K^0 K^1 K^2 T K^m] with T the incidence columns of a simple (q-2)-fold
// triple system on m points: m + 2 + (q+1)C(m,2)/3 columns, simple, avoiding
// q·(1_2 0_1).
inline BitMatrix build_q110(int m, int q) {
    if (q <= 2) throw std::invalid_argument("build_q110: need q > 2");
    if (m % 6 != 1 && m % 6 != 3)
        throw std::invalid_argument("build_q110: need m = 1 or 3 (mod 6)");
    if (m < 7)
        throw std::invalid_argument(
            "build_q110: need m >= 7 (at m = 3 the triple block collides with K^m)");
    if (!dehon_exists(m, q - 2))
        throw std::invalid_argument("build_q110: no simple S_" + std::to_string(q - 2) +
                                    "(2,3," + std::to_string(m) + ") (need m >= q)");
    TripleSystem ts = simple_lambda_construct(m, q - 2);
    BitMatrix A = hcat({k_block(m, 0), k_block(m, 1), k_block(m, 2), to_incidence(ts),
                        k_block(m, m)});
    FormulaValue f = forb_formula_q110(m, q);
    detail::construction_check("build_q110", A, Pattern{q, 2, 1}, f.value, true);
    return A;
}

// [K^0 K^1 K^2 T_a T_b^c K^{m-2} K^{m-1} K^m] with simple a-fold and b-fold
// triple systems (a + b = q-3), the second one complemented into sum-(m-3)
// columns: 2 + 2m + (q+3)C(m,2)/3 columns, simple, avoiding q·(1_2 0_2).
inline BitMatrix build_q1100(int m, int q, int a, int b) {
    if (q <= 2) throw std::invalid_argument("build_q1100: need q > 2");
    if (m % 6 != 1 && m % 6 != 3)
        throw std::invalid_argument("build_q1100: need m = 1 or 3 (mod 6)");
    if (m < 7) throw std::invalid_argument("build_q1100: need m >= 7");
    auto splits_valid = [&]() {
        std::string s;
        for (int x = 1; x <= q - 4; ++x)
            if (m >= x + 2 && m >= (q - 3 - x) + 2)
                s += (s.empty() ? "" : ", ") + std::string("(") + std::to_string(x) + "," +
                     std::to_string(q - 3 - x) + ")";
        return s.empty() ? std::string("none at this m") : s;
    };
    if (a < 1 || b < 1 || a + b != q - 3)
        throw std::invalid_argument("build_q1100: need a, b >= 1 with a + b = q-3; valid: " +
                                    splits_valid());
    if (!dehon_exists(m, a) || !dehon_exists(m, b))
        throw std::invalid_argument("build_q1100: no simple a- or b-fold system at m = " +
                                    std::to_string(m) + "; valid (a,b): " + splits_valid());
    BitMatrix Ta = to_incidence(simple_lambda_construct(m, a));
    BitMatrix Tbc = complement(to_incidence(simple_lambda_construct(m, b)));
    BitMatrix A = hcat({k_block(m, 0), k_block(m, 1), k_block(m, 2), Ta, Tbc,
                        k_block(m, m - 2), k_block(m, m - 1), k_block(m, m)});
    FormulaValue f = forb_formula_q1100(m, q);
    detail::construction_check("build_q1100", A, Pattern{q, 2, 2}, f.value, true);
    return A;
}

// The m = q+1 exceptional concatenations that beat the closed-form bounds:
// [K^0 K^1 K^2 K^3 K^m] for shape (2,1) and
// [K^0 K^1 K^2 K^3 K^{m-2} K^{m-1} K^m] for shape (2,2).  Pattern avoidance
// and column count are checked; simplicity is not promised (at m = 5 the
// shape-(2,2) stack repeats K^3 = K^{m-2}).
inline BitMatrix build_small_m_exception(int m, int q, int k, int l) {
    if (m != q + 1) throw std::domain_error("build_small_m_exception: need m = q+1");
    if (m < 4 || m > 63) throw std::domain_error("build_small_m_exception: need 4 <= m <= 63");
    long long expected;
    std::vector<BitMatrix> parts{k_block(m, 0), k_block(m, 1), k_block(m, 2), k_block(m, 3)};
    if (k == 2 && l == 1) {
        parts.push_back(k_block(m, m));
        expected = 2 + m + binom(m, 2) + binom(m, 3);
    } else if (k == 2 && l == 2) {
        parts.push_back(k_block(m, m - 2));
        parts.push_back(k_block(m, m - 1));
        parts.push_back(k_block(m, m));
        expected = 2 + 2LL * m + binom(m, 2) + binom(m, 3) + binom(m, m - 2);
    } else {
        throw std::domain_error("build_small_m_exception: shape must be (2,1) or (2,2)");
    }
    BitMatrix A = hcat(parts);
    detail::construction_check("build_small_m_exception", A, Pattern{q, k, l}, expected, false);
    if (q >= 3) {
        long long formula = (k == 2 && l == 1) ? forb_formula_q110(m, q).value
                                               : forb_formula_q1100(m, q).value;
        if (A.n() <= formula)
            throw std::runtime_error(
                "build_small_m_exception: self-check failed: count does not exceed the formula");
    }
    return A;
}

// [K^0 K^1 K^2 K^{m-1} K^m] on m = q-1 rows: matches the pigeonhole upper
// bound exactly at this m, simple, avoiding q·(1_1 0_1).
inline BitMatrix build_pigeonhole_extremal_q10(int q) {
    if (q < 5) throw std::domain_error("build_pigeonhole_extremal_q10: need q >= 5");
    const int m = q - 1;
    if (m > 63) throw std::domain_error("build_pigeonhole_extremal_q10: q too large (m <= 63)");
    BitMatrix A = hcat({k_block(m, 0), k_block(m, 1), k_block(m, 2), k_block(m, m - 1),
                        k_block(m, m)});
    detail::construction_check("build_pigeonhole_extremal_q10", A, Pattern{q, 1, 1},
                               pigeonhole_q10(m, q), true);
    return A;
}

}  // namespace forbcfg
