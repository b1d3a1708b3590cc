#pragma once

// Value-semantic (0,1)-matrix with columns stored as row-indexed bitmasks.
// Rows are 0-based internally (bit i of a column is the entry of row i+1 in
// the 1-based external numbering used by file formats and reports).

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace forbcfg {

// Exact binomial coefficient; returns 0 for k < 0 or k > n or n < 0.
// Safe for n <= 63 (C(63,31) fits in a signed 64-bit integer).
inline long long binom(long long n, long long k) {
    if (k < 0 || n < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    unsigned long long r = 1;
    for (long long i = 1; i <= k; ++i) {
        r = r * static_cast<unsigned long long>(n - k + i) / static_cast<unsigned long long>(i);
    }
    return static_cast<long long>(r);
}

// Floor division for possibly-negative numerators.
inline long long floor_div(long long a, long long b) {
    long long q = a / b, r = a % b;
    return (r != 0 && ((r < 0) != (b < 0))) ? q - 1 : q;
}

struct BitMatrix {
    int m = 0;                            // row count, 1 <= m <= 63
    std::vector<std::uint64_t> cols;      // column bitmasks, each < 2^m

    BitMatrix() = default;
    BitMatrix(int rows, std::vector<std::uint64_t> columns)
        : m(rows), cols(std::move(columns)) {
        if (m < 1 || m > 63)
            throw std::invalid_argument("BitMatrix: row count must be in [1, 63], got " + std::to_string(m));
        const std::uint64_t limit = (m == 63) ? ~0ull >> 1 : (1ull << m) - 1;
        for (std::uint64_t c : cols)
            if (c > limit)
                throw std::invalid_argument("BitMatrix: column value exceeds 2^m - 1");
    }

    int n() const { return static_cast<int>(cols.size()); }
    bool get(int row, int col) const { return (cols[col] >> row) & 1u; }

    bool operator==(const BitMatrix& o) const { return m == o.m && cols == o.cols; }
};

// All C(m,s) distinct columns of sum s, ascending by bitmask value.
inline BitMatrix k_block(int m, int s) {
    if (m < 1 || m > 63)
        throw std::invalid_argument("k_block: row count must be in [1, 63]");
    if (s < 0 || s > m)
        throw std::domain_error("k_block: column sum " + std::to_string(s) +
                                " out of range [0, " + std::to_string(m) + "]");
    std::vector<std::uint64_t> cols;
    cols.reserve(static_cast<size_t>(binom(m, s)));
    if (s == 0) {
        cols.push_back(0);
    } else {
        // Gosper's hack: next subset of fixed popcount in ascending order.
        std::uint64_t c = (1ull << s) - 1;
        const std::uint64_t limit = (m == 63) ? ~0ull >> 1 : (1ull << m) - 1;
        while (c <= limit) {
            cols.push_back(c);
            std::uint64_t lo = c & (~c + 1);
            std::uint64_t carry = c + lo;
            if (carry > limit || carry == 0) break;
            c = carry | (((c ^ carry) >> 2) / lo);
        }
    }
    return BitMatrix(m, std::move(cols));
}

// Entrywise (0,1)-complement; column order preserved.
inline BitMatrix complement(const BitMatrix& A) {
    const std::uint64_t mask = (A.m == 63) ? ~0ull >> 1 : (1ull << A.m) - 1;
    std::vector<std::uint64_t> cols(A.cols);
    for (auto& c : cols) c ^= mask;
    return BitMatrix(A.m, std::move(cols));
}

// Horizontal block concatenation [A1 A2 ... Ak].
inline BitMatrix hcat(const std::vector<BitMatrix>& parts) {
    if (parts.empty())
        throw std::domain_error("hcat: no blocks given");
    int m = parts.front().m;
    std::vector<std::uint64_t> cols;
    for (const auto& p : parts) {
        if (p.m != m)
            throw std::domain_error("hcat: mismatched row counts " + std::to_string(m) +
                                    " vs " + std::to_string(p.m));
        cols.insert(cols.end(), p.cols.begin(), p.cols.end());
    }
    return BitMatrix(m, std::move(cols));
}

inline bool is_simple(const BitMatrix& A) {
    std::vector<std::uint64_t> sorted(A.cols);
    std::sort(sorted.begin(), sorted.end());
    return std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
}

// Histogram of column sums, with the grouped views the counting arguments use.
struct SumProfile {
    int m = 0;
    std::vector<long long> by_sum;        // index s in [0, m]

    long long total() const { return std::accumulate(by_sum.begin(), by_sum.end(), 0ll); }

    // Mirror grouping: a column of sum s lands in bucket min(s, m-s), with all
    // buckets >= top pooled into the last entry.  top=3 gives the four-bucket
    // view used for the single-one/single-zero counting; top=4 the five-bucket
    // view used for the two-ones-two-zeros counting.
    std::vector<long long> grouped_mirror(int top) const {
        std::vector<long long> a(static_cast<size_t>(top) + 1, 0);
        for (int s = 0; s <= m; ++s) {
            int bucket = std::min({s, m - s, top});
            a[bucket] += by_sum[s];
        }
        return a;
    }

    // Low-sum grouping: exact counts of sums 0..3, then everything with sum >= 4
    // pooled (no mirroring) — the view used for the two-ones-one-zero counting.
    std::array<long long, 5> grouped_low() const {
        std::array<long long, 5> a{};
        for (int s = 0; s <= m; ++s) {
            a[std::min(s, 4)] += by_sum[s];
        }
        return a;
    }
};

inline SumProfile sum_profile(const BitMatrix& A) {
    SumProfile p;
    p.m = A.m;
    p.by_sum.assign(static_cast<size_t>(A.m) + 1, 0);
    for (std::uint64_t c : A.cols) p.by_sum[static_cast<size_t>(std::popcount(c))]++;
    return p;
}

// Text format: line 1 = "m n", then m lines of n characters from {0,1};
// line i holds row i.  Parse errors report 1-based line and column.
inline std::string format_matrix(const BitMatrix& A) {
    std::string out = std::to_string(A.m) + " " + std::to_string(A.n()) + "\n";
    for (int r = 0; r < A.m; ++r) {
        for (int c = 0; c < A.n(); ++c) out.push_back(A.get(r, c) ? '1' : '0');
        out.push_back('\n');
    }
    return out;
}

inline BitMatrix parse_matrix(const std::string& text) {
    auto fail = [](int line, const std::string& what) {
        throw std::invalid_argument("matrix parse: line " + std::to_string(line) + ": " + what);
    };
    std::vector<std::string> lines;
    std::string cur;
    for (char ch : text) {
        if (ch == '\n') { lines.push_back(cur); cur.clear(); }
        else cur.push_back(ch);
    }
    if (!cur.empty()) lines.push_back(cur);
    if (lines.empty()) fail(1, "empty input, expected \"m n\" header");

    long long m = -1, n = -1;
    {
        const std::string& h = lines[0];
        size_t pos = 0;
        try {
            m = std::stoll(h, &pos);
            size_t pos2 = 0;
            n = std::stoll(h.substr(pos), &pos2);
            pos += pos2;
        } catch (const std::exception&) {
            fail(1, "malformed header, expected \"m n\"");
        }
        while (pos < h.size() && h[pos] == ' ') ++pos;
        if (pos != h.size()) fail(1, "trailing characters after \"m n\" header");
        if (m < 1 || m > 63) fail(1, "row count must be in [1, 63], got " + std::to_string(m));
        if (n < 0) fail(1, "negative column count");
    }
    if (static_cast<long long>(lines.size()) < m + 1)
        fail(static_cast<int>(lines.size()) + 1, "expected " + std::to_string(m) +
             " row lines, got " + std::to_string(lines.size() - 1));

    std::vector<std::uint64_t> cols(static_cast<size_t>(n), 0);
    for (long long r = 0; r < m; ++r) {
        const std::string& row = lines[static_cast<size_t>(r) + 1];
        if (static_cast<long long>(row.size()) != n)
            fail(static_cast<int>(r) + 2, "expected " + std::to_string(n) +
                 " characters, got " + std::to_string(row.size()));
        for (long long c = 0; c < n; ++c) {
            char ch = row[static_cast<size_t>(c)];
            if (ch != '0' && ch != '1')
                throw std::invalid_argument("matrix parse: line " + std::to_string(r + 2) +
                                            ", column " + std::to_string(c + 1) +
                                            ": invalid character '" + std::string(1, ch) +
                                            "' (expected '0' or '1')");
            if (ch == '1') cols[static_cast<size_t>(c)] |= 1ull << r;
        }
    }
    for (long long extra = m + 1; extra < static_cast<long long>(lines.size()); ++extra)
        if (!lines[static_cast<size_t>(extra)].empty())
            fail(static_cast<int>(extra) + 1, "unexpected content after last row");
    return BitMatrix(static_cast<int>(m), std::move(cols));
}

}  // namespace forbcfg
