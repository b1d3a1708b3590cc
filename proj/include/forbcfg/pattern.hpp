#pragma once

// The forbidden-column family q·(1_k 0_l): q identical columns, each with
// k ones stacked above l zeros.  String syntax: "qx1^k.0^l".

#include <cstdint>
#include <stdexcept>
#include <string>

#include "bitmatrix.hpp"

namespace forbcfg {

struct Pattern {
    int q = 1;   // multiplicity, >= 1
    int k = 0;   // ones
    int l = 0;   // zeros; k + l >= 1

    bool operator==(const Pattern&) const = default;
};

inline void validate_pattern(const Pattern& p) {
    if (p.q < 1)
        throw std::invalid_argument("pattern: multiplicity must be >= 1, got " + std::to_string(p.q));
    if (p.k < 0 || p.l < 0 || p.k + p.l < 1)
        throw std::invalid_argument("pattern: need k >= 0, l >= 0, k + l >= 1");
}

inline std::string format_pattern(const Pattern& p) {
    return std::to_string(p.q) + "x1^" + std::to_string(p.k) + ".0^" + std::to_string(p.l);
}

inline Pattern parse_pattern(const std::string& s) {
    auto fail = [&s](const std::string& what) {
        throw std::invalid_argument("pattern parse: \"" + s + "\": " + what +
                                    " (expected qx1^k.0^l, e.g. 5x1^2.0^1)");
    };
    size_t pos = 0;
    auto read_int = [&](const char* name) -> int {
        size_t start = pos;
        while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') ++pos;
        if (pos == start) fail(std::string("missing ") + name);
        long long v = 0;
        for (size_t i = start; i < pos; ++i) {
            v = v * 10 + (s[i] - '0');
            if (v > 1'000'000'000) fail(std::string(name) + " too large");
        }
        return static_cast<int>(v);
    };
    auto expect = [&](const std::string& lit) {
        if (s.compare(pos, lit.size(), lit) != 0) fail("expected \"" + lit + "\" at position " + std::to_string(pos));
        pos += lit.size();
    };
    Pattern p;
    p.q = read_int("multiplicity");
    expect("x1^");
    p.k = read_int("ones count");
    expect(".0^");
    p.l = read_int("zeros count");
    if (pos != s.size()) fail("trailing characters");
    validate_pattern(p);
    return p;
}

// The explicit (k+l) x q matrix the pattern denotes: rows 0..k-1 all ones,
// rows k..k+l-1 all zeros.
inline BitMatrix pattern_matrix(const Pattern& p) {
    validate_pattern(p);
    std::uint64_t col = (p.k == 0) ? 0 : (1ull << p.k) - 1;
    return BitMatrix(p.k + p.l, std::vector<std::uint64_t>(static_cast<size_t>(p.q), col));
}

}  // namespace forbcfg
