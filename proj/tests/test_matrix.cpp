#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <bit>
#include <cstdint>
#include <vector>

#include "forbcfg/bitmatrix.hpp"
#include "forbcfg/pattern.hpp"

using namespace forbcfg;
using Catch::Matchers::ContainsSubstring;

TEST_CASE("binomial coefficients") {
    CHECK(binom(0, 0) == 1);
    CHECK(binom(5, 2) == 10);
    CHECK(binom(7, 3) == 35);
    CHECK(binom(63, 31) > 0);
    CHECK(binom(4, 5) == 0);
    CHECK(binom(4, -1) == 0);
    CHECK(binom(-2, 0) == 0);
    for (int n = 1; n <= 20; ++n)
        for (int k = 1; k < n; ++k) CHECK(binom(n, k) == binom(n - 1, k - 1) + binom(n - 1, k));
}

TEST_CASE("floor division") {
    CHECK(floor_div(7, 2) == 3);
    CHECK(floor_div(-7, 2) == -4);
    CHECK(floor_div(6, 3) == 2);
    CHECK(floor_div(-6, 3) == -2);
    CHECK(floor_div(0, 5) == 0);
}

TEST_CASE("matrix constructor guards") {
    CHECK_THROWS_AS(BitMatrix(0, {}), std::invalid_argument);
    CHECK_THROWS_AS(BitMatrix(64, {}), std::invalid_argument);
    CHECK_THROWS_AS(BitMatrix(2, {4ull}), std::invalid_argument);
    BitMatrix a(2, {3ull});
    CHECK(a.get(0, 0));
    CHECK(a.get(1, 0));
    CHECK(a.n() == 1);
}

TEST_CASE("fixed-sum column blocks") {
    BitMatrix b = k_block(4, 2);
    REQUIRE(b.n() == 6);
    CHECK(b.cols == std::vector<std::uint64_t>{3, 5, 6, 9, 10, 12});
    CHECK(k_block(5, 0).cols == std::vector<std::uint64_t>{0});
    CHECK(k_block(5, 5).cols == std::vector<std::uint64_t>{31});
    for (int m = 1; m <= 10; ++m)
        for (int s = 0; s <= m; ++s) {
            BitMatrix kb = k_block(m, s);
            CHECK(kb.n() == binom(m, s));
            CHECK(std::is_sorted(kb.cols.begin(), kb.cols.end()));
            for (std::uint64_t c : kb.cols) CHECK(std::popcount(c) == s);
        }
    CHECK_THROWS_AS(k_block(4, -1), std::domain_error);
    CHECK_THROWS_AS(k_block(4, 5), std::domain_error);
}

TEST_CASE("complement is an involution mapping sums s to m-s") {
    BitMatrix b = k_block(6, 2);
    BitMatrix c = complement(b);
    for (std::uint64_t col : c.cols) CHECK(std::popcount(col) == 4);
    CHECK(complement(c) == b);
    std::vector<std::uint64_t> sorted_c(c.cols);
    std::sort(sorted_c.begin(), sorted_c.end());
    CHECK(sorted_c == k_block(6, 4).cols);
}

TEST_CASE("horizontal concatenation") {
    BitMatrix ab = hcat({k_block(3, 0), k_block(3, 3)});
    CHECK(ab.cols == std::vector<std::uint64_t>{0, 7});
    CHECK_THROWS_AS(hcat({}), std::domain_error);
    CHECK_THROWS_AS(hcat({k_block(3, 1), k_block(4, 1)}), std::domain_error);
}

TEST_CASE("simplicity test") {
    CHECK(is_simple(k_block(5, 2)));
    CHECK(is_simple(hcat({k_block(5, 2), k_block(5, 3)})));
    CHECK_FALSE(is_simple(hcat({k_block(5, 2), k_block(5, 2)})));
    CHECK(is_simple(BitMatrix(3, {})));
}

TEST_CASE("sum profile and its grouped views") {
    std::vector<BitMatrix> blocks;
    for (int s = 0; s <= 7; ++s) blocks.push_back(k_block(7, s));
    SumProfile p = sum_profile(hcat(blocks));
    REQUIRE(p.by_sum.size() == 8);
    for (int s = 0; s <= 7; ++s) CHECK(p.by_sum[static_cast<size_t>(s)] == binom(7, s));
    CHECK(p.total() == 128);

    std::vector<long long> mirror = p.grouped_mirror(3);
    CHECK(mirror == std::vector<long long>{2, 14, 42, 70});
    std::array<long long, 5> low = p.grouped_low();
    CHECK(low == std::array<long long, 5>{1, 7, 21, 35, 64});
}

TEST_CASE("matrix text format round trip") {
    std::vector<BitMatrix> cases = {k_block(1, 0),
                                    k_block(1, 1),
                                    k_block(5, 2),
                                    BitMatrix(3, {}),
                                    hcat({k_block(4, 0), k_block(4, 2), k_block(4, 4)})};
    for (const BitMatrix& a : cases) {
        BitMatrix back = parse_matrix(format_matrix(a));
        CHECK(back == a);
    }
}

TEST_CASE("matrix parse errors cite line and column") {
    CHECK_THROWS_WITH(parse_matrix(""), ContainsSubstring("line 1"));
    CHECK_THROWS_WITH(parse_matrix("abc\n"), ContainsSubstring("header"));
    CHECK_THROWS_WITH(parse_matrix("2 2\n10\n"), ContainsSubstring("row lines"));
    CHECK_THROWS_WITH(parse_matrix("2 2\n10\n1\n"),
                      ContainsSubstring("line 3") && ContainsSubstring("2 characters"));
    CHECK_THROWS_WITH(parse_matrix("2 2\n10\n1x\n"),
                      ContainsSubstring("line 3") && ContainsSubstring("column 2"));
    CHECK_THROWS_WITH(parse_matrix("2 2\n10\n11\njunk\n"), ContainsSubstring("line 4"));
    CHECK_THROWS_WITH(parse_matrix("64 1\n"), ContainsSubstring("[1, 63]"));
    // trailing blank lines after the last row are tolerated
    CHECK(parse_matrix("2 1\n1\n0\n\n\n") == BitMatrix(2, {1ull}));
}

TEST_CASE("pattern formatting and parsing") {
    Pattern p = parse_pattern("5x1^2.0^1");
    CHECK(p.q == 5);
    CHECK(p.k == 2);
    CHECK(p.l == 1);
    CHECK(format_pattern(p) == "5x1^2.0^1");
    for (const Pattern& q : {Pattern{1, 0, 1}, Pattern{2, 2, 0}, Pattern{7, 3, 4}})
        CHECK(parse_pattern(format_pattern(q)) == q);

    CHECK_THROWS_WITH(parse_pattern("x1^2.0^1"), ContainsSubstring("missing multiplicity"));
    CHECK_THROWS_WITH(parse_pattern("3x1^2.0^1extra"), ContainsSubstring("trailing"));
    CHECK_THROWS_WITH(parse_pattern("3y1^2.0^1"), ContainsSubstring("expected"));
    CHECK_THROWS_AS(parse_pattern("0x1^1.0^1"), std::invalid_argument);  // q >= 1
    CHECK_THROWS_AS(parse_pattern("2x1^0.0^0"), std::invalid_argument);  // k + l >= 1
}

TEST_CASE("pattern matrix") {
    BitMatrix f = pattern_matrix(Pattern{3, 2, 1});
    CHECK(f.m == 3);
    CHECK(f.n() == 3);
    for (int j = 0; j < 3; ++j) {
        CHECK(f.get(0, j));
        CHECK(f.get(1, j));
        CHECK_FALSE(f.get(2, j));
    }
}
