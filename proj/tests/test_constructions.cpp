#include <catch2/catch_amalgamated.hpp>

#include <bit>
#include <stdexcept>
#include <vector>

#include "forbcfg/bounds.hpp"
#include "forbcfg/constructions.hpp"
#include "forbcfg/designs.hpp"
#include "forbcfg/detect.hpp"

using namespace forbcfg;
using Catch::Matchers::ContainsSubstring;

namespace {

BitMatrix columns_of_sum(const BitMatrix& a, int s) {
    std::vector<std::uint64_t> cols;
    for (std::uint64_t c : a.cols)
        if (std::popcount(c) == s) cols.push_back(c);
    return BitMatrix(a.m, std::move(cols));
}

BitMatrix all_blocks(int m) {
    std::vector<BitMatrix> parts;
    for (int s = 0; s <= m; ++s) parts.push_back(k_block(m, s));
    return hcat(parts);
}

}  // namespace

TEST_CASE("single-row-split extremal construction") {
    for (auto [m, q, n] : {std::array<int, 3>{12, 3, 26}, {24, 5, 74}, {13, 4, 34}}) {
        BitMatrix a = build_q10(m, q);
        INFO("m=" << m << " q=" << q);
        CHECK(a.n() == n);
        CHECK(is_simple(a));
        CHECK_FALSE(contains_pattern(a, Pattern{q, 1, 1}).has_value());
        // extremal: some split is matched by the full budget of q-1 columns
        CHECK(max_split_count(a, 1, 1).count == q - 1);
    }
    CHECK_THROWS_AS(build_q10(5, 2), std::domain_error);
    CHECK_THROWS_AS(build_q10(2, 5), std::domain_error);
    CHECK_THROWS_AS(build_q10(2, 3), std::domain_error);
}

TEST_CASE("two-one split extremal construction") {
    for (auto [m, q, n] : {std::array<int, 3>{7, 3, 37}, {13, 4, 145}, {9, 4, 71}}) {
        BitMatrix a = build_q110(m, q);
        INFO("m=" << m << " q=" << q);
        CHECK(a.n() == n);
        CHECK(is_simple(a));
        CHECK_FALSE(contains_pattern(a, Pattern{q, 2, 1}).has_value());
        CHECK(max_split_count(a, 2, 1).count == q - 1);
    }
    CHECK_THROWS_AS(build_q110(7, 2), std::invalid_argument);
    CHECK_THROWS_WITH(build_q110(8, 3), ContainsSubstring("mod 6"));
    CHECK_THROWS_WITH(build_q110(3, 3), ContainsSubstring("m >= 7"));
    CHECK_THROWS_WITH(build_q110(7, 10), ContainsSubstring("no simple"));
}

TEST_CASE("two-two split extremal construction") {
    BitMatrix a = build_q1100(9, 6, 1, 2);
    CHECK(a.n() == 128);
    CHECK(is_simple(a));
    CHECK_FALSE(contains_pattern(a, Pattern{6, 2, 2}).has_value());
    CHECK(max_split_count(a, 2, 2).count == 5);

    BitMatrix b = build_q1100(7, 5, 1, 1);
    CHECK(b.n() == 72);
    CHECK(is_simple(b));
    // the complementary fold split also works
    CHECK(build_q1100(9, 6, 2, 1).n() == 128);

    CHECK_THROWS_AS(build_q1100(9, 2, 1, 1), std::invalid_argument);
    CHECK_THROWS_WITH(build_q1100(8, 6, 1, 2), ContainsSubstring("mod 6"));
    CHECK_THROWS_WITH(build_q1100(9, 6, 3, 0), ContainsSubstring("valid"));
    CHECK_THROWS_WITH(build_q1100(9, 6, 1, 1), ContainsSubstring("a + b = q-3"));
    CHECK_THROWS_WITH(build_q1100(7, 12, 3, 6), ContainsSubstring("no simple"));
}

TEST_CASE("construction embeds certified triple systems") {
    BitMatrix a = build_q1100(9, 6, 1, 2);

    TripleSystem one = from_columns(columns_of_sum(a, 3), 3);
    CHECK(one.lambda == 1);
    CHECK(certify(one).all_ok());

    TripleSystem two = from_columns(columns_of_sum(a, 6), 6);
    CHECK(two.lambda == 2);
    CHECK(two.blocks.size() == 24);
    CHECK(certify(two).all_ok());

    TripleSystem t = from_columns(columns_of_sum(build_q110(13, 4), 3), 3);
    CHECK(t.lambda == 2);
    CHECK(certify(t).all_ok());
}

TEST_CASE("small-m exceptional concatenations") {
    BitMatrix a = build_small_m_exception(5, 4, 2, 1);
    CHECK(a.n() == 27);
    CHECK(is_simple(a));
    CHECK_FALSE(contains_pattern(a, Pattern{4, 2, 1}).has_value());
    // strictly beats the closed-form value that rules at large m
    CHECK(a.n() > forb_formula_q110(5, 4).value);

    BitMatrix b = build_small_m_exception(5, 4, 2, 2);
    CHECK(b.n() == 42);
    CHECK_FALSE(is_simple(b));  // K^3 and K^{m-2} coincide at m = 5
    CHECK_FALSE(contains_pattern(b, Pattern{4, 2, 2}).has_value());
    CHECK(b.n() > forb_formula_q1100(5, 4).value);

    // at m = 4 the shape-(2,1) stack is the complete column set
    BitMatrix c = build_small_m_exception(4, 3, 2, 1);
    CHECK(c.n() == 16);
    CHECK(c.cols == all_blocks(4).cols);

    CHECK_THROWS_AS(build_small_m_exception(6, 4, 2, 1), std::domain_error);
    CHECK_THROWS_AS(build_small_m_exception(5, 4, 1, 1), std::domain_error);
}

TEST_CASE("pigeonhole-tight construction at m one below q") {
    for (auto [q, n] : {std::pair<int, int>{5, 16}, {6, 22}, {7, 29}}) {
        BitMatrix a = build_pigeonhole_extremal_q10(q);
        INFO("q=" << q);
        CHECK(a.m == q - 1);
        CHECK(a.n() == n);
        CHECK(a.n() == pigeonhole_q10(q - 1, q));
        CHECK(is_simple(a));
        CHECK_FALSE(contains_pattern(a, Pattern{q, 1, 1}).has_value());
    }
    // q = 5 lands on every simple column of a 4-row matrix
    CHECK(build_pigeonhole_extremal_q10(5).cols == all_blocks(4).cols);
    CHECK_THROWS_AS(build_pigeonhole_extremal_q10(4), std::domain_error);
}
