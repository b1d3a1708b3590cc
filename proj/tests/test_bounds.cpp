#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <stdexcept>

#include "forbcfg/bounds.hpp"

using namespace forbcfg;

namespace {

bool has_note(const BoundReport& r, const std::string& needle) {
    return std::any_of(r.notes.begin(), r.notes.end(), [&](const std::string& s) {
        return s.find(needle) != std::string::npos;
    });
}

}  // namespace

TEST_CASE("exact single-row-split formula") {
    CHECK(forb_formula_q10(12, 3) == 26);
    CHECK(forb_formula_q10(43, 5) == 131);
    CHECK(forb_formula_q10(24, 5) == 74);
    // below the validity threshold max(3q+2, 8q-19) the value is withheld
    CHECK_FALSE(forb_formula_q10(10, 3).has_value());
    CHECK(forb_formula_q10(11, 3).has_value());
    CHECK_FALSE(forb_formula_q10(20, 5).has_value());
    CHECK(forb_formula_q10(21, 5).has_value());
    CHECK_FALSE(forb_formula_q10(100, 2).has_value());
}

TEST_CASE("single-row-split pigeonhole bound") {
    CHECK(pigeonhole_q10(4, 5) == 16);
    CHECK(pigeonhole_q10(3, 2) == 5);
    CHECK(pigeonhole_q10(12, 3) == 26);
    CHECK_THROWS_AS(pigeonhole_q10(2, 3), std::domain_error);
    CHECK_THROWS_AS(pigeonhole_q10(5, 0), std::domain_error);
}

TEST_CASE("exact formula never exceeds the pigeonhole bound") {
    for (int q = 3; q <= 6; ++q) {
        long long threshold = std::max(3LL * q + 2, 8LL * q - 19);
        for (int m = static_cast<int>(threshold); m <= threshold + 20; ++m) {
            auto f = forb_formula_q10(m, q);
            REQUIRE(f.has_value());
            CHECK(*f <= pigeonhole_q10(m, q));
            CHECK(*f >= m + 2);
        }
    }
}

TEST_CASE("two-one split formula") {
    FormulaValue f = forb_formula_q110(7, 3);
    CHECK(f.value == 37);
    CHECK(f.integral);
    CHECK(forb_formula_q110(13, 4).value == 145);
    CHECK(forb_formula_q110(13, 4).integral);
    CHECK(forb_formula_q110(9, 5).value == 83);
    CHECK(forb_formula_q110(9, 5).integral);
    // m = 8: (q+1)C(8,2) = 112 is not divisible by 3
    FormulaValue g = forb_formula_q110(8, 3);
    CHECK(g.value == 47);
    CHECK_FALSE(g.integral);
    CHECK_THROWS_AS(forb_formula_q110(7, 2), std::invalid_argument);
}

TEST_CASE("two-two split formula") {
    CHECK(forb_formula_q1100(9, 6).value == 128);
    CHECK(forb_formula_q1100(9, 6).integral);
    CHECK(forb_formula_q1100(7, 3).value == 58);
    CHECK(forb_formula_q1100(7, 3).integral);
    CHECK(forb_formula_q1100(13, 6).value == 262);
    CHECK(forb_formula_q1100(13, 6).integral);
    FormulaValue g = forb_formula_q1100(8, 4);
    CHECK(g.value == 83);
    CHECK_FALSE(g.integral);
    CHECK_THROWS_AS(forb_formula_q1100(9, 1), std::invalid_argument);
}

TEST_CASE("per-column split configuration counts") {
    CHECK(configs_per_column(7, 3, 2, 1) == 12);
    CHECK(configs_per_column(6, 3, 1, 1) == 9);
    CHECK(configs_per_column(9, 4, 2, 2) == 60);
    // not enough ones or zeros to select from
    CHECK(configs_per_column(5, 1, 2, 1) == 0);
    CHECK(configs_per_column(5, 4, 1, 2) == 0);
    CHECK_THROWS_AS(configs_per_column(5, 6, 1, 1), std::domain_error);
    CHECK_THROWS_AS(configs_per_column(5, 2, -1, 1), std::domain_error);
}

TEST_CASE("column sum complement symmetry of configuration counts") {
    for (int m = 1; m <= 9; ++m)
        for (int s = 0; s <= m; ++s)
            for (int k1 = 0; k1 <= 2; ++k1)
                for (int l1 = 0; l1 <= 2; ++l1)
                    CHECK(configs_per_column(m, s, k1, l1) ==
                          configs_per_column(m, m - s, l1, k1));
}

TEST_CASE("total split capacity bounds") {
    CHECK(pigeonhole_total_bound(6, 3, 1, 1) == 60);
    CHECK(pigeonhole_total_bound(7, 3, 2, 1) == 210);
    CHECK(pigeonhole_total_bound(9, 6, 2, 2) == 3780);
    CHECK_THROWS_AS(pigeonhole_total_bound(6, 3, 3, 1), std::domain_error);
    CHECK_THROWS_AS(pigeonhole_total_bound(6, 3, 1, 2), std::domain_error);
    CHECK_THROWS_AS(pigeonhole_total_bound(6, 0, 1, 1), std::domain_error);
}

TEST_CASE("clique-forcing edge threshold") {
    CHECK(turan_edge_threshold(6, 4) == 12);
    CHECK(turan_edge_threshold(4, 3) == 4);
    CHECK(turan_edge_threshold(6, 2) == 0);
    CHECK_THROWS_AS(turan_edge_threshold(0, 3), std::domain_error);
    CHECK_THROWS_AS(turan_edge_threshold(5, 1), std::domain_error);
    // threshold grows with the clique size being forced
    for (int k = 2; k < 8; ++k)
        CHECK(turan_edge_threshold(10, k) <= turan_edge_threshold(10, k + 1));
}

TEST_CASE("bound report at a theorem-covered point") {
    BoundReport r = bound_report(Pattern{3, 1, 1}, 12);
    CHECK(r.lower_construction == 26);
    CHECK(r.upper_pigeonhole == 26);
    REQUIRE(r.upper_theorem.has_value());
    CHECK(*r.upper_theorem == 26);
    CHECK(has_note(r, "exact-theorem threshold"));
}

TEST_CASE("bound report gates the two-one theorem on a threshold") {
    BoundReport r = bound_report(Pattern{3, 2, 1}, 7);
    CHECK(r.lower_construction == 37);
    CHECK(r.upper_pigeonhole == 51);
    CHECK_FALSE(r.upper_theorem.has_value());

    BoundReport s = bound_report(Pattern{3, 2, 1}, 7, 5);
    CHECK(s.lower_construction == 37);
    REQUIRE(s.upper_theorem.has_value());
    CHECK(*s.upper_theorem == 37);
}

TEST_CASE("bound report drops a theorem value below the construction") {
    // at q = 6, m = 7 the small-m construction beats the asymptotic formula,
    // so a threshold claim of M = 5 cannot be right and the value is dropped
    BoundReport r = bound_report(Pattern{6, 2, 1}, 7, 5);
    CHECK(r.lower_construction == 65);
    CHECK(r.upper_pigeonhole == 114);
    CHECK_FALSE(r.upper_theorem.has_value());
    CHECK(has_note(r, "dropped"));
}

TEST_CASE("bound report caps everything at the simple-column count") {
    BoundReport r = bound_report(Pattern{3, 1, 1}, 2);
    CHECK(r.lower_construction == 4);
    CHECK(r.upper_pigeonhole == 4);
    CHECK_FALSE(r.upper_theorem.has_value());
}

TEST_CASE("bound report for a pattern taller than the matrix") {
    BoundReport r = bound_report(Pattern{2, 2, 1}, 2);
    CHECK(r.lower_construction == 4);
    CHECK(r.upper_pigeonhole == 4);
    REQUIRE(r.upper_theorem.has_value());
    CHECK(*r.upper_theorem == 4);
    CHECK(has_note(r, "rows exceed m"));
}

TEST_CASE("bound report rejects unsupported shapes") {
    CHECK_THROWS_AS(bound_report(Pattern{2, 2, 0}, 5), std::domain_error);
    CHECK_THROWS_AS(bound_report(Pattern{2, 3, 1}, 5), std::domain_error);
    CHECK_THROWS_AS(bound_report(Pattern{2, 1, 1}, 0), std::domain_error);
    CHECK_THROWS_AS(bound_report(Pattern{0, 1, 1}, 5), std::invalid_argument);
}

TEST_CASE("bound report sandwich is internally consistent") {
    for (auto [k, l] : {std::pair<int, int>{1, 1}, {2, 1}, {2, 2}}) {
        for (int q = 1; q <= 5; ++q) {
            for (int m = 1; m <= 10; ++m) {
                BoundReport r = bound_report(Pattern{q, k, l}, m);
                CHECK(r.lower_construction <= r.upper_pigeonhole);
                CHECK(r.upper_pigeonhole <= 1LL << m);
                if (r.upper_theorem) {
                    CHECK(r.lower_construction <= *r.upper_theorem);
                    CHECK(*r.upper_theorem <= r.upper_pigeonhole);
                }
            }
        }
    }
}
