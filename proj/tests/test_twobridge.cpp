#include <doctest.h>

#include <algorithm>
#include <random>

#include "braidtri/pipeline.hpp"
#include "braidtri/twobridge.hpp"
#include "golden.hpp"
#include "oracles/census_union_find.hpp"
#include "oracles/gluing_newton.hpp"
#include "support.hpp"

using namespace braidtri;

TEST_CASE("twist words: plain, run-length, bad input") {
    CHECK(parse_twist_word("R3L2R1") == "RRRLLR");
    CHECK(parse_twist_word("rlr") == "RLR");
    CHECK(parse_twist_word("R2L") == "RRL");
    CHECK_THROWS_AS(parse_twist_word("R"), std::invalid_argument);
    CHECK_THROWS_AS(parse_twist_word(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_twist_word("RXL"), std::invalid_argument);
    CHECK_THROWS_AS(parse_twist_word("R0L"), std::invalid_argument);
    CHECK_THROWS_AS(parse_twist_word("3R"), std::invalid_argument);
}

TEST_CASE("censuses match the union-find goldens") {
    for (const auto& [word, census] : golden::word_census) {
        INFO(word);
        const auto tri = build_two_bridge(word);
        const auto rep = twobridge_report(word);
        CHECK(rep.validation.ok);
        CHECK(rep.tets == 2 * (int(word.size()) - 1));
        CHECK(rep.gluings == 2 * rep.tets);
        CHECK(rep.edge_degrees == census.degrees);
        CHECK(rep.edge_degrees == oracle::edge_degrees(tri));
        auto euler = rep.euler;
        std::sort(euler.begin(), euler.end());
        CHECK(euler == census.euler);
        CHECK(rep.cusps == int(census.euler.size()));
    }
}

TEST_CASE("random mixed words give oriented triangulations with torus cusps") {
    std::mt19937_64 rng(31);
    int tried = 0;
    while (tried < 60) {
        const auto word = support::random_word(rng, 3 + int(rng() % 8));
        if (word.find('R') == std::string::npos || word.find('L') == std::string::npos) continue;
        ++tried;
        INFO(word);
        const auto tri = build_two_bridge(word);
        const auto rep = validate(tri);
        CHECK(rep.ok);
        CHECK(rep.oriented);
        for (int e : oracle::cusp_euler(tri)) CHECK(e == 0);
        const int ncusps = int(cusp_links(tri).size());
        CHECK((ncusps == 1 || ncusps == 2));
        std::string rev(word.rbegin(), word.rend());
        CHECK(twobridge_report(rev).edge_degrees == twobridge_report(word).edge_degrees);
    }
}

TEST_CASE("volumes of mixed words match the gluing oracle") {
    for (const auto& [word, vol] : golden::word_volume) {
        INFO(word);
        const auto r = solve_two_bridge(word);
        CHECK(r.geometric());
        CHECK(std::abs(r.max.volume - vol) <= 1e-9);
    }
}

TEST_CASE("reversed and mirrored words have the same volume") {
    std::mt19937_64 rng(77);
    for (int k = 0; k < 8; ++k) {
        std::string word;
        do word = support::random_word(rng, 4 + k % 3);
        while (word.find('R') == std::string::npos || word.find('L') == std::string::npos);
        std::string rev(word.rbegin(), word.rend());
        std::string mir = word;
        for (char& c : mir) c = c == 'R' ? 'L' : 'R';
        const auto a = solve_two_bridge(word), b = solve_two_bridge(rev), c = solve_two_bridge(mir);
        INFO(word);
        CHECK(a.geometric());
        CHECK(std::abs(a.max.volume - b.max.volume) < 1e-9);
        CHECK(std::abs(a.max.volume - c.max.volume) < 1e-9);
        const auto o = oracle::solve_gluing(build_two_bridge(word));
        CHECK(o.converged);
        CHECK(std::abs(o.volume - a.max.volume) < 1e-9);
    }
}

TEST_CASE("constant words are not geometric") {
    for (int n = 2; n <= 6; ++n) {
        for (char c : {'R', 'L'}) {
            const std::string word(n, c);
            INFO(word);
            const auto r = solve_two_bridge(word);
            CHECK_FALSE(r.geometric());
            CHECK(r.max.status == MaxResult::Status::Infeasible);
            CHECK_FALSE(r.verdict.reason.empty());
        }
    }
}

TEST_CASE("every mixed word up to length 7 is geometric with the oracle volume") {
    int checked = 0;
    for (int n = 2; n <= 7; ++n)
        for (int bits = 0; bits < (1 << n); ++bits) {
            std::string word;
            for (int k = 0; k < n; ++k) word += (bits >> k) & 1 ? 'L' : 'R';
            if (word[0] != 'R' || word.find('L') == std::string::npos) continue;
            INFO(word);
            const auto r = solve_two_bridge(word);
            const auto o = oracle::solve_gluing(build_two_bridge(word));
            CHECK(r.geometric());
            CHECK(o.converged);
            CHECK(std::abs(r.max.volume - o.volume) <= 1e-9);
            ++checked;
        }
    CHECK(checked == 120);
}
