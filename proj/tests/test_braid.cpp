#include <doctest.h>

#include <random>

#include "braidtri/braid.hpp"

using namespace braidtri;

namespace {

BraidWord random_braid(std::mt19937_64& rng, int max_len) {
    const int n = int(rng() % (max_len + 1));
    std::vector<int> l;
    for (int i = 0; i < n; ++i) {
        const int g = 1 + int(rng() % 2);
        l.push_back(rng() % 2 ? g : -g);
    }
    return BraidWord(l);
}

Laurent monomial(int e, long c) {
    Laurent p;
    p[e] = c;
    return p;
}

}  // namespace

TEST_CASE("parsing braid words") {
    const auto w = BraidWord::parse("C^2 s1^5 s2^-1");
    CHECK(w == BraidWord::full_twist().pow(2) * BraidWord::s1(5) * BraidWord::s2(-1));
    CHECK(BraidWord::parse("(s1 s2)^3") == BraidWord::full_twist());
    CHECK(BraidWord::parse("σ1σ2σ1") == BraidWord({1, 2, 1}));
    CHECK(BraidWord::parse("s1^3 s2 s1^-1").str() == "s1^3 s2 s1^-1");
    CHECK_THROWS_AS(BraidWord::parse("s3"), std::invalid_argument);
    CHECK_THROWS_AS(BraidWord::parse("s1^"), std::invalid_argument);
    CHECK_THROWS_AS(BraidWord::parse("(s1 s2"), std::invalid_argument);
    CHECK(BraidWord({1, 2, -1}).rotated(1) == BraidWord({2, -1, 1}));
    CHECK(exponent_sum(BraidWord::parse("C^2 s1^5 s2^-1")) == 16);
}

TEST_CASE("braid relation and centrality of C in random contexts") {
    std::mt19937_64 rng(2024);
    const auto C = BraidWord::full_twist();
    const auto lhs = BraidWord({1, 2, 1}), rhs = BraidWord({2, 1, 2});
    for (int k = 0; k < 1000; ++k) {
        const auto u = random_braid(rng, 8), v = random_braid(rng, 8);
        CHECK(equal_in_b3(u * lhs * v, u * rhs * v));
        CHECK(equal_in_b3(u * C * v, C * u * v));
    }
}

TEST_CASE("reduced Burau: determinant, inverses, a non-relation") {
    std::mt19937_64 rng(99);
    for (int k = 0; k < 300; ++k) {
        const auto w = random_braid(rng, 10);
        const int e = exponent_sum(w);
        CHECK(reduced_burau(w).det() == monomial(e, e % 2 ? -1 : 1));
        CHECK(reduced_burau(w * w.inverse()) == BurauMatrix::identity());
        CHECK(reduced_burau(w) * reduced_burau(w.inverse()) == BurauMatrix::identity());
    }
    CHECK_FALSE(equal_in_b3(BraidWord({1, 2}), BraidWord({2, 1})));
    CHECK_FALSE(equal_in_b3(BraidWord::s1(2), BraidWord()));
}

TEST_CASE("pretzel chain and T-link form for p = 1..20") {
    for (int p = 1; p <= 20; ++p) {
        const auto r = verify_pretzel_chain(p);
        INFO("p = " << p);
        CHECK(r.ok);
        CHECK(r.failed_step == -1);
        CHECK(r.exponent_sum_start == p + 11);
        CHECK(r.exponent_sum_end == p + 11);
        CHECK(r.same_trace_and_det);
        for (const auto& s : r.steps) CHECK(exponent_sum(s.from) == p + 11);
        const auto words = pretzel_chain_words(p);
        CHECK(words.front() == BraidWord::full_twist().pow(2) * BraidWord::s1(p) * BraidWord::s2(-1));
        CHECK(words.back() == BraidWord::s1(3) * BraidWord::s2() * BraidWord::s1(p + 6) * BraidWord::s2());
        const auto t = verify_tlink_form(p);
        CHECK(t.ok);
        CHECK(t.equality);
        CHECK(t.rotation >= 0);
    }
}

TEST_CASE("a tampered chain fails at the edited step") {
    for (int p : {1, 7}) {
        const auto r = verify_pretzel_chain(p, [](std::vector<BraidWord>& w) {
            auto l = w[2].letters();
            l.pop_back();
            w[2] = BraidWord(l);
        });
        CHECK_FALSE(r.ok);
        CHECK((r.failed_step == 1 || r.failed_step == 2));
        CHECK(format_chain(r).find("FAIL") != std::string::npos);
    }
}
