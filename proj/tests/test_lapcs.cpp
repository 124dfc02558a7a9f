#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"

#include "arcseq/arc_core.hpp"
#include "arcseq/errors.hpp"
#include "arcseq/lapcs.hpp"
#include "arcseq/occurrence.hpp"
#include "test_util.hpp"

using namespace arcseq;

namespace {

ArcAnnotatedSequence aas(std::vector<Symbol> toks, std::vector<Arc> arcs = {}) {
    return ArcAnnotatedSequence(std::move(toks), std::move(arcs));
}

void check_solution(const LapcsSolution& sol, const ArcAnnotatedSequence& s1,
                    const ArcAnnotatedSequence& s2) {
    CHECK(sol.length == sol.common.size());
    CHECK(verify_embedding(sol.common, s1, sol.embed1));
    CHECK(verify_embedding(sol.common, s2, sol.embed2));
}

} // namespace

TEST_CASE("lapcs_bruteforce on hand-picked instances") {
    ArcAnnotatedSequence s({"a", "b", "c"}, {{1, 3}});
    LapcsSolution same = lapcs_bruteforce(s, s);
    CHECK(same.length == 3);
    CHECK(same.optimal);
    check_solution(same, s, s);

    LapcsSolution one = lapcs_bruteforce(aas({"a", "b"}, {{1, 2}}), aas({"a", "b"}));
    CHECK(one.length == 1);

    ArcAnnotatedSequence aba({"a", "b", "a"}, {{1, 3}});
    ArcAnnotatedSequence aa({"a", "a"}, {{1, 2}});
    LapcsSolution two = lapcs_bruteforce(aba, aa);
    CHECK(two.length == 2);
    CHECK(two.common == aa);
    check_solution(two, aba, aa);

    LapcsSolution zero = lapcs_bruteforce(aas({"a"}), aas({"b"}));
    CHECK(zero.length == 0);
    CHECK(zero.optimal);
}

TEST_CASE("lapcs_bruteforce refuses long first arguments") {
    std::vector<Symbol> long_toks(15, "a");
    CHECK_THROWS_AS(lapcs_bruteforce(aas(long_toks), aas({"a"})), GuardError);
}

TEST_CASE("stem annotation enumeration") {
    auto k1 = enumerate_stem_annotations(1);
    REQUIRE(k1.size() == 1);
    CHECK(k1[0].empty());

    auto k3 = enumerate_stem_annotations(3);
    std::set<std::vector<Arc>> got(k3.begin(), k3.end());
    std::set<std::vector<Arc>> want = {{}, {{1, 2}}, {{1, 3}}, {{2, 3}}};
    CHECK(got == want);

    CHECK(enumerate_stem_annotations(5).size() == 16);

    for (int k = 1; k <= 12; ++k) {
        auto all = enumerate_stem_annotations(k);
        CHECK(all.size() == (1ull << (k - 1)));
        std::set<std::vector<Arc>> distinct(all.begin(), all.end());
        CHECK(distinct.size() == all.size());
        std::vector<Symbol> toks(static_cast<size_t>(k), "a");
        for (const auto& arcs : all) {
            CHECK(classify_level(ArcAnnotatedSequence(toks, arcs)) <= Level::Stem);
        }
    }

    CHECK_THROWS_AS(enumerate_stem_annotations(-1), std::invalid_argument);
    CHECK_THROWS_AS(enumerate_stem_annotations(31), GuardError);
}

TEST_CASE("nested annotation enumeration") {
    // Counts follow the Motzkin numbers.
    const std::vector<size_t> motzkin = {1, 1, 2, 4, 9, 21, 51, 127, 323, 835, 2188};
    for (int k = 0; k <= 10; ++k) {
        auto all = enumerate_nested_annotations(k);
        CHECK(all.size() == motzkin[static_cast<size_t>(k)]);
        std::set<std::vector<Arc>> distinct(all.begin(), all.end());
        CHECK(distinct.size() == all.size());
        if (k >= 1) {
            std::vector<Symbol> toks(static_cast<size_t>(k), "a");
            for (const auto& arcs : all) {
                CHECK(classify_level(ArcAnnotatedSequence(toks, arcs)) <= Level::Nested);
            }
            // Every stem set is nested.
            auto stems = enumerate_stem_annotations(k);
            for (const auto& arcs : stems) {
                CHECK(distinct.count(arcs) == 1);
            }
        }
    }
    CHECK_THROWS_AS(enumerate_nested_annotations(-2), std::invalid_argument);
    CHECK_THROWS_AS(enumerate_nested_annotations(15), GuardError);
}

TEST_CASE("lapcs_parameterized on hand-picked instances") {
    ArcAnnotatedSequence arced({"a", "b"}, {{1, 2}});
    ArcAnnotatedSequence plain2({"a", "b"});

    auto empty = lapcs_parameterized(arced, plain2, 0, Level::Stem);
    REQUIRE(empty.has_value());
    CHECK(empty->length == 0);

    CHECK_FALSE(lapcs_parameterized(arced, plain2, 2, Level::Stem).has_value());
    auto single = lapcs_parameterized(arced, plain2, 1, Level::Stem);
    REQUIRE(single.has_value());
    check_solution(*single, arced, plain2);

    ArcAnnotatedSequence s({"a", "b", "c"}, {{1, 3}});
    auto full = lapcs_parameterized(s, s, 3, Level::Stem);
    REQUIRE(full.has_value());
    CHECK(full->length == 3);
    check_solution(*full, s, s);

    CHECK_FALSE(lapcs_parameterized(s, s, 4, Level::Stem).has_value());
    CHECK_THROWS_AS(lapcs_parameterized(s, s, -1, Level::Stem), std::invalid_argument);
    CHECK_THROWS_AS(lapcs_parameterized(s, s, 2, Level::Plain), std::invalid_argument);
    CHECK_THROWS_AS(lapcs_parameterized(s, s, 2, Level::Crossing), std::invalid_argument);
}

TEST_CASE("lcs_upper_bound basics") {
    ArcAnnotatedSequence abc({"a", "b", "c"});
    CHECK(lcs_upper_bound(abc, abc) == 3);
    CHECK(lcs_upper_bound(aas({"a", "a"}), aas({"b", "b"})) == 0);
    CHECK(lcs_upper_bound(aas({"a", "b", "a"}), aas({"a", "a"})) == 2);
    CHECK(lcs_upper_bound(aas({}), abc) == 0);
    // Arcs are ignored by the bound.
    CHECK(lcs_upper_bound(ArcAnnotatedSequence({"a", "b"}, {{1, 2}}), aas({"a", "b"})) == 2);
}

TEST_CASE("branch and bound on hand-picked instances") {
    ArcAnnotatedSequence s({"a", "b", "c", "d"}, {{1, 4}, {2, 3}});
    LapcsSolution same = lapcs_branch_and_bound(s, s);
    CHECK(same.length == 4);
    CHECK(same.optimal);
    check_solution(same, s, s);

    LapcsSolution none = lapcs_branch_and_bound(aas({"a", "a"}), aas({"b", "b"}));
    CHECK(none.length == 0);
    CHECK(none.optimal);

    LapcsSolution one = lapcs_branch_and_bound(aas({"a", "b"}, {{1, 2}}), aas({"a", "b"}));
    CHECK(one.length == 1);
    CHECK(one.optimal);
}

TEST_CASE("budget validation and exhaustion") {
    ArcAnnotatedSequence s({"a", "b"});
    CHECK_THROWS_AS(lapcs_branch_and_bound(s, s, {0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(lapcs_branch_and_bound(s, s, {100, 0.0}), std::invalid_argument);

    // Alternating strings with a tiny node budget: the search cannot finish.
    std::vector<Symbol> t1, t2;
    for (int i = 0; i < 15; ++i) {
        t1.push_back("a");
        t1.push_back("b");
        t2.push_back("b");
        t2.push_back("a");
    }
    LapcsSolution starved = lapcs_branch_and_bound(aas(t1), aas(t2), {1, 60.0});
    CHECK_FALSE(starved.optimal);

    DecideResult unknown = decide_lapcs(aas(t1), aas(t2), 30, {1, 60.0});
    CHECK(unknown.decision == Decision::Unknown);
    CHECK_FALSE(unknown.witness.has_value());
}

TEST_CASE("decide_lapcs on hand-picked instances") {
    ArcAnnotatedSequence s({"a", "b", "c"}, {{1, 3}});
    CHECK(decide_lapcs(s, s, 0).decision == Decision::Yes);
    DecideResult full = decide_lapcs(s, s, 3);
    CHECK(full.decision == Decision::Yes);
    REQUIRE(full.witness.has_value());
    check_solution(*full.witness, s, s);
    CHECK(decide_lapcs(s, s, 4).decision == Decision::No);

    ArcAnnotatedSequence arced({"a", "b"}, {{1, 2}});
    ArcAnnotatedSequence plain2({"a", "b"});
    CHECK(decide_lapcs(arced, plain2, 2).decision == Decision::No);
    CHECK(decide_lapcs(arced, plain2, 1).decision == Decision::Yes);
}

TEST_CASE("solvers agree on random instances and the decision is monotone") {
    auto rng = testutil::make_rng(4242);
    for (int round = 0; round < 120; ++round) {
        auto shape = (round % 2 == 0) ? testutil::ArcShape::Stem : testutil::ArcShape::Nested;
        ArcAnnotatedSequence s1 = testutil::random_aas(rng, 8, 3, shape);
        ArcAnnotatedSequence s2 = testutil::random_aas(rng, 8, 3, shape);
        Level lvl = (shape == testutil::ArcShape::Stem) ? Level::Stem : Level::Nested;

        LapcsSolution bf = lapcs_bruteforce(s1, s2);
        LapcsSolution bnb = lapcs_branch_and_bound(s1, s2);
        CHECK(bnb.optimal);
        CHECK(bf.length == bnb.length);
        check_solution(bf, s1, s2);
        check_solution(bnb, s1, s2);

        // Symmetry of the optimum.
        CHECK(lapcs_branch_and_bound(s2, s1).length == bf.length);

        // Parameterized solver: solution exists iff k <= optimum.
        for (int k = 0; k <= std::min(bf.length + 1, std::min(s1.size(), s2.size())); ++k) {
            auto got = lapcs_parameterized(s1, s2, k, lvl);
            CHECK(got.has_value() == (k <= bf.length));
            if (got) check_solution(*got, s1, s2);
        }

        LapcsSolution best = lapcs_parameterized_best(s1, s2, lvl);
        CHECK(best.length == bf.length);
        CHECK(best.optimal);
    }
}

TEST_CASE("bound sanity on random instances") {
    auto rng = testutil::make_rng(99);
    for (int round = 0; round < 150; ++round) {
        auto shape = static_cast<testutil::ArcShape>(round % 4);
        ArcAnnotatedSequence s1 = testutil::random_aas(rng, 9, 4, shape);
        ArcAnnotatedSequence s2 = testutil::random_aas(rng, 9, 4, shape);
        int lcs = lcs_upper_bound(s1, s2);
        CHECK(lcs <= std::min(s1.size(), s2.size()));
        LapcsSolution sol = lapcs_branch_and_bound(s1, s2);
        CHECK(sol.optimal);
        CHECK(sol.length <= lcs);
    }
}
