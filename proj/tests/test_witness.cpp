#include <algorithm>
#include <filesystem>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"

#include "arcseq/arc_core.hpp"
#include "arcseq/errors.hpp"
#include "arcseq/reduction.hpp"
#include "arcseq/witness.hpp"
#include "test_util.hpp"

using namespace arcseq;

namespace {

void require_all_pass(const CheckReport& report) {
    for (const Check& c : report.checks) {
        INFO(c.name << ": " << c.detail);
        CHECK(c.passed);
    }
    REQUIRE(report.all_passed());
}

// Re-derives a certificate from mutated deletion sets, the way a hand-edited
// certificate file would look: common/embeddings consistent with the
// deletions, length recomputed.
WitnessCertificate remake(const ReductionInstance& inst, std::set<int> del1,
                          std::set<int> del2) {
    WitnessCertificate cert;
    cert.deleted1.assign(del1.begin(), del1.end());
    cert.deleted2.assign(del2.begin(), del2.end());
    cert.common = delete_positions(inst.s1, del1);
    for (int pos = 1; pos <= inst.s1.size(); ++pos) {
        if (!del1.count(pos)) cert.embed1.map.push_back(pos);
    }
    for (int pos = 1; pos <= inst.s2.size(); ++pos) {
        if (!del2.count(pos)) cert.embed2.map.push_back(pos);
    }
    cert.length = cert.common.size();
    return cert;
}

} // namespace

TEST_CASE("assignment text format") {
    Assignment a = parse_assignment("1,-2,3,-4", 4);
    CHECK(a.values == std::vector<bool>{true, false, true, false});
    CHECK(serialize_assignment(a) == "1,-2,3,-4");
    CHECK(parse_assignment(serialize_assignment(a), 4) == a);
    CHECK(parse_assignment(" -1 , 2 , -3 ", 3).values ==
          std::vector<bool>{false, true, false});

    CHECK_THROWS_AS(parse_assignment("1,2", 3), ParseError);
    CHECK_THROWS_AS(parse_assignment("1,1,-2", 2), ParseError);
    CHECK_THROWS_AS(parse_assignment("1,-1", 1), ParseError);
    CHECK_THROWS_AS(parse_assignment("1,5", 2), ParseError);
    CHECK_THROWS_AS(parse_assignment("1,zwei", 2), ParseError);
    CHECK_THROWS_AS(parse_assignment("", 1), ParseError);
}

TEST_CASE("satisfies") {
    CnfInstance cnf = testutil::example_cnf();
    CHECK(satisfies(cnf, parse_assignment("1,-2,3,-4", 4)));
    CHECK_FALSE(satisfies(cnf, parse_assignment("-1,-2,3,-4", 4)));
    CHECK(satisfies(cnf, parse_assignment("-1,-2,-3,-4", 4)));
}

TEST_CASE("sat_bruteforce") {
    CnfInstance cnf = testutil::example_cnf();
    auto a = sat_bruteforce(cnf);
    REQUIRE(a.has_value());
    CHECK(satisfies(cnf, *a));
    // Lexicographically first: all-false already satisfies this formula.
    CHECK(a->values == std::vector<bool>{false, false, false, false});

    CnfInstance one = parse_cnf_string("p cnf 3 1\n1 2 -3 0\n");
    auto b = sat_bruteforce(one);
    REQUIRE(b.has_value());
    CHECK(satisfies(one, *b));

    CHECK_FALSE(sat_bruteforce(testutil::unsat_cnf()).has_value());

    CnfInstance big;
    big.num_vars = 25;
    big.clauses.push_back({{{1, false}, {2, false}, {3, false}}});
    CHECK_THROWS_AS(sat_bruteforce(big), GuardError);
}

TEST_CASE("build_witness on the reference formula") {
    ReductionInstance inst = build_instance(testutil::example_cnf());
    Assignment a = parse_assignment("1,-2,3,-4", 4);
    WitnessCertificate cert = build_witness(inst, a);

    CHECK(cert.length == 2020);
    CHECK(cert.length == inst.kprime);
    CHECK(cert.common.size() == 2020);
    // The certificate deletes everything that is not conserved, on both sides.
    CHECK(cert.deleted1.size() == static_cast<size_t>(inst.s1.size()) - 2020);
    CHECK(cert.deleted2.size() == static_cast<size_t>(inst.s2.size()) - 2020);
    CHECK(verify_embedding(cert.common, inst.s1, cert.embed1));
    CHECK(verify_embedding(cert.common, inst.s2, cert.embed2));
    // The common subsequence carries no arcs at all.
    CHECK(cert.common.arcs().empty());

    require_all_pass(verify_witness(inst, cert));

    Assignment back = extract_assignment(inst, cert);
    CHECK(satisfies(inst.cnf, back));
}

TEST_CASE("build_witness on a one-clause instance") {
    ReductionInstance inst = build_instance(parse_cnf_string("p cnf 3 1\n1 2 -3 0\n"));
    Assignment all_true = parse_assignment("1,2,3", 3);
    WitnessCertificate cert = build_witness(inst, all_true);
    CHECK(cert.length == 389);
    require_all_pass(verify_witness(inst, cert));

    // x2 is the satisfied literal with the biggest index here (nx3 is false),
    // so extraction forces x2 = true and reads x1, x3 off the SM1 row.
    Assignment back = extract_assignment(inst, cert);
    CHECK(back == all_true);
}

TEST_CASE("deletion counts per side follow the case lists") {
    // Per variable: 2q+1 deletions in S1 and 1 in S2 (SM2); per clause:
    // 4n+10 in S1 and 10n+5 in S2.
    for (auto [n, q] : {std::pair<int, int>{3, 1}, {4, 3}, {5, 2}}) {
        auto rng = testutil::make_rng(static_cast<unsigned>(100 * n + q));
        CnfInstance cnf = testutil::random_satisfiable_cnf(rng, n, q);
        ReductionInstance inst = build_instance(cnf, 25);
        auto a = sat_bruteforce(cnf);
        REQUIRE(a.has_value());
        WitnessCertificate cert = build_witness(inst, *a);
        CHECK(cert.deleted1.size() ==
              static_cast<size_t>(n * (2 * q + 1) + q * (4 * n + 10)));
        CHECK(cert.deleted2.size() == static_cast<size_t>(q * (10 * n + 5) + n));
        CHECK(cert.length == inst.kprime);
        require_all_pass(verify_witness(inst, cert));
    }
}

TEST_CASE("every literal choice exercises its own case list") {
    // One clause per polarity/position combination, forcing jstar = 1, 2, 3.
    CnfInstance cnf = parse_cnf_string("p cnf 3 1\n1 2 -3 0\n");
    ReductionInstance inst = build_instance(cnf, 25);
    for (const char* text : {"1,-2,3", "-1,2,3", "-1,-2,-3", "1,2,-3"}) {
        Assignment a = parse_assignment(text, 3);
        REQUIRE(satisfies(cnf, a));
        WitnessCertificate cert = build_witness(inst, a);
        INFO("assignment " << text);
        require_all_pass(verify_witness(inst, cert));
        CHECK(satisfies(cnf, extract_assignment(inst, cert)));
    }
}

TEST_CASE("build_witness rejects bad assignments") {
    ReductionInstance inst = build_instance(parse_cnf_string("p cnf 3 1\n1 2 -3 0\n"), 25);
    // (F,F,T) falsifies the only clause.
    CHECK_THROWS_AS(build_witness(inst, parse_assignment("-1,-2,3", 3)),
                    std::invalid_argument);
    CHECK_THROWS_AS(build_witness(inst, parse_assignment("1,2", 2)),
                    std::invalid_argument);
}

TEST_CASE("round-trip on random satisfiable instances") {
    auto rng = testutil::make_rng(2718);
    for (int round = 0; round < 25; ++round) {
        int n = testutil::pick(rng, 3, 6);
        int q = testutil::pick(rng, 1, 4);
        CnfInstance cnf = testutil::random_satisfiable_cnf(rng, n, q);
        auto a = sat_bruteforce(cnf);
        REQUIRE(a.has_value());
        ReductionInstance inst = build_instance(cnf, 30);
        WitnessCertificate cert = build_witness(inst, *a);
        CHECK(cert.length == inst.kprime);
        CHECK(verify_witness(inst, cert).all_passed());
        Assignment back = extract_assignment(inst, cert);
        INFO("n=" << n << " q=" << q << " a=" << serialize_assignment(*a)
                  << " back=" << serialize_assignment(back));
        CHECK(satisfies(cnf, back));
    }
}

TEST_CASE("verify_witness flags targeted mutations") {
    ReductionInstance inst = build_instance(parse_cnf_string("p cnf 3 1\n1 2 -3 0\n"), 25);
    WitnessCertificate good = build_witness(inst, parse_assignment("1,2,3", 3));
    std::set<int> del1(good.deleted1.begin(), good.deleted1.end());
    std::set<int> del2(good.deleted2.begin(), good.deleted2.end());

    SUBCASE("keeping both endpoints of an arc") {
        // Conserve one deleted arc endpoint of s1 and drop a conserved
        // arc-free token instead, keeping the count unchanged.
        Arc arc = inst.s1.arcs().front();
        int endpoint = del1.count(arc.left) ? arc.left : arc.right;
        REQUIRE(del1.count(endpoint) == 1);
        int spacer = chi(1, "y1", inst.s1);
        REQUIRE(del1.count(spacer) == 0);
        del1.erase(endpoint);
        del1.insert(spacer);
        WitnessCertificate bad = remake(inst, del1, del2);
        CheckReport report = verify_witness(inst, bad);
        CHECK_FALSE(report.all_passed());
        bool arc_check_failed = false;
        for (const Check& c : report.checks) {
            if (c.name == "no-arc-fully-conserved") arc_check_failed = !c.passed;
        }
        CHECK(arc_check_failed);
    }

    SUBCASE("deleting a padding symbol") {
        int wpos = component_span(inst.provenance1, "W.1").first;
        REQUIRE(del1.count(wpos) == 0);
        del1.insert(wpos);
        WitnessCertificate bad = remake(inst, del1, del2);
        CheckReport report = verify_witness(inst, bad);
        CHECK_FALSE(report.all_passed());
        bool padding_failed = false, length_failed = false;
        for (const Check& c : report.checks) {
            if (c.name == "padding-conserved") padding_failed = !c.passed;
            if (c.name == "length-equals-kprime") length_failed = !c.passed;
        }
        CHECK(padding_failed);
        CHECK(length_failed);
    }

    SUBCASE("mismatched deletions and embedding") {
        WitnessCertificate bad = good;
        bad.deleted1.pop_back();
        CheckReport report = verify_witness(inst, bad);
        CHECK_FALSE(report.all_passed());
    }
}

TEST_CASE("extract_assignment rejects inconsistent certificates") {
    ReductionInstance inst = build_instance(parse_cnf_string("p cnf 3 1\n1 2 -3 0\n"), 25);
    WitnessCertificate good = build_witness(inst, parse_assignment("1,2,3", 3));

    SUBCASE("all selectors of a clause deleted") {
        // Swap the conserved selector for a deleted spacer so the length
        // stays at kprime and only the selector consistency is violated.
        std::set<int> del1(good.deleted1.begin(), good.deleted1.end());
        std::set<int> del2(good.deleted2.begin(), good.deleted2.end());
        for (const char* s : {"s1", "s2", "s3"}) {
            int pos = chi(1, s, inst.s1, inst.provenance1, "C1.1");
            if (del1.count(pos)) continue;
            del1.insert(pos);
            auto spacer = std::find_if(del1.begin(), del1.end(), [&](int p) {
                return inst.s1.at(p)[0] == 'y';
            });
            REQUIRE(spacer != del1.end());
            del1.erase(spacer);
        }
        WitnessCertificate bad = remake(inst, del1, del2);
        REQUIRE(bad.length == inst.kprime);
        CHECK_THROWS_AS(extract_assignment(inst, bad), std::runtime_error);
    }

    SUBCASE("certificate shorter than kprime") {
        WitnessCertificate bad = good;
        bad.length = inst.kprime - 1;
        CHECK_THROWS_AS(extract_assignment(inst, bad), std::invalid_argument);
    }
}

TEST_CASE("certificate file round-trip") {
    ReductionInstance inst = build_instance(parse_cnf_string("p cnf 3 1\n1 2 -3 0\n"), 12);
    WitnessCertificate cert = build_witness(inst, parse_assignment("1,2,3", 3));
    auto path = std::filesystem::temp_directory_path() / "arcseq_cert_roundtrip.txt";
    save_certificate(cert, path.string());
    WitnessCertificate back = load_certificate(path.string());
    CHECK(back.deleted1 == cert.deleted1);
    CHECK(back.deleted2 == cert.deleted2);
    CHECK(back.common == cert.common);
    CHECK(back.embed1 == cert.embed1);
    CHECK(back.embed2 == cert.embed2);
    CHECK(back.length == cert.length);
    CHECK(verify_witness(inst, back).all_passed());
    std::filesystem::remove(path);

    CHECK_THROWS_AS(load_certificate("/nonexistent/cert.txt"), ParseError);
}
