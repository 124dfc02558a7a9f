#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "arcseq/errors.hpp"
#include "arcseq/lapcs.hpp"
#include "arcseq/occurrence.hpp"
#include "arcseq/reduction.hpp"
#include "arcseq/witness.hpp"

namespace {

using namespace arcseq;

// exit codes: 0 yes/success, 1 no/negative, 2 usage or input error,
// 3 budget exhausted / unknown

int cmd_classify(const std::string& file) {
    ArcAnnotatedSequence s = load_sequence_file(file);
    std::cout << to_string(classify_level(s)) << "\n";
    return 0;
}

int cmd_occurs(const std::string& pattern_file, const std::string& text_file) {
    ArcAnnotatedSequence pattern = load_sequence_file(pattern_file);
    ArcAnnotatedSequence text = load_sequence_file(text_file);
    auto e = occurs(pattern, text);
    if (!e) {
        std::cout << "no\n";
        return 1;
    }
    std::cout << serialize_embedding(*e);
    return 0;
}

void print_solution(const LapcsSolution& sol) {
    std::cout << "length: " << sol.length << "\n";
    std::cout << serialize(sol.common);
    std::cout << serialize_embedding(sol.embed1);
    std::cout << serialize_embedding(sol.embed2);
}

// The candidate-enumeration solver needs to know which annotation class to
// draw from; the common subsequence can never exceed either input's level.
Level param_level(const ArcAnnotatedSequence& a, const ArcAnnotatedSequence& b) {
    Level l = std::min(classify_level(a), classify_level(b));
    if (l == Level::Plain) return Level::Stem;
    if (l > Level::Nested) {
        throw std::invalid_argument(
            "the parameterized solver handles STEM or NESTED structures, inputs allow " +
            std::string(to_string(l)));
    }
    return l;
}

int cmd_lapcs(const std::string& a_file, const std::string& b_file,
              const std::string& solver, std::optional<long long> k,
              long long node_limit, double time_limit) {
    ArcAnnotatedSequence a = load_sequence_file(a_file);
    ArcAnnotatedSequence b = load_sequence_file(b_file);
    SearchBudget budget{node_limit, time_limit};

    if (solver == "bf") {
        LapcsSolution sol = lapcs_bruteforce(a, b);
        if (k) {
            bool yes = sol.length >= *k;
            std::cout << (yes ? "yes" : "no") << "\n";
            if (yes) print_solution(sol);
            return yes ? 0 : 1;
        }
        print_solution(sol);
        return 0;
    }
    if (solver == "param") {
        Level level = param_level(a, b);
        if (k) {
            if (*k <= 0) {
                std::cout << "yes\n";
                return 0;
            }
            auto sol = lapcs_parameterized(a, b, static_cast<int>(*k), level);
            std::cout << (sol ? "yes" : "no") << "\n";
            if (sol) print_solution(*sol);
            return sol ? 0 : 1;
        }
        LapcsSolution sol = lapcs_parameterized_best(a, b, level);
        print_solution(sol);
        return 0;
    }
    if (solver == "bnb") {
        if (k) {
            DecideResult res = decide_lapcs(a, b, *k, budget);
            switch (res.decision) {
            case Decision::Yes:
                std::cout << "yes\n";
                print_solution(*res.witness);
                return 0;
            case Decision::No:
                std::cout << "no\n";
                return 1;
            case Decision::Unknown:
                std::cout << "unknown\n";
                return 3;
            }
            return 2;
        }
        LapcsSolution sol = lapcs_branch_and_bound(a, b, budget);
        print_solution(sol);
        if (!sol.optimal) {
            std::cout << "note: budget exhausted, length is a lower bound\n";
            return 3;
        }
        return 0;
    }
    throw std::invalid_argument("unknown solver '" + solver + "'");
}

int cmd_reduce(const std::string& cnf_file, const std::string& out_dir,
               std::optional<long long> padding) {
    std::ifstream in(cnf_file);
    if (!in) throw ParseError("cannot open " + cnf_file);
    CnfInstance cnf = parse_cnf(in);
    ReductionInstance inst = build_instance(cnf, padding);
    if (inst.padding_warning) {
        std::cout << "warning: padding " << inst.padding
                  << " is below the safety threshold "
                  << padding_threshold(cnf.n(), cnf.q())
                  << "; the reverse direction of the reduction is unproven at this size\n";
    }
    save_instance(inst, out_dir);
    CheckReport report = audit_instance(inst);
    report.print(std::cout);
    std::cout << "kprime: " << inst.kprime << "\n";
    std::cout << (report.all_passed() ? "AUDIT PASS" : "AUDIT FAIL") << "\n";
    return report.all_passed() ? 0 : 1;
}

int cmd_witness(const std::string& cnf_file, const std::string& assignment_text,
                bool solve, const std::string& out_file) {
    std::ifstream in(cnf_file);
    if (!in) throw ParseError("cannot open " + cnf_file);
    CnfInstance cnf = parse_cnf(in);
    Assignment a;
    if (solve) {
        auto found = sat_bruteforce(cnf);
        if (!found) {
            std::cout << "unsatisfiable\n";
            return 1;
        }
        a = *found;
        std::cout << "assignment: " << serialize_assignment(a) << "\n";
    } else {
        a = parse_assignment(assignment_text, cnf.n());
    }
    ReductionInstance inst = build_instance(cnf);
    WitnessCertificate cert = build_witness(inst, a);
    save_certificate(cert, out_file);
    std::cout << "length: " << cert.length << "\n";
    return 0;
}

int cmd_verify(const std::string& dir, const std::string& cert_file) {
    ReductionInstance inst = load_instance(dir);
    WitnessCertificate cert = load_certificate(cert_file);
    CheckReport report = verify_witness(inst, cert);
    report.print(std::cout);
    bool ok = report.all_passed();
    std::cout << (ok ? "VERIFY PASS" : "VERIFY FAIL") << "\n";
    return ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"arc-annotated sequence toolkit"};
    app.require_subcommand(1);

    std::string file_a, file_b, out_dir, out_file, solver = "bnb", assignment;
    long long k_value = 0, node_limit = 50'000'000, padding_value = 0;
    double time_limit = 60.0;
    bool solve = false;

    auto* classify = app.add_subcommand("classify", "print the arc-structure level");
    classify->add_option("file", file_a)->required();

    auto* occurs_cmd = app.add_subcommand("occurs", "test pattern occurrence in text");
    occurs_cmd->add_option("pattern", file_a)->required();
    occurs_cmd->add_option("text", file_b)->required();

    auto* lapcs_cmd = app.add_subcommand("lapcs", "longest arc-preserving common subsequence");
    lapcs_cmd->add_option("a", file_a)->required();
    lapcs_cmd->add_option("b", file_b)->required();
    lapcs_cmd->add_option("--solver", solver)->check(CLI::IsMember({"bf", "param", "bnb"}));
    auto* k_opt = lapcs_cmd->add_option("--k", k_value, "decide length >= k");
    lapcs_cmd->add_option("--node-limit", node_limit);
    lapcs_cmd->add_option("--time-limit", time_limit, "seconds");

    auto* reduce_cmd = app.add_subcommand("reduce", "build the 3SAT decision instance");
    reduce_cmd->add_option("cnf", file_a)->required();
    reduce_cmd->add_option("--out-dir", out_dir)->required();
    auto* padding_opt = reduce_cmd->add_option("--padding", padding_value);

    auto* witness_cmd = app.add_subcommand("witness", "build a certificate from an assignment");
    witness_cmd->add_option("cnf", file_a)->required();
    auto* assign_opt = witness_cmd->add_option("--assignment", assignment,
                                               "comma-separated signed variables");
    witness_cmd->add_flag("--solve", solve, "search for a satisfying assignment");
    witness_cmd->add_option("--out", out_file)->required();

    auto* verify_cmd = app.add_subcommand("verify", "check a certificate against an instance");
    verify_cmd->add_option("dir", file_a)->required();
    verify_cmd->add_option("cert", file_b)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (classify->parsed()) return cmd_classify(file_a);
        if (occurs_cmd->parsed()) return cmd_occurs(file_a, file_b);
        if (lapcs_cmd->parsed()) {
            std::optional<long long> k;
            if (k_opt->count() > 0) k = k_value;
            return cmd_lapcs(file_a, file_b, solver, k, node_limit, time_limit);
        }
        if (reduce_cmd->parsed()) {
            std::optional<long long> padding;
            if (padding_opt->count() > 0) padding = padding_value;
            return cmd_reduce(file_a, out_dir, padding);
        }
        if (witness_cmd->parsed()) {
            if (solve == (assign_opt->count() > 0)) {
                std::cerr << "error: give exactly one of --assignment or --solve\n";
                return 2;
            }
            return cmd_witness(file_a, assignment, solve, out_file);
        }
        if (verify_cmd->parsed()) return cmd_verify(file_a, file_b);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
