#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "arcseq/lapcs.hpp"
#include "arcseq/occurrence.hpp"
#include "arcseq/reduction.hpp"
#include "arcseq/witness.hpp"

namespace py = pybind11;
using namespace arcseq;

namespace {

std::vector<int> assignment_to_signed(const Assignment& a) {
    std::vector<int> out;
    for (int k = 1; k <= a.size(); ++k) out.push_back(a.value(k) ? k : -k);
    return out;
}

Assignment assignment_from_signed(const std::vector<int>& lits, int n) {
    std::string text;
    for (int v : lits) {
        if (!text.empty()) text += ",";
        text += std::to_string(v);
    }
    return parse_assignment(text, n);
}

} // namespace

PYBIND11_MODULE(_arcseq, m) {
    m.doc() = "arc-annotated sequence toolkit";

    m.def("classify", [](const std::string& text) {
        return to_string(classify_level(parse_sequence(text)));
    }, py::arg("aas_text"), "level name of an AAS document");

    m.def("occurs", [](const std::string& pattern, const std::string& text)
              -> std::optional<std::vector<int>> {
        auto e = occurs(parse_sequence(pattern), parse_sequence(text));
        if (!e) return std::nullopt;
        return e->map;
    }, py::arg("pattern"), py::arg("text"),
       "embedding positions, or None when the pattern does not occur");

    m.def("lapcs_length", [](const std::string& a, const std::string& b,
                             long long node_limit, double time_limit) {
        SearchBudget budget{node_limit, time_limit};
        LapcsSolution sol = lapcs_branch_and_bound(parse_sequence(a),
                                                   parse_sequence(b), budget);
        return py::make_tuple(sol.length, sol.optimal);
    }, py::arg("a"), py::arg("b"), py::arg("node_limit") = 1'000'000,
       py::arg("time_limit") = 10.0,
       "(length, proven_optimal) from the branch-and-bound solver");

    m.def("decide", [](const std::string& a, const std::string& b, long long k,
                       long long node_limit, double time_limit) {
        SearchBudget budget{node_limit, time_limit};
        DecideResult res = decide_lapcs(parse_sequence(a), parse_sequence(b), k, budget);
        switch (res.decision) {
        case Decision::Yes: return std::string("yes");
        case Decision::No: return std::string("no");
        default: return std::string("unknown");
        }
    }, py::arg("a"), py::arg("b"), py::arg("k"), py::arg("node_limit") = 1'000'000,
       py::arg("time_limit") = 10.0);

    m.def("k_prime", &k_prime, py::arg("n"), py::arg("q"), py::arg("padding"));
    m.def("default_padding", &default_padding, py::arg("n"), py::arg("q"));

    m.def("reduce", [](const std::string& cnf_text,
                       std::optional<long long> padding) {
        CnfInstance cnf = parse_cnf_string(cnf_text);
        ReductionInstance inst = build_instance(cnf, padding);
        CheckReport report = audit_instance(inst);
        py::dict out;
        out["len1"] = inst.s1.length();
        out["len2"] = inst.s2.length();
        out["kprime"] = inst.kprime;
        out["level1"] = to_string(classify_level(inst.s1));
        out["level2"] = to_string(classify_level(inst.s2));
        out["audit_pass"] = report.all_passed();
        out["s1"] = serialize(inst.s1);
        out["s2"] = serialize(inst.s2);
        return out;
    }, py::arg("cnf_text"), py::arg("padding") = std::nullopt,
       "build the decision instance for a DIMACS 3-CNF and audit it");

    m.def("sat", [](const std::string& cnf_text) -> std::optional<std::vector<int>> {
        auto a = sat_bruteforce(parse_cnf_string(cnf_text));
        if (!a) return std::nullopt;
        return assignment_to_signed(*a);
    }, py::arg("cnf_text"), "first satisfying assignment as signed variables, or None");

    m.def("witness_length", [](const std::string& cnf_text,
                               const std::vector<int>& assignment) {
        CnfInstance cnf = parse_cnf_string(cnf_text);
        ReductionInstance inst = build_instance(cnf);
        Assignment a = assignment_from_signed(assignment, cnf.n());
        WitnessCertificate cert = build_witness(inst, a);
        CheckReport report = verify_witness(inst, cert);
        if (!report.all_passed()) {
            throw std::runtime_error("internal witness verification failed");
        }
        return cert.length;
    }, py::arg("cnf_text"), py::arg("assignment"),
       "length of the verified certificate built from a satisfying assignment");

    m.def("extract", [](const std::string& cnf_text,
                        const std::vector<int>& assignment) {
        CnfInstance cnf = parse_cnf_string(cnf_text);
        ReductionInstance inst = build_instance(cnf);
        Assignment a = assignment_from_signed(assignment, cnf.n());
        WitnessCertificate cert = build_witness(inst, a);
        return assignment_to_signed(extract_assignment(inst, cert));
    }, py::arg("cnf_text"), py::arg("assignment"),
       "assignment read back from the certificate built for `assignment`");
}
