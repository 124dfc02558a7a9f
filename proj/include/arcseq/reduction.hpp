#ifndef ARCSEQ_REDUCTION_HPP
#define ARCSEQ_REDUCTION_HPP

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "arcseq/arc_core.hpp"
#include "arcseq/report.hpp"

namespace arcseq {

struct Literal {
    int var = 0; // 1-based variable index
    bool negated = false;

    bool operator==(const Literal&) const = default;
};

// A 3-CNF formula: q clauses of exactly three literals over distinct
// variables, n >= 3 variables.
struct CnfInstance {
    int num_vars = 0;
    std::vector<std::array<Literal, 3>> clauses;

    int n() const { return num_vars; }
    int q() const { return static_cast<int>(clauses.size()); }

    bool operator==(const CnfInstance&) const = default;
};

// DIMACS CNF: "c" comment lines, one "p cnf <n> <q>" header, clauses as
// whitespace-separated signed integers terminated by 0. All defects are
// collected into a single ParseError.
CnfInstance parse_cnf(std::istream& in);
CnfInstance parse_cnf_string(const std::string& text);
std::string serialize_cnf(const CnfInstance& cnf);

// Position (1-based) of the r-th occurrence of token c, in the whole
// sequence or restricted to the positions labeled `label`. Throws
// std::out_of_range when there are fewer than r occurrences.
int chi(int r, const Symbol& c, const ArcAnnotatedSequence& s);
int chi(int r, const Symbol& c, const ArcAnnotatedSequence& s,
        const std::vector<std::string>& provenance, const std::string& label);

// Length threshold of the constructed decision instance.
long long k_prime(int n, int q, long long padding);

// Padding that the construction uses when no override is given.
long long default_padding(int n, int q);

// Smallest padding for which the deleting-a-padding-run trade is provably
// non-optimal; below it the reverse direction of the reduction is unproven.
long long padding_threshold(int n, int q);

// The two sequences built from a 3-CNF, with per-position component labels.
// Labels: C1.<i>, P1.<i>, SM1, W.<i>, V.<i> on s1; C2.<i>, P2.<i>, SM2,
// W.<i>, V.<i> on s2. provenance vectors are indexed by position (entry 0
// unused).
struct ReductionInstance {
    CnfInstance cnf;
    long long padding = 0;
    long long kprime = 0;
    bool padding_warning = false; // padding below padding_threshold
    ArcAnnotatedSequence s1, s2;
    std::vector<std::string> provenance1, provenance2;
};

// Builds the instance. padding_override, when given, must be >= 1; values
// below padding_threshold are allowed but flag padding_warning.
ReductionInstance build_instance(const CnfInstance& cnf,
                                 std::optional<long long> padding_override = std::nullopt);

// First and last position carrying the given component label.
std::pair<int, int> component_span(const std::vector<std::string>& provenance,
                                   const std::string& label);

// Positions of the r-th spacer run (n+1 consecutive copies of the same y
// symbol) inside the labeled component. Adjacent runs are contiguous in the
// token stream, so runs are recovered by slicing the component's y positions
// into blocks of n+1.
std::vector<int> q_segment_positions(const ReductionInstance& inst, int seq_index,
                                     const std::string& label, int r);

// Structural self-check: lengths, kprime, level, per-symbol occurrence
// counts, per-component s-symbol uniqueness, arc counts.
CheckReport audit_instance(const ReductionInstance& inst);

// Reads the clauses back out of the constructed sequences: the block around
// each s_j in C1.<i> names the variable, the s_j neighborhood in C2.<i> the
// polarity.
CnfInstance reconstruct_cnf(const ReductionInstance& inst);

// Writes s1.aas, s2.aas, meta.txt, s1.prov, s2.prov into dir (created if
// missing). load_instance rebuilds from meta.txt and refuses directories
// whose stored sequences do not match the reconstruction.
void save_instance(const ReductionInstance& inst, const std::string& dir);
ReductionInstance load_instance(const std::string& dir);

} // namespace arcseq

#endif
