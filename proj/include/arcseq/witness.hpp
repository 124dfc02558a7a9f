#ifndef ARCSEQ_WITNESS_HPP
#define ARCSEQ_WITNESS_HPP

#include <optional>
#include <string>
#include <vector>

#include "arcseq/occurrence.hpp"
#include "arcseq/reduction.hpp"
#include "arcseq/report.hpp"

namespace arcseq {

struct Assignment {
    std::vector<bool> values; // values[k-1] is variable k

    bool value(int var) const { return values[var - 1]; }
    int size() const { return static_cast<int>(values.size()); }

    bool operator==(const Assignment&) const = default;
};

// "1,-2,3,-4": every variable 1..num_vars exactly once, sign = truth value.
Assignment parse_assignment(const std::string& text, int num_vars);
std::string serialize_assignment(const Assignment& a);

bool satisfies(const CnfInstance& cnf, const Assignment& a);

// Tries all 2^n assignments in lexicographic order (false < true, variable 1
// most significant) and returns the first satisfying one. Refuses n > 24.
std::optional<Assignment> sat_bruteforce(const CnfInstance& cnf);

// A common-subsequence certificate: the deleted positions per sequence, the
// resulting common subsequence, and its two embeddings.
struct WitnessCertificate {
    std::vector<int> deleted1, deleted2; // sorted ascending
    ArcAnnotatedSequence common;
    Embedding embed1, embed2;
    long long length = 0;
};

// The constructive direction: applies the per-variable and per-clause
// deletion lists for a satisfying assignment. The resulting certificate has
// length exactly inst.kprime.
WitnessCertificate build_witness(const ReductionInstance& inst, const Assignment& a);

// The extraction direction: reads the satisfied literal of each clause off
// the conserved selector symbol in C1.<i>, fills unforced variables from the
// conserved SM1 letters. Requires cert.length >= inst.kprime.
Assignment extract_assignment(const ReductionInstance& inst,
                              const WitnessCertificate& cert);

// Re-checks everything a certificate promises: embeddings, deletion/embedding
// consistency, length, conserved padding, no fully-conserved arc, uniform
// literal choice across clause components, and the conserved-symbol
// composition (literal counts, spacer runs, selectors, R symbols).
CheckReport verify_witness(const ReductionInstance& inst,
                           const WitnessCertificate& cert);

void save_certificate(const WitnessCertificate& cert, const std::string& path);
WitnessCertificate load_certificate(const std::string& path);

} // namespace arcseq

#endif
