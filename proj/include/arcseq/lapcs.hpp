#ifndef ARCSEQ_LAPCS_HPP
#define ARCSEQ_LAPCS_HPP

#include <optional>
#include <vector>

#include "arcseq/arc_core.hpp"
#include "arcseq/occurrence.hpp"

namespace arcseq {

// A common arc-preserving subsequence of two sequences, with its witnesses.
// optimal is true only when the producing solver proved that no longer common
// subsequence exists.
struct LapcsSolution {
    ArcAnnotatedSequence common;
    Embedding embed1;
    Embedding embed2;
    int length = 0;
    bool optimal = false;
};

struct SearchBudget {
    long long node_limit = 50'000'000;
    double time_limit_seconds = 60.0;
};

// Enumerates every position subset of s1, largest first (ties: smallest kept
// position set in lexicographic order), and keeps the first subset whose
// induced subsequence occurs in s2. Refuses len(s1) > 14 (GuardError).
LapcsSolution lapcs_bruteforce(const ArcAnnotatedSequence& s1,
                               const ArcAnnotatedSequence& s2);

// All arc sets over positions 1..k whose level is at most STEM: pick an even
// subset of positions and pair it outside-in. Exactly 2^(k-1) sets for k >= 1.
std::vector<std::vector<Arc>> enumerate_stem_annotations(int k);

// All non-crossing arc sets over 1..k with no shared endpoints (level at most
// NESTED).
std::vector<std::vector<Arc>> enumerate_nested_annotations(int k);

// The enumeration scheme for the decision "is there a common arc-preserving
// subsequence of length exactly k": generate candidate sequences of length k
// over the symbols shared by s1 and s2, annotate them with every arc set of
// the requested level (STEM or NESTED), and keep the first candidate that
// occurs in both. Returns nullopt when no length-k candidate occurs in both.
std::optional<LapcsSolution> lapcs_parameterized(const ArcAnnotatedSequence& s1,
                                                 const ArcAnnotatedSequence& s2,
                                                 int k, Level level);

// Runs lapcs_parameterized for k = 0, 1, ... and returns the largest k that
// admits a solution (the decision is monotone in k). The result is optimal.
LapcsSolution lapcs_parameterized_best(const ArcAnnotatedSequence& s1,
                                       const ArcAnnotatedSequence& s2,
                                       Level level);

// Classical LCS length of the token strings, arcs ignored. An admissible
// upper bound for the LAPCS length.
int lcs_upper_bound(const ArcAnnotatedSequence& s1, const ArcAnnotatedSequence& s2);

// Depth-first search over matchings (choices: match a pair of equal symbols,
// or skip positions), keeping arc consistency incrementally and pruning with
// matched + lcs_upper_bound(remaining suffixes) <= best. Budget exhaustion is
// reported via optimal=false, never an error.
LapcsSolution lapcs_branch_and_bound(const ArcAnnotatedSequence& s1,
                                     const ArcAnnotatedSequence& s2,
                                     const SearchBudget& budget = {});

enum class Decision { Yes, No, Unknown };

struct DecideResult {
    Decision decision = Decision::Unknown;
    std::optional<LapcsSolution> witness; // present on Yes
};

// YES with witness if some solution of length >= kprime is found, NO if the
// exact search completed with a smaller best, UNKNOWN on budget exhaustion.
DecideResult decide_lapcs(const ArcAnnotatedSequence& s1,
                          const ArcAnnotatedSequence& s2,
                          long long kprime, const SearchBudget& budget = {});

} // namespace arcseq

#endif
