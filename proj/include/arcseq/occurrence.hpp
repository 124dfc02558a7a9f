#ifndef ARCSEQ_OCCURRENCE_HPP
#define ARCSEQ_OCCURRENCE_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "arcseq/arc_core.hpp"

namespace arcseq {

// Witness that a pattern occurs in a text: the kept text position for each
// pattern position, strictly increasing, 1-based.
struct Embedding {
    std::vector<int> map;

    int size() const { return static_cast<int>(map.size()); }
    bool operator==(const Embedding&) const = default;
};

// Identity witness for a sequence of the given length.
Embedding identity_embedding(int length);

// Total check of the deletion-based occurrence semantics. True iff e is
// structurally valid (strictly increasing, right length, in range), tokens
// match, every pattern arc maps to a text arc, and every text arc whose both
// endpoints are kept corresponds to a pattern arc (deleting bases is the only
// way arcs disappear, so surviving text arcs must be present in the pattern).
bool verify_embedding(const ArcAnnotatedSequence& pattern,
                      const ArcAnnotatedSequence& text,
                      const Embedding& e);

// Backtracking matcher with failure memoization on (pattern position, text
// position, open arc obligations). Returns the lexicographically smallest
// embedding when one exists. Total on all levels.
std::optional<Embedding> occurs(const ArcAnnotatedSequence& pattern,
                                const ArcAnnotatedSequence& text);

// Exhaustive search over all strictly increasing position maps; the oracle
// occurs() is tested against. Refuses texts longer than 18 (GuardError).
std::optional<Embedding> brute_force_occurs(const ArcAnnotatedSequence& pattern,
                                            const ArcAnnotatedSequence& text);

// Embedding text format: one line "map: p1 p2 ... pk".
Embedding parse_embedding(std::string_view line);
std::string serialize_embedding(const Embedding& e);

} // namespace arcseq

#endif
