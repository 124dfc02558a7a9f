#ifndef ARCSEQ_ARC_CORE_HPP
#define ARCSEQ_ARC_CORE_HPP

#include <compare>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "arcseq/errors.hpp"

namespace arcseq {

// A base of an arc-annotated sequence. Tokens are arbitrary whitespace-free
// strings, compared case-sensitively.
using Symbol = std::string;

// An unordered bond between two sequence positions, stored with left < right.
// All positions in this library are 1-based.
struct Arc {
    int left = 0;
    int right = 0;

    auto operator<=>(const Arc&) const = default;
};

// true iff the endpoints interleave: a.left < b.left < a.right < b.right or
// b.left < a.left < b.right < a.right.
bool crossing(const Arc& a, const Arc& b);

// true iff a lies strictly inside b's span.
bool embedded(const Arc& a, const Arc& b);

// Arc-structure classes, ordered by inclusion:
// PLAIN < STEM < NESTED < CROSSING < UNLIMITED.
enum class Level {
    Plain = 0,
    Stem = 1,
    Nested = 2,
    Crossing = 3,
    Unlimited = 4,
};

std::string_view to_string(Level level);
std::optional<Level> level_from_string(std::string_view name);

// A token sequence plus a set of arcs over its positions. Immutable after
// construction; arcs are kept sorted by (left, right) and duplicate-free.
class ArcAnnotatedSequence {
public:
    ArcAnnotatedSequence() = default;

    // Validates tokens (non-empty, no whitespace), endpoint ranges,
    // left < right, and arc uniqueness. Throws std::invalid_argument.
    ArcAnnotatedSequence(std::vector<Symbol> tokens, std::vector<Arc> arcs = {});

    int size() const { return static_cast<int>(tokens_.size()); }
    int length() const { return size(); }
    bool empty() const { return tokens_.empty(); }

    // 1-based access.
    const Symbol& at(int pos) const { return tokens_[static_cast<size_t>(pos - 1)]; }

    const std::vector<Symbol>& tokens() const { return tokens_; }
    const std::vector<Arc>& arcs() const { return arcs_; }

    // Endpoints may be given in either order.
    bool has_arc(int i, int j) const;

    // Arcs incident to a position, as the partner endpoints.
    const std::vector<int>& partners(int pos) const { return partners_[static_cast<size_t>(pos - 1)]; }

    bool operator==(const ArcAnnotatedSequence& other) const {
        return tokens_ == other.tokens_ && arcs_ == other.arcs_;
    }

private:
    std::vector<Symbol> tokens_;
    std::vector<Arc> arcs_;
    std::vector<std::vector<int>> partners_;
};

// Smallest level of the hierarchy that s satisfies.
Level classify_level(const ArcAnnotatedSequence& s);

// Removes the given 1-based positions. Kept bases stay in order and are
// reindexed; an arc survives iff both endpoints are kept. Out-of-range
// positions throw std::invalid_argument.
ArcAnnotatedSequence delete_positions(const ArcAnnotatedSequence& s,
                                      const std::set<int>& positions);

// AAS text format (UTF-8, line oriented):
//   # comment
//   seq: t1 t2 ... tm
//   arc: i j
// Exactly one seq line; arcs with 1 <= i < j <= m. Parse errors carry the
// offending line number. Serialization is canonical: the seq line followed
// by arcs sorted by (left, right).
ArcAnnotatedSequence parse_sequence(std::string_view text);
std::string serialize(const ArcAnnotatedSequence& s);

ArcAnnotatedSequence load_sequence_file(const std::string& path);
void save_sequence_file(const ArcAnnotatedSequence& s, const std::string& path);

} // namespace arcseq

#endif
