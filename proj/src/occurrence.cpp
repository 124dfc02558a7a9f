#include "arcseq/occurrence.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_set>

namespace arcseq {

Embedding identity_embedding(int length) {
    Embedding e;
    e.map.resize(static_cast<size_t>(length));
    for (int i = 0; i < length; ++i) e.map[static_cast<size_t>(i)] = i + 1;
    return e;
}

bool verify_embedding(const ArcAnnotatedSequence& pattern,
                      const ArcAnnotatedSequence& text,
                      const Embedding& e) {
    const int k = pattern.size();
    const int n = text.size();
    if (e.size() != k) return false;
    int prev = 0;
    for (int p : e.map) {
        if (p <= prev || p > n) return false;
        prev = p;
    }
    for (int t = 1; t <= k; ++t) {
        if (pattern.at(t) != text.at(e.map[static_cast<size_t>(t - 1)])) return false;
    }
    // pattern arcs must map onto text arcs
    for (const auto& arc : pattern.arcs()) {
        if (!text.has_arc(e.map[static_cast<size_t>(arc.left - 1)],
                          e.map[static_cast<size_t>(arc.right - 1)])) {
            return false;
        }
    }
    // text arcs surviving the deletion must exist in the pattern
    std::vector<int> preimage(static_cast<size_t>(n) + 1, 0);
    for (int t = 1; t <= k; ++t) preimage[static_cast<size_t>(e.map[static_cast<size_t>(t - 1)])] = t;
    for (const auto& arc : text.arcs()) {
        const int tl = preimage[static_cast<size_t>(arc.left)];
        const int tr = preimage[static_cast<size_t>(arc.right)];
        if (tl != 0 && tr != 0 && !pattern.has_arc(tl, tr)) return false;
    }
    return true;
}

namespace {

struct KeyHash {
    size_t operator()(const std::vector<int>& key) const {
        size_t h = 0xcbf29ce484222325ull;
        for (int v : key) {
            h ^= static_cast<size_t>(v) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        }
        return h;
    }
};

class Matcher {
public:
    Matcher(const ArcAnnotatedSequence& pattern, const ArcAnnotatedSequence& text)
        : pattern_(pattern),
          text_(text),
          k_(pattern.size()),
          n_(text.size()),
          match_(static_cast<size_t>(k_) + 1, 0),
          text_match_(static_cast<size_t>(n_) + 1, 0) {}

    std::optional<Embedding> run() {
        if (k_ > n_) return std::nullopt;
        if (!search(1, 1)) return std::nullopt;
        Embedding e;
        e.map.assign(match_.begin() + 1, match_.end());
        return e;
    }

private:
    bool admissible(int t, int p) const {
        for (int a : pattern_.partners(t)) {
            if (a < t && !text_.has_arc(match_[static_cast<size_t>(a)], p)) return false;
        }
        for (int b : text_.partners(p)) {
            const int ta = text_match_[static_cast<size_t>(b)];
            if (ta != 0 && !pattern_.has_arc(ta, t)) return false;
        }
        return true;
    }

    // Matched pairs that still constrain the future: a pattern arc reaches
    // a position >= t or a text arc reaches a position >= p.
    std::vector<int> state_key(int t, int p) const {
        std::vector<int> key{t, p};
        for (int a = 1; a < t; ++a) {
            bool open = false;
            for (int u : pattern_.partners(a)) {
                if (u >= t) { open = true; break; }
            }
            if (!open) {
                for (int v : text_.partners(match_[static_cast<size_t>(a)])) {
                    if (v >= p) { open = true; break; }
                }
            }
            if (open) {
                key.push_back(a);
                key.push_back(match_[static_cast<size_t>(a)]);
            }
        }
        return key;
    }

    // Candidates tried in increasing order, so the first complete embedding
    // is the lexicographically smallest one.
    bool search(int t, int p_start) {
        if (t > k_) return true;
        if (k_ - t > n_ - p_start) return false;
        const auto key = state_key(t, p_start);
        if (failed_.count(key)) return false;
        const Symbol& want = pattern_.at(t);
        for (int p = p_start; p <= n_ - (k_ - t); ++p) {
            if (text_.at(p) != want) continue;
            if (!admissible(t, p)) continue;
            match_[static_cast<size_t>(t)] = p;
            text_match_[static_cast<size_t>(p)] = t;
            if (search(t + 1, p + 1)) return true;
            text_match_[static_cast<size_t>(p)] = 0;
            match_[static_cast<size_t>(t)] = 0;
        }
        failed_.insert(key);
        return false;
    }

    const ArcAnnotatedSequence& pattern_;
    const ArcAnnotatedSequence& text_;
    int k_;
    int n_;
    std::vector<int> match_;
    std::vector<int> text_match_;
    std::unordered_set<std::vector<int>, KeyHash> failed_;
};

} // namespace

std::optional<Embedding> occurs(const ArcAnnotatedSequence& pattern,
                                const ArcAnnotatedSequence& text) {
    return Matcher(pattern, text).run();
}

namespace {

bool enumerate_maps(const ArcAnnotatedSequence& pattern,
                    const ArcAnnotatedSequence& text,
                    int t, int p_start, std::vector<int>& map) {
    const int k = pattern.size();
    if (t > k) {
        Embedding e{map};
        return verify_embedding(pattern, text, e);
    }
    for (int p = p_start; p <= text.size() - (k - t); ++p) {
        map[static_cast<size_t>(t - 1)] = p;
        if (enumerate_maps(pattern, text, t + 1, p + 1, map)) return true;
    }
    return false;
}

} // namespace

std::optional<Embedding> brute_force_occurs(const ArcAnnotatedSequence& pattern,
                                            const ArcAnnotatedSequence& text) {
    if (text.size() > 18) {
        throw GuardError("brute_force_occurs refuses texts longer than 18 (got " +
                         std::to_string(text.size()) + ")");
    }
    std::vector<int> map(static_cast<size_t>(pattern.size()), 0);
    if (!enumerate_maps(pattern, text, 1, 1, map)) return std::nullopt;
    return Embedding{map};
}

Embedding parse_embedding(std::string_view line) {
    std::string s(line);
    while (!s.empty() && (s.back() == '\n' || s.back() == '\r')) s.pop_back();
    if (s.rfind("map:", 0) != 0) {
        throw ParseError("expected 'map: p1 p2 ...' line, got '" + s + "'");
    }
    std::istringstream in(s.substr(4));
    Embedding e;
    std::string field;
    while (in >> field) {
        try {
            size_t used = 0;
            const int v = std::stoi(field, &used);
            if (used != field.size()) throw std::invalid_argument(field);
            e.map.push_back(v);
        } catch (const std::exception&) {
            throw ParseError("bad map entry '" + field + "'");
        }
    }
    return e;
}

std::string serialize_embedding(const Embedding& e) {
    std::ostringstream out;
    out << "map:";
    for (int p : e.map) out << ' ' << p;
    out << '\n';
    return out.str();
}

} // namespace arcseq
