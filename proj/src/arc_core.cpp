#include "arcseq/arc_core.hpp"

#include <algorithm>
#include <cctype>
#include <climits>
#include <fstream>
#include <sstream>

namespace arcseq {

bool crossing(const Arc& a, const Arc& b) {
    return (a.left < b.left && b.left < a.right && a.right < b.right) ||
           (b.left < a.left && a.left < b.right && b.right < a.right);
}

bool embedded(const Arc& a, const Arc& b) {
    return b.left < a.left && a.right < b.right;
}

std::string_view to_string(Level level) {
    switch (level) {
        case Level::Plain: return "PLAIN";
        case Level::Stem: return "STEM";
        case Level::Nested: return "NESTED";
        case Level::Crossing: return "CROSSING";
        case Level::Unlimited: return "UNLIMITED";
    }
    return "?";
}

std::optional<Level> level_from_string(std::string_view name) {
    if (name == "PLAIN") return Level::Plain;
    if (name == "STEM") return Level::Stem;
    if (name == "NESTED") return Level::Nested;
    if (name == "CROSSING") return Level::Crossing;
    if (name == "UNLIMITED") return Level::Unlimited;
    return std::nullopt;
}

namespace {

bool valid_token(const Symbol& token) {
    if (token.empty()) return false;
    for (unsigned char c : token) {
        if (std::isspace(c)) return false;
    }
    return true;
}

} // namespace

ArcAnnotatedSequence::ArcAnnotatedSequence(std::vector<Symbol> tokens, std::vector<Arc> arcs)
    : tokens_(std::move(tokens)), arcs_(std::move(arcs)) {
    for (const auto& token : tokens_) {
        if (!valid_token(token)) {
            throw std::invalid_argument("invalid token: '" + token + "'");
        }
    }
    const int m = size();
    for (const auto& arc : arcs_) {
        if (arc.left < 1 || arc.right > m || arc.left >= arc.right) {
            throw std::invalid_argument("arc (" + std::to_string(arc.left) + "," +
                                        std::to_string(arc.right) + ") out of range for length " +
                                        std::to_string(m));
        }
    }
    std::sort(arcs_.begin(), arcs_.end());
    if (std::adjacent_find(arcs_.begin(), arcs_.end()) != arcs_.end()) {
        throw std::invalid_argument("duplicate arc");
    }
    partners_.assign(tokens_.size(), {});
    for (const auto& arc : arcs_) {
        partners_[static_cast<size_t>(arc.left - 1)].push_back(arc.right);
        partners_[static_cast<size_t>(arc.right - 1)].push_back(arc.left);
    }
}

bool ArcAnnotatedSequence::has_arc(int i, int j) const {
    const Arc probe{std::min(i, j), std::max(i, j)};
    return std::binary_search(arcs_.begin(), arcs_.end(), probe);
}

Level classify_level(const ArcAnnotatedSequence& s) {
    const auto& arcs = s.arcs();
    if (arcs.empty()) return Level::Plain;
    for (int pos = 1; pos <= s.size(); ++pos) {
        if (s.partners(pos).size() > 1) return Level::Unlimited;
    }
    bool disjoint_pair = false;
    for (size_t i = 0; i < arcs.size(); ++i) {
        for (size_t j = i + 1; j < arcs.size(); ++j) {
            if (crossing(arcs[i], arcs[j])) return Level::Crossing;
            if (!embedded(arcs[i], arcs[j]) && !embedded(arcs[j], arcs[i])) {
                disjoint_pair = true;
            }
        }
    }
    return disjoint_pair ? Level::Nested : Level::Stem;
}

ArcAnnotatedSequence delete_positions(const ArcAnnotatedSequence& s,
                                      const std::set<int>& positions) {
    for (int pos : positions) {
        if (pos < 1 || pos > s.size()) {
            throw std::invalid_argument("delete position " + std::to_string(pos) +
                                        " out of range for length " + std::to_string(s.size()));
        }
    }
    std::vector<int> new_index(static_cast<size_t>(s.size()) + 1, 0);
    std::vector<Symbol> kept;
    kept.reserve(s.tokens().size() - positions.size());
    int next = 0;
    for (int pos = 1; pos <= s.size(); ++pos) {
        if (positions.count(pos)) continue;
        new_index[static_cast<size_t>(pos)] = ++next;
        kept.push_back(s.at(pos));
    }
    std::vector<Arc> arcs;
    for (const auto& arc : s.arcs()) {
        const int l = new_index[static_cast<size_t>(arc.left)];
        const int r = new_index[static_cast<size_t>(arc.right)];
        if (l != 0 && r != 0) arcs.push_back({l, r});
    }
    return ArcAnnotatedSequence(std::move(kept), std::move(arcs));
}

namespace {

std::vector<std::string> split_ws(std::string_view text) {
    std::vector<std::string> out;
    std::istringstream in{std::string(text)};
    std::string token;
    while (in >> token) out.push_back(token);
    return out;
}

bool parse_int(const std::string& text, int& out) {
    try {
        size_t used = 0;
        const long value = std::stol(text, &used);
        if (used != text.size()) return false;
        if (value < INT_MIN || value > INT_MAX) return false;
        out = static_cast<int>(value);
        return true;
    } catch (const std::exception&) {
        return false;
    }
}

} // namespace

ArcAnnotatedSequence parse_sequence(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    bool have_seq = false;
    std::vector<Symbol> tokens;
    std::vector<std::pair<Arc, int>> arcs; // arc + line number, for range checks
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') continue;
        if (line.rfind("seq:", 0) == 0) {
            if (have_seq) {
                throw ParseError("line " + std::to_string(line_no) + ": duplicate seq line");
            }
            have_seq = true;
            tokens = split_ws(line.substr(4));
        } else if (line.rfind("arc:", 0) == 0) {
            const auto fields = split_ws(line.substr(4));
            int i = 0, j = 0;
            if (fields.size() != 2 || !parse_int(fields[0], i) || !parse_int(fields[1], j)) {
                throw ParseError("line " + std::to_string(line_no) +
                                 ": expected 'arc: i j' with integer endpoints");
            }
            if (i >= j || i < 1) {
                throw ParseError("line " + std::to_string(line_no) + ": arc endpoints must satisfy 1 <= i < j");
            }
            arcs.push_back({{i, j}, line_no});
        } else {
            throw ParseError("line " + std::to_string(line_no) + ": unrecognized line '" + line + "'");
        }
    }
    if (!have_seq) {
        throw ParseError("missing seq line");
    }
    const int m = static_cast<int>(tokens.size());
    std::vector<Arc> plain;
    plain.reserve(arcs.size());
    for (const auto& [arc, no] : arcs) {
        if (arc.right > m) {
            throw ParseError("line " + std::to_string(no) + ": arc endpoint " +
                             std::to_string(arc.right) + " exceeds sequence length " + std::to_string(m));
        }
        plain.push_back(arc);
    }
    std::sort(plain.begin(), plain.end());
    if (auto it = std::adjacent_find(plain.begin(), plain.end()); it != plain.end()) {
        throw ParseError("duplicate arc (" + std::to_string(it->left) + "," +
                         std::to_string(it->right) + ")");
    }
    try {
        return ArcAnnotatedSequence(std::move(tokens), std::move(plain));
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("invalid sequence: ") + e.what());
    }
}

std::string serialize(const ArcAnnotatedSequence& s) {
    std::ostringstream out;
    out << "seq:";
    for (const auto& token : s.tokens()) out << ' ' << token;
    out << '\n';
    for (const auto& arc : s.arcs()) {
        out << "arc: " << arc.left << ' ' << arc.right << '\n';
    }
    return out.str();
}

ArcAnnotatedSequence load_sequence_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_sequence(buf.str());
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

void save_sequence_file(const ArcAnnotatedSequence& s, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << serialize(s);
}

} // namespace arcseq
