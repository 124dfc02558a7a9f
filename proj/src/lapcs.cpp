#include "arcseq/lapcs.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <set>
#include <stdexcept>

#include "arcseq/errors.hpp"

namespace arcseq {

namespace {

// Builds the candidate subsequence of s1 given the kept positions (ascending)
// and checks it against s2. Arcs of the candidate are the arcs of s1 induced
// on the kept set.
std::optional<LapcsSolution> try_kept_set(const ArcAnnotatedSequence& s1,
                                          const ArcAnnotatedSequence& s2,
                                          const std::vector<int>& kept) {
    std::set<int> kept_set(kept.begin(), kept.end());
    std::set<int> deleted;
    for (int i = 1; i <= s1.length(); ++i) {
        if (!kept_set.count(i)) deleted.insert(i);
    }
    ArcAnnotatedSequence cand = delete_positions(s1, deleted);
    auto w2 = occurs(cand, s2);
    if (!w2) return std::nullopt;
    LapcsSolution sol;
    sol.common = std::move(cand);
    sol.embed1.map = kept;
    sol.embed2 = *w2;
    sol.length = static_cast<int>(kept.size());
    return sol;
}

bool choose_kept(const ArcAnnotatedSequence& s1, const ArcAnnotatedSequence& s2,
                 int next, int still_needed, std::vector<int>& kept,
                 LapcsSolution& out) {
    if (still_needed == 0) {
        auto sol = try_kept_set(s1, s2, kept);
        if (sol) {
            out = std::move(*sol);
            return true;
        }
        return false;
    }
    for (int pos = next; pos + still_needed - 1 <= s1.length(); ++pos) {
        kept.push_back(pos);
        if (choose_kept(s1, s2, pos + 1, still_needed - 1, kept, out)) return true;
        kept.pop_back();
    }
    return false;
}

} // namespace

LapcsSolution lapcs_bruteforce(const ArcAnnotatedSequence& s1,
                               const ArcAnnotatedSequence& s2) {
    if (s1.length() > 14) {
        throw GuardError("lapcs_bruteforce: refusing len(s1) = " +
                         std::to_string(s1.length()) + " > 14");
    }
    for (int k = s1.length(); k >= 0; --k) {
        std::vector<int> kept;
        LapcsSolution out;
        if (choose_kept(s1, s2, 1, k, kept, out)) {
            out.optimal = true;
            return out;
        }
    }
    throw std::logic_error("lapcs_bruteforce: the empty subsequence did not match");
}

std::vector<std::vector<Arc>> enumerate_stem_annotations(int k) {
    if (k < 0) throw std::invalid_argument("enumerate_stem_annotations: k < 0");
    if (k > 30) {
        throw GuardError("enumerate_stem_annotations: refusing k = " +
                         std::to_string(k) + " > 30");
    }
    std::vector<std::vector<Arc>> result;
    for (unsigned mask = 0; mask < (1u << k); ++mask) {
        std::vector<int> picked;
        for (int pos = 1; pos <= k; ++pos) {
            if (mask & (1u << (pos - 1))) picked.push_back(pos);
        }
        if (picked.size() % 2 != 0) continue;
        std::vector<Arc> arcs;
        std::size_t half = picked.size() / 2;
        for (std::size_t a = 0; a < half; ++a) {
            arcs.push_back({picked[a], picked[picked.size() - 1 - a]});
        }
        result.push_back(std::move(arcs));
    }
    return result;
}

namespace {

// All non-crossing, endpoint-disjoint arc sets over positions lo..hi.
std::vector<std::vector<Arc>> nested_sets(int lo, int hi) {
    if (lo >= hi) return {{}};
    std::vector<std::vector<Arc>> result;
    // lo stays unpaired
    result = nested_sets(lo + 1, hi);
    // lo pairs with r; the inside and the tail are independent
    for (int r = lo + 1; r <= hi; ++r) {
        auto inner = nested_sets(lo + 1, r - 1);
        auto tail = nested_sets(r + 1, hi);
        for (const auto& in : inner) {
            for (const auto& tl : tail) {
                std::vector<Arc> arcs;
                arcs.push_back({lo, r});
                arcs.insert(arcs.end(), in.begin(), in.end());
                arcs.insert(arcs.end(), tl.begin(), tl.end());
                result.push_back(std::move(arcs));
            }
        }
    }
    return result;
}

} // namespace

std::vector<std::vector<Arc>> enumerate_nested_annotations(int k) {
    if (k < 0) throw std::invalid_argument("enumerate_nested_annotations: k < 0");
    if (k > 14) {
        throw GuardError("enumerate_nested_annotations: refusing k = " +
                         std::to_string(k) + " > 14");
    }
    return nested_sets(1, k);
}

namespace {

// next_at[i][c] = smallest position >= i carrying symbol id c, or 0 if none.
// Rows run from 1 to len+1 so the frontier can sit one past the end.
std::vector<std::vector<int>> subsequence_automaton(const ArcAnnotatedSequence& s,
                                                    const std::map<Symbol, int>& ids) {
    int n = s.length();
    int m = static_cast<int>(ids.size());
    std::vector<std::vector<int>> next_at(n + 2, std::vector<int>(m, 0));
    for (int i = n; i >= 1; --i) {
        next_at[i] = next_at[i + 1];
        auto it = ids.find(s.at(i));
        if (it != ids.end()) next_at[i][it->second] = i;
    }
    return next_at;
}

struct CandidateSearch {
    const ArcAnnotatedSequence& s1;
    const ArcAnnotatedSequence& s2;
    int k;
    const std::vector<std::vector<Arc>>& annotations;
    std::vector<Symbol> symbols;
    std::vector<std::vector<int>> next1, next2;
    std::vector<Symbol> tokens;

    std::optional<LapcsSolution> found;

    // pos1/pos2: first positions of s1/s2 still usable by the candidate's
    // remaining symbols (greedy frontier; exact for plain subsequences).
    bool grow(int pos1, int pos2) {
        if (static_cast<int>(tokens.size()) == k) return check_annotations();
        int remaining = k - static_cast<int>(tokens.size());
        for (std::size_t c = 0; c < symbols.size(); ++c) {
            int p1 = next1[pos1][c];
            int p2 = next2[pos2][c];
            if (p1 == 0 || p2 == 0) continue;
            if (s1.length() - p1 + 1 < remaining) continue;
            if (s2.length() - p2 + 1 < remaining) continue;
            tokens.push_back(symbols[c]);
            if (grow(p1 + 1, p2 + 1)) return true;
            tokens.pop_back();
        }
        return false;
    }

    bool check_annotations() {
        for (const auto& arcs : annotations) {
            ArcAnnotatedSequence cand(tokens, arcs);
            auto w1 = occurs(cand, s1);
            if (!w1) continue;
            auto w2 = occurs(cand, s2);
            if (!w2) continue;
            LapcsSolution sol;
            sol.common = std::move(cand);
            sol.embed1 = *w1;
            sol.embed2 = *w2;
            sol.length = k;
            found = std::move(sol);
            return true;
        }
        return false;
    }
};

} // namespace

std::optional<LapcsSolution> lapcs_parameterized(const ArcAnnotatedSequence& s1,
                                                 const ArcAnnotatedSequence& s2,
                                                 int k, Level level) {
    if (k < 0) throw std::invalid_argument("lapcs_parameterized: k < 0");
    if (level != Level::Stem && level != Level::Nested) {
        throw std::invalid_argument(
            "lapcs_parameterized: annotation level must be STEM or NESTED");
    }
    if (k == 0) {
        LapcsSolution sol;
        return sol;
    }
    if (k > s1.length() || k > s2.length()) return std::nullopt;

    std::set<Symbol> set1(s1.tokens().begin(), s1.tokens().end());
    std::map<Symbol, int> ids;
    std::vector<Symbol> symbols;
    for (const auto& tok : s2.tokens()) {
        if (set1.count(tok) && !ids.count(tok)) {
            ids[tok] = 0;
            symbols.push_back(tok);
        }
    }
    std::sort(symbols.begin(), symbols.end());
    for (std::size_t c = 0; c < symbols.size(); ++c) ids[symbols[c]] = static_cast<int>(c);
    if (symbols.empty()) return std::nullopt;

    auto annotations = level == Level::Stem ? enumerate_stem_annotations(k)
                                            : enumerate_nested_annotations(k);

    CandidateSearch search{s1, s2, k, annotations, std::move(symbols), {}, {}, {}, {}};
    search.next1 = subsequence_automaton(s1, ids);
    search.next2 = subsequence_automaton(s2, ids);
    search.grow(1, 1);
    return search.found;
}

LapcsSolution lapcs_parameterized_best(const ArcAnnotatedSequence& s1,
                                       const ArcAnnotatedSequence& s2,
                                       Level level) {
    LapcsSolution best;
    int cap = lcs_upper_bound(s1, s2);
    for (int k = 1; k <= cap; ++k) {
        auto sol = lapcs_parameterized(s1, s2, k, level);
        if (!sol) break;
        best = std::move(*sol);
    }
    best.optimal = true;
    return best;
}

namespace {

// suffix[i][j] = LCS length of s1[i..] and s2[j..] (1-based, rows up to len+1).
std::vector<std::vector<int>> suffix_lcs_table(const ArcAnnotatedSequence& s1,
                                               const ArcAnnotatedSequence& s2) {
    int n = s1.length();
    int m = s2.length();
    std::vector<std::vector<int>> suffix(n + 2, std::vector<int>(m + 2, 0));
    for (int i = n; i >= 1; --i) {
        for (int j = m; j >= 1; --j) {
            if (s1.at(i) == s2.at(j)) {
                suffix[i][j] = suffix[i + 1][j + 1] + 1;
            } else {
                suffix[i][j] = std::max(suffix[i + 1][j], suffix[i][j + 1]);
            }
        }
    }
    return suffix;
}

struct BnbSearch {
    const ArcAnnotatedSequence& s1;
    const ArcAnnotatedSequence& s2;
    std::vector<std::vector<int>> suffix;
    long long node_limit;
    std::chrono::steady_clock::time_point deadline;
    long long stop_at; // 0 = disabled; otherwise stop once best reaches it

    std::vector<std::pair<int, int>> stack;
    std::vector<int> match1, match2; // position -> matched partner or 0
    std::vector<std::pair<int, int>> best;
    long long nodes = 0;
    bool aborted = false;
    bool target_hit = false;

    BnbSearch(const ArcAnnotatedSequence& a, const ArcAnnotatedSequence& b,
              const SearchBudget& budget, long long stop)
        : s1(a), s2(b), suffix(suffix_lcs_table(a, b)),
          node_limit(budget.node_limit),
          deadline(std::chrono::steady_clock::now() +
                   std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                       std::chrono::duration<double>(budget.time_limit_seconds))),
          stop_at(stop), match1(a.length() + 1, 0), match2(b.length() + 1, 0) {}

    bool out_of_budget() {
        ++nodes;
        if (nodes > node_limit) return true;
        if ((nodes & 1023) == 0 && std::chrono::steady_clock::now() > deadline) {
            return true;
        }
        return false;
    }

    // Matching (i, j) must relate to every earlier matched pair the same way
    // in both sequences: an arc on the s1 side iff an arc on the s2 side.
    bool admissible(int i, int j) const {
        for (int a : s1.partners(i)) {
            if (a < i && match1[a] != 0 && !s2.has_arc(match1[a], j)) return false;
        }
        for (int b : s2.partners(j)) {
            if (b < j && match2[b] != 0 && !s1.has_arc(match2[b], i)) return false;
        }
        return true;
    }

    // Enumerates the next matched pair (i', j') with i' >= i, j' >= j.
    void dfs(int i, int j) {
        if (aborted || target_hit) return;
        if (out_of_budget()) {
            aborted = true;
            return;
        }
        if (stack.size() > best.size()) {
            best = stack;
            if (stop_at > 0 && static_cast<long long>(best.size()) >= stop_at) {
                target_hit = true;
                return;
            }
        }
        std::size_t have = stack.size();
        for (int ip = i; ip <= s1.length(); ++ip) {
            if (have + suffix[ip][j] <= best.size()) break;
            for (int jp = j; jp <= s2.length(); ++jp) {
                if (have + suffix[ip][jp] <= best.size()) break;
                if (s1.at(ip) != s2.at(jp)) continue;
                if (!admissible(ip, jp)) continue;
                stack.push_back({ip, jp});
                match1[ip] = jp;
                match2[jp] = ip;
                dfs(ip + 1, jp + 1);
                match1[ip] = 0;
                match2[jp] = 0;
                stack.pop_back();
                if (aborted || target_hit) return;
            }
        }
    }

    LapcsSolution result() const {
        std::set<int> deleted;
        std::set<int> kept1;
        for (const auto& [i, j] : best) kept1.insert(i);
        for (int i = 1; i <= s1.length(); ++i) {
            if (!kept1.count(i)) deleted.insert(i);
        }
        LapcsSolution sol;
        sol.common = delete_positions(s1, deleted);
        for (const auto& [i, j] : best) {
            sol.embed1.map.push_back(i);
            sol.embed2.map.push_back(j);
        }
        sol.length = static_cast<int>(best.size());
        sol.optimal = !aborted && !target_hit;
        return sol;
    }
};

void validate_budget(const SearchBudget& budget) {
    if (budget.node_limit <= 0) {
        throw std::invalid_argument("SearchBudget: node_limit must be positive");
    }
    if (budget.time_limit_seconds <= 0) {
        throw std::invalid_argument("SearchBudget: time_limit_seconds must be positive");
    }
}

} // namespace

int lcs_upper_bound(const ArcAnnotatedSequence& s1, const ArcAnnotatedSequence& s2) {
    if (s1.length() == 0 || s2.length() == 0) return 0;
    return suffix_lcs_table(s1, s2)[1][1];
}

LapcsSolution lapcs_branch_and_bound(const ArcAnnotatedSequence& s1,
                                     const ArcAnnotatedSequence& s2,
                                     const SearchBudget& budget) {
    validate_budget(budget);
    BnbSearch search(s1, s2, budget, 0);
    search.dfs(1, 1);
    return search.result();
}

DecideResult decide_lapcs(const ArcAnnotatedSequence& s1,
                          const ArcAnnotatedSequence& s2,
                          long long kprime, const SearchBudget& budget) {
    validate_budget(budget);
    DecideResult res;
    if (kprime <= 0) {
        res.decision = Decision::Yes;
        res.witness = LapcsSolution{};
        return res;
    }
    if (kprime > std::min(s1.length(), s2.length())) {
        res.decision = Decision::No;
        return res;
    }
    BnbSearch search(s1, s2, budget, kprime);
    search.dfs(1, 1);
    LapcsSolution sol = search.result();
    if (sol.length >= kprime) {
        res.decision = Decision::Yes;
        res.witness = std::move(sol);
    } else if (search.aborted) {
        res.decision = Decision::Unknown;
    } else {
        res.decision = Decision::No;
    }
    return res;
}

} // namespace arcseq
