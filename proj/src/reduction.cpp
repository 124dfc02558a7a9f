#include "arcseq/reduction.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "arcseq/errors.hpp"

namespace arcseq {

namespace {

std::string xsym(int k) { return "x" + std::to_string(k); }
std::string nxsym(int k) { return "nx" + std::to_string(k); }
std::string ssym(int j) { return "s" + std::to_string(j); }
std::string ysym(int i) { return "y" + std::to_string(i); }
std::string wsym(int i) { return "w" + std::to_string(i); }
std::string vsym(int i) { return "v" + std::to_string(i); }
std::string rsym(int i, int j) {
    return "R" + std::to_string(i) + "." + std::to_string(j);
}

std::string clause_label(const char* kind, int i) {
    return std::string(kind) + "." + std::to_string(i);
}

} // namespace

CnfInstance parse_cnf(std::istream& in) {
    std::vector<std::string> errors;
    std::string line;
    int line_no = 0;
    int declared_n = -1, declared_q = -1;
    std::vector<long long> numbers;

    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first)) continue;
        if (first == "c") continue;
        if (first.size() > 1 && first[0] == 'c') continue;
        if (first == "p") {
            if (declared_n != -1) {
                errors.push_back("line " + std::to_string(line_no) + ": duplicate header");
                continue;
            }
            std::string fmt;
            if (!(ls >> fmt >> declared_n >> declared_q) || fmt != "cnf") {
                errors.push_back("line " + std::to_string(line_no) +
                                 ": malformed header, expected 'p cnf <n> <q>'");
                declared_n = declared_q = -1;
            }
            continue;
        }
        // clause data: signed integers, clauses terminated by 0
        std::istringstream ns(line);
        long long value;
        while (ns >> value) numbers.push_back(value);
        if (!ns.eof()) {
            errors.push_back("line " + std::to_string(line_no) + ": non-integer clause data");
        }
    }

    if (declared_n == -1) {
        errors.push_back("missing 'p cnf <n> <q>' header");
        throw ParseError(errors);
    }
    if (declared_n < 3) {
        errors.push_back("header: n = " + std::to_string(declared_n) +
                         " but at least 3 variables are required");
    }
    if (declared_q < 1) {
        errors.push_back("header: q = " + std::to_string(declared_q) +
                         " but at least 1 clause is required");
    }

    std::vector<std::vector<long long>> raw_clauses;
    std::vector<long long> current;
    for (long long v : numbers) {
        if (v == 0) {
            raw_clauses.push_back(current);
            current.clear();
        } else {
            current.push_back(v);
        }
    }
    if (!current.empty()) {
        errors.push_back("last clause is not terminated by 0");
        raw_clauses.push_back(current);
    }

    CnfInstance cnf;
    cnf.num_vars = declared_n;
    for (std::size_t ci = 0; ci < raw_clauses.size(); ++ci) {
        const auto& raw = raw_clauses[ci];
        std::string where = "clause " + std::to_string(ci + 1);
        if (raw.size() != 3) {
            errors.push_back(where + ": has " + std::to_string(raw.size()) +
                             " literals, expected 3");
            continue;
        }
        std::array<Literal, 3> lits;
        std::set<long long> vars_seen;
        bool ok = true;
        for (int j = 0; j < 3; ++j) {
            long long v = raw[j];
            long long var = v < 0 ? -v : v;
            if (var < 1 || var > declared_n) {
                errors.push_back(where + ": variable " + std::to_string(var) +
                                 " out of range 1.." + std::to_string(declared_n));
                ok = false;
                continue;
            }
            if (!vars_seen.insert(var).second) {
                errors.push_back(where + ": repeated variable " + std::to_string(var));
                ok = false;
                continue;
            }
            lits[j] = {static_cast<int>(var), v < 0};
        }
        if (ok) cnf.clauses.push_back(lits);
    }

    if (errors.empty() &&
        static_cast<int>(cnf.clauses.size()) != declared_q) {
        errors.push_back("header declares " + std::to_string(declared_q) +
                         " clauses but " + std::to_string(cnf.clauses.size()) +
                         " were given");
    }
    if (!errors.empty()) throw ParseError(errors);
    return cnf;
}

CnfInstance parse_cnf_string(const std::string& text) {
    std::istringstream in(text);
    return parse_cnf(in);
}

std::string serialize_cnf(const CnfInstance& cnf) {
    std::ostringstream out;
    out << "p cnf " << cnf.num_vars << " " << cnf.q() << "\n";
    for (const auto& clause : cnf.clauses) {
        for (const auto& lit : clause) {
            out << (lit.negated ? -lit.var : lit.var) << " ";
        }
        out << "0\n";
    }
    return out.str();
}

int chi(int r, const Symbol& c, const ArcAnnotatedSequence& s) {
    if (r < 1) throw std::out_of_range("chi: occurrence index must be >= 1");
    int seen = 0;
    for (int pos = 1; pos <= s.length(); ++pos) {
        if (s.at(pos) == c && ++seen == r) return pos;
    }
    throw std::out_of_range("chi: fewer than " + std::to_string(r) +
                            " occurrences of '" + c + "'");
}

int chi(int r, const Symbol& c, const ArcAnnotatedSequence& s,
        const std::vector<std::string>& provenance, const std::string& label) {
    if (r < 1) throw std::out_of_range("chi: occurrence index must be >= 1");
    int seen = 0;
    for (int pos = 1; pos <= s.length(); ++pos) {
        if (provenance[pos] == label && s.at(pos) == c && ++seen == r) return pos;
    }
    throw std::out_of_range("chi: fewer than " + std::to_string(r) +
                            " occurrences of '" + c + "' in " + label);
}

namespace {

void require_shape(int n, int q) {
    if (n < 3) throw std::invalid_argument("need n >= 3, got " + std::to_string(n));
    if (q < 1) throw std::invalid_argument("need q >= 1, got " + std::to_string(q));
}

} // namespace

long long k_prime(int n, int q, long long padding) {
    require_shape(n, q);
    if (padding < 1) throw std::invalid_argument("padding must be >= 1");
    return 2LL * q * padding + 6LL * q * n + 8LL * q + n;
}

long long default_padding(int n, int q) {
    require_shape(n, q);
    long long m = std::max(n, q);
    return 20 * m * m;
}

long long padding_threshold(int n, int q) {
    require_shape(n, q);
    return 6LL * q * n + 10LL * q + n + 1;
}

namespace {

struct SeqBuilder {
    std::vector<Symbol> tokens;
    std::vector<std::string> labels; // parallel to tokens
    std::string current;

    void begin(std::string label) { current = std::move(label); }

    void put(const Symbol& t) {
        tokens.push_back(t);
        labels.push_back(current);
    }

    void put_run(const Symbol& t, long long count) {
        for (long long c = 0; c < count; ++c) put(t);
    }

    // 1-based position of the r-th occurrence of `sym` among positions
    // labeled `label`.
    int find(int r, const Symbol& sym, const std::string& label) const {
        int seen = 0;
        for (std::size_t idx = 0; idx < tokens.size(); ++idx) {
            if (labels[idx] == label && tokens[idx] == sym && ++seen == r) {
                return static_cast<int>(idx) + 1;
            }
        }
        throw std::logic_error("construction bug: missing occurrence " +
                               std::to_string(r) + " of '" + sym + "' in " + label);
    }

    std::vector<std::string> provenance() const {
        std::vector<std::string> prov(tokens.size() + 1);
        for (std::size_t idx = 0; idx < tokens.size(); ++idx) prov[idx + 1] = labels[idx];
        return prov;
    }
};

// clause -> variable -> literal index 1..3 (0 when the variable does not
// appear), and the literal's polarity.
struct LiteralIndex {
    std::vector<std::vector<int>> at;      // [i][k], 1-based
    std::vector<std::vector<bool>> negated;

    LiteralIndex(const CnfInstance& cnf) {
        int n = cnf.n(), q = cnf.q();
        at.assign(q + 1, std::vector<int>(n + 1, 0));
        negated.assign(q + 1, std::vector<bool>(n + 1, false));
        for (int i = 1; i <= q; ++i) {
            for (int j = 1; j <= 3; ++j) {
                const Literal& lit = cnf.clauses[i - 1][j - 1];
                at[i][lit.var] = j;
                negated[i][lit.var] = lit.negated;
            }
        }
    }
};

} // namespace

ReductionInstance build_instance(const CnfInstance& cnf,
                                 std::optional<long long> padding_override) {
    int n = cnf.n(), q = cnf.q();
    require_shape(n, q);
    for (int i = 1; i <= q; ++i) {
        std::set<int> vars;
        for (const Literal& lit : cnf.clauses[i - 1]) {
            if (lit.var < 1 || lit.var > n) {
                throw std::invalid_argument("clause " + std::to_string(i) +
                                            ": variable out of range");
            }
            if (!vars.insert(lit.var).second) {
                throw std::invalid_argument("clause " + std::to_string(i) +
                                            ": repeated variable");
            }
        }
    }
    long long padding = padding_override.value_or(default_padding(n, q));
    if (padding < 1) throw std::invalid_argument("padding must be >= 1");

    int h = (n + 1) / 2;
    LiteralIndex lit(cnf);

    // ---- S1 ----------------------------------------------------------
    SeqBuilder b1;
    for (int i = q; i >= 1; --i) {
        b1.begin(clause_label("C1", i));
        b1.put(rsym(i, 3));
        b1.put_run(ysym(i), n + 1);
        b1.put(rsym(i, 2));
        b1.put_run(ysym(i), n + 1);
        for (int k = 1; k <= n; ++k) {
            b1.put(xsym(k));
            if (int j = lit.at[i][k]) b1.put(ssym(j));
            b1.put(nxsym(k));
        }
        b1.put_run(ysym(i), n + 1);
        b1.put(rsym(i, 2));
        b1.put_run(ysym(i), n + 1);
        b1.put(rsym(i, 1));
        b1.begin(clause_label("W", i));
        b1.put_run(wsym(i), padding);
    }
    b1.begin("SM1");
    for (int k = 1; k <= n; ++k) {
        b1.put(xsym(k));
        b1.put(nxsym(k));
    }
    for (int i = 1; i <= q; ++i) {
        b1.begin(clause_label("V", i));
        b1.put_run(vsym(i), padding);
        b1.begin(clause_label("P1", i));
        b1.put_run(ysym(q + i), 2 * (n + 1));
        b1.put(rsym(q + i, 3));
        for (int k = n; k >= h + 1; --k) {
            b1.put(nxsym(k));
            b1.put(xsym(k));
        }
        b1.put(rsym(q + i, 2));
        for (int k = h; k >= 1; --k) {
            b1.put(nxsym(k));
            b1.put(xsym(k));
        }
        b1.put(rsym(q + i, 1));
        b1.put_run(ysym(q + i), 2 * (n + 1));
    }

    // ---- S2 ----------------------------------------------------------
    // The j-th copy of variable k's block carries s_j when clause i's j-th
    // literal is on variable k: after the pair for a positive literal,
    // before it for a negative one.
    SeqBuilder b2;
    auto put_block2 = [&](int i, int k, int occurrence) {
        bool carries = lit.at[i][k] == occurrence;
        if (carries && lit.negated[i][k]) b2.put(ssym(occurrence));
        b2.put(xsym(k));
        b2.put(nxsym(k));
        if (carries && !lit.negated[i][k]) b2.put(ssym(occurrence));
    };
    for (int i = q; i >= 1; --i) {
        b2.begin(clause_label("C2", i));
        for (int k = 1; k <= n; ++k) put_block2(i, k, 1);
        b2.put(rsym(i, 3));
        b2.put_run(ysym(i), n + 1);
        for (int k = 1; k <= h; ++k) put_block2(i, k, 2);
        b2.put(rsym(i, 2));
        for (int k = h + 1; k <= n; ++k) put_block2(i, k, 2);
        b2.put_run(ysym(i), n + 1);
        b2.put(rsym(i, 1));
        for (int k = 1; k <= n; ++k) put_block2(i, k, 3);
        b2.begin(clause_label("W", i));
        b2.put_run(wsym(i), padding);
    }
    b2.begin("SM2");
    for (int k = 1; k <= n; ++k) {
        b2.put(nxsym(k));
        b2.put(xsym(k));
    }
    for (int i = 1; i <= q; ++i) {
        b2.begin(clause_label("V", i));
        b2.put_run(vsym(i), padding);
        b2.begin(clause_label("P2", i));
        for (int k = n; k >= 1; --k) {
            b2.put(nxsym(k));
            b2.put(xsym(k));
        }
        b2.put(rsym(q + i, 1));
        b2.put_run(ysym(q + i), n + 1);
        for (int k = n; k >= h + 1; --k) {
            b2.put(nxsym(k));
            b2.put(xsym(k));
        }
        b2.put(rsym(q + i, 2));
        for (int k = h; k >= 1; --k) {
            b2.put(nxsym(k));
            b2.put(xsym(k));
        }
        b2.put_run(ysym(q + i), n + 1);
        b2.put(rsym(q + i, 3));
        for (int k = n; k >= 1; --k) {
            b2.put(nxsym(k));
            b2.put(xsym(k));
        }
    }

    // ---- arcs on S1: first literal occurrences of each component pair
    // (SM1, P1.1), (C1.i, P1.i+1) -------------------------------------
    std::vector<Arc> arcs1;
    for (int i = 0; i <= q - 1; ++i) {
        std::string left = i == 0 ? "SM1" : clause_label("C1", i);
        std::string right = clause_label("P1", i + 1);
        for (int k = 1; k <= n; ++k) {
            arcs1.push_back({b1.find(1, xsym(k), left), b1.find(1, xsym(k), right)});
            arcs1.push_back({b1.find(1, nxsym(k), left), b1.find(1, nxsym(k), right)});
        }
    }

    // ---- arcs on S2: occurrence j in C2.i pairs with occurrence 4-j in
    // P2.i; the three R symbols pair up by index ------------------------
    std::vector<Arc> arcs2;
    for (int i = 1; i <= q; ++i) {
        std::string left = clause_label("C2", i);
        std::string right = clause_label("P2", i);
        for (int j = 1; j <= 3; ++j) {
            for (int k = 1; k <= n; ++k) {
                arcs2.push_back({b2.find(j, xsym(k), left), b2.find(4 - j, xsym(k), right)});
                arcs2.push_back({b2.find(j, nxsym(k), left), b2.find(4 - j, nxsym(k), right)});
            }
            arcs2.push_back({b2.find(1, rsym(i, j), left), b2.find(1, rsym(q + i, j), right)});
        }
    }

    ReductionInstance inst;
    inst.cnf = cnf;
    inst.padding = padding;
    inst.kprime = k_prime(n, q, padding);
    inst.padding_warning = padding < padding_threshold(n, q);
    inst.provenance1 = b1.provenance();
    inst.provenance2 = b2.provenance();
    inst.s1 = ArcAnnotatedSequence(std::move(b1.tokens), std::move(arcs1));
    inst.s2 = ArcAnnotatedSequence(std::move(b2.tokens), std::move(arcs2));
    return inst;
}

std::pair<int, int> component_span(const std::vector<std::string>& provenance,
                                   const std::string& label) {
    int begin = 0, end = 0;
    for (std::size_t pos = 1; pos < provenance.size(); ++pos) {
        if (provenance[pos] == label) {
            if (begin == 0) begin = static_cast<int>(pos);
            end = static_cast<int>(pos);
        }
    }
    if (begin == 0) throw std::out_of_range("no component labeled " + label);
    return {begin, end};
}

std::vector<int> q_segment_positions(const ReductionInstance& inst, int seq_index,
                                     const std::string& label, int r) {
    if (seq_index != 1 && seq_index != 2) {
        throw std::invalid_argument("seq_index must be 1 or 2");
    }
    const ArcAnnotatedSequence& s = seq_index == 1 ? inst.s1 : inst.s2;
    const auto& prov = seq_index == 1 ? inst.provenance1 : inst.provenance2;
    int n = inst.cnf.n();
    std::vector<int> ys;
    for (int pos = 1; pos <= s.length(); ++pos) {
        if (prov[pos] == label && s.at(pos)[0] == 'y') ys.push_back(pos);
    }
    int run = n + 1;
    int runs = static_cast<int>(ys.size()) / run;
    if (r < 1 || r > runs) {
        throw std::out_of_range("component " + label + " has " + std::to_string(runs) +
                                " spacer runs, asked for " + std::to_string(r));
    }
    return {ys.begin() + static_cast<std::ptrdiff_t>(r - 1) * run,
            ys.begin() + static_cast<std::ptrdiff_t>(r) * run};
}

CheckReport audit_instance(const ReductionInstance& inst) {
    CheckReport report;
    int n = inst.cnf.n(), q = inst.cnf.q();
    long long P = inst.padding;

    long long want1 = q * (12LL * n + 18 + 2 * P) + 2 * n;
    long long want2 = q * (16LL * n + 13 + 2 * P) + 2 * n;
    report.add("s1-length", inst.s1.length() == want1,
               "got " + std::to_string(inst.s1.length()) + ", want " + std::to_string(want1));
    report.add("s2-length", inst.s2.length() == want2,
               "got " + std::to_string(inst.s2.length()) + ", want " + std::to_string(want2));
    report.add("kprime-formula", inst.kprime == k_prime(n, q, P),
               "kprime = " + std::to_string(inst.kprime));

    Level l1 = classify_level(inst.s1);
    Level l2 = classify_level(inst.s2);
    report.add("s1-level", l1 <= Level::Stem, std::string(to_string(l1)));
    report.add("s2-level", l2 <= Level::Stem, std::string(to_string(l2)));

    std::map<Symbol, long long> count1, count2;
    for (int pos = 1; pos <= inst.s1.length(); ++pos) ++count1[inst.s1.at(pos)];
    for (int pos = 1; pos <= inst.s2.length(); ++pos) ++count2[inst.s2.at(pos)];

    bool lit1 = true, lit2 = true;
    for (int k = 1; k <= n; ++k) {
        lit1 = lit1 && count1[xsym(k)] == 2 * q + 1 && count1[nxsym(k)] == 2 * q + 1;
        lit2 = lit2 && count2[xsym(k)] == 6 * q + 1 && count2[nxsym(k)] == 6 * q + 1;
    }
    report.add("s1-literal-counts", lit1, "want 2q+1 = " + std::to_string(2 * q + 1));
    report.add("s2-literal-counts", lit2, "want 6q+1 = " + std::to_string(6 * q + 1));

    bool q1 = true, q2 = true;
    for (int i = 1; i <= 2 * q; ++i) {
        q1 = q1 && count1[ysym(i)] == 4LL * (n + 1);
        q2 = q2 && count2[ysym(i)] == 2LL * (n + 1);
    }
    report.add("s1-spacer-counts", q1, "want 4 runs of n+1 per y symbol");
    report.add("s2-spacer-counts", q2, "want 2 runs of n+1 per y symbol");

    bool r1 = true, r2 = true;
    for (int i = 1; i <= q; ++i) {
        r1 = r1 && count1[rsym(i, 2)] == 2 && count1[rsym(i, 1)] == 1 &&
             count1[rsym(i, 3)] == 1 && count1[rsym(q + i, 1)] == 1 &&
             count1[rsym(q + i, 2)] == 1 && count1[rsym(q + i, 3)] == 1;
        for (int j = 1; j <= 3; ++j) {
            r2 = r2 && count2[rsym(i, j)] == 1 && count2[rsym(q + i, j)] == 1;
        }
    }
    report.add("s1-r-counts", r1, "");
    report.add("s2-r-counts", r2, "");

    bool pad = true;
    for (int i = 1; i <= q; ++i) {
        pad = pad && count1[wsym(i)] == P && count1[vsym(i)] == P &&
              count2[wsym(i)] == P && count2[vsym(i)] == P;
    }
    report.add("padding-counts", pad, "want " + std::to_string(P) + " per run");

    bool s_unique = true;
    try {
        for (int i = 1; i <= q; ++i) {
            for (int j = 1; j <= 3; ++j) {
                chi(1, ssym(j), inst.s1, inst.provenance1, clause_label("C1", i));
                chi(1, ssym(j), inst.s2, inst.provenance2, clause_label("C2", i));
            }
        }
        for (int j = 1; j <= 3; ++j) {
            s_unique = s_unique && count1[ssym(j)] == q && count2[ssym(j)] == q;
        }
    } catch (const std::out_of_range&) {
        s_unique = false;
    }
    report.add("selector-unique-per-clause", s_unique,
               "one of each s1,s2,s3 per clause component");

    long long want_arcs1 = 2LL * n * q;
    long long want_arcs2 = q * (6LL * n + 3);
    report.add("s1-arc-count",
               static_cast<long long>(inst.s1.arcs().size()) == want_arcs1,
               "got " + std::to_string(inst.s1.arcs().size()) + ", want " +
                   std::to_string(want_arcs1));
    report.add("s2-arc-count",
               static_cast<long long>(inst.s2.arcs().size()) == want_arcs2,
               "got " + std::to_string(inst.s2.arcs().size()) + ", want " +
                   std::to_string(want_arcs2));
    return report;
}

CnfInstance reconstruct_cnf(const ReductionInstance& inst) {
    auto sm1 = component_span(inst.provenance1, "SM1");
    int n = (sm1.second - sm1.first + 1) / 2;
    int q = 0;
    while (true) {
        try {
            component_span(inst.provenance1, clause_label("C1", q + 1));
            ++q;
        } catch (const std::out_of_range&) {
            break;
        }
    }

    CnfInstance cnf;
    cnf.num_vars = n;
    for (int i = 1; i <= q; ++i) {
        std::array<Literal, 3> clause;
        for (int j = 1; j <= 3; ++j) {
            int p1 = chi(1, ssym(j), inst.s1, inst.provenance1, clause_label("C1", i));
            Symbol before = inst.s1.at(p1 - 1);
            if (before.empty() || before[0] != 'x') {
                throw std::logic_error("selector s" + std::to_string(j) +
                                       " of clause " + std::to_string(i) +
                                       " is not preceded by a variable symbol");
            }
            int var = std::stoi(before.substr(1));
            int p2 = chi(1, ssym(j), inst.s2, inst.provenance2, clause_label("C2", i));
            bool negated;
            if (p2 + 1 <= inst.s2.length() && inst.s2.at(p2 + 1) == xsym(var)) {
                negated = true;
            } else if (p2 - 1 >= 1 && inst.s2.at(p2 - 1) == nxsym(var)) {
                negated = false;
            } else {
                throw std::logic_error("selector s" + std::to_string(j) +
                                       " of clause " + std::to_string(i) +
                                       " has no adjacent block for variable " +
                                       std::to_string(var));
            }
            clause[j - 1] = {var, negated};
        }
        cnf.clauses.push_back(clause);
    }
    return cnf;
}

void save_instance(const ReductionInstance& inst, const std::string& dir) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    save_sequence_file(inst.s1, dir + "/s1.aas");
    save_sequence_file(inst.s2, dir + "/s2.aas");

    std::ofstream meta(dir + "/meta.txt");
    if (!meta) throw std::runtime_error("cannot write " + dir + "/meta.txt");
    meta << "n: " << inst.cnf.n() << "\n";
    meta << "q: " << inst.cnf.q() << "\n";
    meta << "padding: " << inst.padding << "\n";
    meta << "kprime: " << inst.kprime << "\n";
    for (const auto& clause : inst.cnf.clauses) {
        meta << "clause:";
        for (const auto& lit : clause) meta << " " << (lit.negated ? -lit.var : lit.var);
        meta << "\n";
    }

    for (int which = 1; which <= 2; ++which) {
        const auto& prov = which == 1 ? inst.provenance1 : inst.provenance2;
        std::string path = dir + "/s" + std::to_string(which) + ".prov";
        std::ofstream out(path);
        if (!out) throw std::runtime_error("cannot write " + path);
        for (std::size_t pos = 1; pos < prov.size(); ++pos) {
            out << pos << " " << prov[pos] << "\n";
        }
    }
}

ReductionInstance load_instance(const std::string& dir) {
    std::ifstream meta(dir + "/meta.txt");
    if (!meta) throw ParseError("cannot open " + dir + "/meta.txt");
    CnfInstance cnf;
    long long padding = -1, kprime = -1;
    int declared_q = -1;
    std::string line;
    int line_no = 0;
    std::vector<std::string> errors;
    while (std::getline(meta, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::string key;
        if (!(ls >> key)) continue;
        if (key == "n:") {
            ls >> cnf.num_vars;
        } else if (key == "q:") {
            ls >> declared_q;
        } else if (key == "padding:") {
            ls >> padding;
        } else if (key == "kprime:") {
            ls >> kprime;
        } else if (key == "clause:") {
            std::array<Literal, 3> clause;
            long long v;
            int got = 0;
            while (ls >> v) {
                if (got < 3 && v != 0) {
                    clause[got] = {static_cast<int>(v < 0 ? -v : v), v < 0};
                }
                ++got;
            }
            if (got != 3) {
                errors.push_back("meta.txt line " + std::to_string(line_no) +
                                 ": clause must have exactly 3 literals");
            } else {
                cnf.clauses.push_back(clause);
            }
        } else {
            errors.push_back("meta.txt line " + std::to_string(line_no) +
                             ": unknown key '" + key + "'");
        }
    }
    if (cnf.num_vars == 0 || declared_q == -1 || padding == -1 || kprime == -1) {
        errors.push_back("meta.txt: missing one of n:, q:, padding:, kprime:");
    }
    if (declared_q != -1 && declared_q != cnf.q()) {
        errors.push_back("meta.txt: q is " + std::to_string(declared_q) + " but " +
                         std::to_string(cnf.q()) + " clauses are listed");
    }
    if (!errors.empty()) throw ParseError(errors);

    ReductionInstance inst = build_instance(cnf, padding);
    if (inst.kprime != kprime) {
        throw ParseError("meta.txt: kprime is " + std::to_string(kprime) +
                         " but the construction yields " + std::to_string(inst.kprime));
    }
    ArcAnnotatedSequence s1 = load_sequence_file(dir + "/s1.aas");
    ArcAnnotatedSequence s2 = load_sequence_file(dir + "/s2.aas");
    if (s1.tokens() != inst.s1.tokens() || s1.arcs() != inst.s1.arcs()) {
        throw ParseError(dir + "/s1.aas does not match the construction for its meta.txt");
    }
    if (s2.tokens() != inst.s2.tokens() || s2.arcs() != inst.s2.arcs()) {
        throw ParseError(dir + "/s2.aas does not match the construction for its meta.txt");
    }
    return inst;
}

} // namespace arcseq
