#include "arcseq/witness.hpp"

#include <algorithm>
#include <cctype>
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
std::string rsym(int i, int j) {
    return "R" + std::to_string(i) + "." + std::to_string(j);
}

std::string label(const char* kind, int i) {
    return std::string(kind) + "." + std::to_string(i);
}

} // namespace

Assignment parse_assignment(const std::string& text, int num_vars) {
    Assignment a;
    a.values.assign(num_vars, false);
    std::vector<bool> seen(num_vars + 1, false);
    std::vector<std::string> errors;
    std::string piece;
    std::istringstream in(text);
    while (std::getline(in, piece, ',')) {
        long long v;
        try {
            std::size_t used = 0;
            v = std::stoll(piece, &used);
            while (used < piece.size() && std::isspace(static_cast<unsigned char>(piece[used]))) ++used;
            if (used != piece.size()) throw std::invalid_argument(piece);
        } catch (const std::exception&) {
            errors.push_back("not a signed integer: '" + piece + "'");
            continue;
        }
        long long var = v < 0 ? -v : v;
        if (var < 1 || var > num_vars) {
            errors.push_back("variable " + std::to_string(var) + " out of range 1.." +
                             std::to_string(num_vars));
            continue;
        }
        if (seen[var]) {
            errors.push_back("variable " + std::to_string(var) + " listed twice");
            continue;
        }
        seen[var] = true;
        a.values[var - 1] = v > 0;
    }
    for (int k = 1; k <= num_vars; ++k) {
        if (!seen[k]) errors.push_back("variable " + std::to_string(k) + " missing");
    }
    if (!errors.empty()) throw ParseError(errors);
    return a;
}

std::string serialize_assignment(const Assignment& a) {
    std::string out;
    for (int k = 1; k <= a.size(); ++k) {
        if (!out.empty()) out += ",";
        if (!a.value(k)) out += "-";
        out += std::to_string(k);
    }
    return out;
}

bool satisfies(const CnfInstance& cnf, const Assignment& a) {
    if (a.size() != cnf.n()) return false;
    for (const auto& clause : cnf.clauses) {
        bool any = false;
        for (const Literal& lit : clause) {
            if (a.value(lit.var) != lit.negated) {
                any = true;
                break;
            }
        }
        if (!any) return false;
    }
    return true;
}

std::optional<Assignment> sat_bruteforce(const CnfInstance& cnf) {
    int n = cnf.n();
    if (n > 24) {
        throw GuardError("sat_bruteforce: refusing n = " + std::to_string(n) + " > 24");
    }
    Assignment a;
    a.values.assign(n, false);
    for (unsigned long long m = 0; m < (1ull << n); ++m) {
        for (int k = 1; k <= n; ++k) {
            a.values[k - 1] = (m >> (n - k)) & 1ull;
        }
        if (satisfies(cnf, a)) return a;
    }
    return std::nullopt;
}

namespace {

std::vector<int> kept_positions(int length, const std::set<int>& deleted) {
    std::vector<int> kept;
    kept.reserve(length - static_cast<int>(deleted.size()));
    for (int pos = 1; pos <= length; ++pos) {
        if (!deleted.count(pos)) kept.push_back(pos);
    }
    return kept;
}

} // namespace

WitnessCertificate build_witness(const ReductionInstance& inst, const Assignment& a) {
    const CnfInstance& cnf = inst.cnf;
    int n = cnf.n(), q = cnf.q();
    if (a.size() != n) {
        throw std::invalid_argument("assignment covers " + std::to_string(a.size()) +
                                    " variables, formula has " + std::to_string(n));
    }
    if (!satisfies(cnf, a)) {
        throw std::invalid_argument("assignment does not satisfy the formula");
    }

    std::set<int> del1, del2;
    auto chi1 = [&](int r, const Symbol& c, const std::string& comp) {
        return chi(r, c, inst.s1, inst.provenance1, comp);
    };
    auto chi2 = [&](int r, const Symbol& c, const std::string& comp) {
        return chi(r, c, inst.s2, inst.provenance2, comp);
    };
    auto del_run1 = [&](const std::string& comp, int r) {
        for (int pos : q_segment_positions(inst, 1, comp, r)) del1.insert(pos);
    };

    // per-variable deletions: the false literal goes away in the C side and
    // SM1/SM2, its negation in the P side
    for (int k = 1; k <= n; ++k) {
        const Symbol in_c = a.value(k) ? nxsym(k) : xsym(k);
        const Symbol in_p = a.value(k) ? xsym(k) : nxsym(k);
        for (int j = 1; j <= q; ++j) {
            del1.insert(chi1(1, in_c, label("C1", j)));
            del1.insert(chi1(1, in_p, label("P1", j)));
        }
        del1.insert(chi1(1, in_c, "SM1"));
        del2.insert(chi2(1, in_c, "SM2"));
    }

    // per-clause deletions, driven by the satisfied literal with the biggest
    // index
    for (int i = 1; i <= q; ++i) {
        int jstar = 0;
        for (int j = 1; j <= 3; ++j) {
            const Literal& lit = cnf.clauses[i - 1][j - 1];
            if (a.value(lit.var) != lit.negated) jstar = j;
        }
        if (jstar == 0) {
            throw std::logic_error("satisfying assignment left clause " +
                                   std::to_string(i) + " unsatisfied");
        }
        std::string c1 = label("C1", i), p1 = label("P1", i);
        std::string c2 = label("C2", i), p2 = label("P2", i);

        switch (jstar) {
        case 1:
            del1.insert(chi1(1, rsym(i, 3), c1));
            del_run1(c1, 1);
            del1.insert(chi1(1, rsym(i, 2), c1));
            del_run1(c1, 2);
            del1.insert(chi1(1, ssym(2), c1));
            del1.insert(chi1(1, ssym(3), c1));
            del1.insert(chi1(1, rsym(q + i, 2), p1));
            del1.insert(chi1(1, rsym(q + i, 1), p1));
            del_run1(p1, 3);
            del_run1(p1, 4);

            del2.insert(chi2(1, rsym(i, 3), c2));
            del2.insert(chi2(1, ssym(2), c2));
            del2.insert(chi2(1, ssym(3), c2));
            del2.insert(chi2(1, rsym(q + i, 1), p2));
            del2.insert(chi2(1, rsym(q + i, 2), p2));
            for (int k = 1; k <= n; ++k) {
                del2.insert(chi2(2, xsym(k), c2));
                del2.insert(chi2(2, nxsym(k), c2));
                del2.insert(chi2(3, xsym(k), c2));
                del2.insert(chi2(3, nxsym(k), c2));
                del2.insert(chi2(1, xsym(k), p2));
                del2.insert(chi2(1, nxsym(k), p2));
                del2.insert(chi2(2, xsym(k), p2));
                del2.insert(chi2(2, nxsym(k), p2));
                if (!a.value(k)) {
                    del2.insert(chi2(1, xsym(k), c2));
                    del2.insert(chi2(3, nxsym(k), p2));
                } else {
                    del2.insert(chi2(1, nxsym(k), c2));
                    del2.insert(chi2(3, xsym(k), p2));
                }
            }
            break;
        case 2:
            del1.insert(chi1(1, rsym(i, 2), c1));
            del_run1(c1, 2);
            del1.insert(chi1(1, ssym(1), c1));
            del1.insert(chi1(1, ssym(3), c1));
            del_run1(c1, 3);
            del1.insert(chi1(2, rsym(i, 2), c1));
            del_run1(p1, 2);
            del1.insert(chi1(1, rsym(q + i, 3), p1));
            del1.insert(chi1(1, rsym(q + i, 1), p1));
            del_run1(p1, 3);

            del2.insert(chi2(1, rsym(i, 2), c2));
            del2.insert(chi2(1, ssym(1), c2));
            del2.insert(chi2(1, ssym(3), c2));
            del2.insert(chi2(1, rsym(q + i, 1), p2));
            del2.insert(chi2(1, rsym(q + i, 3), p2));
            for (int k = 1; k <= n; ++k) {
                del2.insert(chi2(1, xsym(k), c2));
                del2.insert(chi2(1, nxsym(k), c2));
                del2.insert(chi2(3, xsym(k), c2));
                del2.insert(chi2(3, nxsym(k), c2));
                del2.insert(chi2(1, xsym(k), p2));
                del2.insert(chi2(1, nxsym(k), p2));
                del2.insert(chi2(3, xsym(k), p2));
                del2.insert(chi2(3, nxsym(k), p2));
                if (!a.value(k)) {
                    del2.insert(chi2(2, xsym(k), c2));
                    del2.insert(chi2(2, nxsym(k), p2));
                } else {
                    del2.insert(chi2(2, nxsym(k), c2));
                    del2.insert(chi2(2, xsym(k), p2));
                }
            }
            break;
        case 3:
            del1.insert(chi1(1, ssym(1), c1));
            del1.insert(chi1(1, ssym(2), c1));
            del_run1(c1, 3);
            del1.insert(chi1(2, rsym(i, 2), c1));
            del_run1(c1, 4);
            del1.insert(chi1(1, rsym(i, 1), c1));
            del_run1(p1, 1);
            del_run1(p1, 2);
            del1.insert(chi1(1, rsym(q + i, 3), p1));
            del1.insert(chi1(1, rsym(q + i, 2), p1));

            del2.insert(chi2(1, rsym(i, 1), c2));
            del2.insert(chi2(1, ssym(1), c2));
            del2.insert(chi2(1, ssym(2), c2));
            del2.insert(chi2(1, rsym(q + i, 2), p2));
            del2.insert(chi2(1, rsym(q + i, 3), p2));
            for (int k = 1; k <= n; ++k) {
                del2.insert(chi2(1, xsym(k), c2));
                del2.insert(chi2(1, nxsym(k), c2));
                del2.insert(chi2(2, xsym(k), c2));
                del2.insert(chi2(2, nxsym(k), c2));
                del2.insert(chi2(2, xsym(k), p2));
                del2.insert(chi2(2, nxsym(k), p2));
                del2.insert(chi2(3, xsym(k), p2));
                del2.insert(chi2(3, nxsym(k), p2));
                if (!a.value(k)) {
                    del2.insert(chi2(3, xsym(k), c2));
                    del2.insert(chi2(1, nxsym(k), p2));
                } else {
                    del2.insert(chi2(3, nxsym(k), c2));
                    del2.insert(chi2(1, xsym(k), p2));
                }
            }
            break;
        }
    }

    WitnessCertificate cert;
    cert.deleted1 = std::vector<int>(del1.begin(), del1.end());
    cert.deleted2 = std::vector<int>(del2.begin(), del2.end());
    std::vector<int> kept1 = kept_positions(inst.s1.length(), del1);
    std::vector<int> kept2 = kept_positions(inst.s2.length(), del2);
    if (kept1.size() != kept2.size()) {
        throw std::logic_error("deletion lists keep " + std::to_string(kept1.size()) +
                               " vs " + std::to_string(kept2.size()) + " symbols");
    }
    for (std::size_t t = 0; t < kept1.size(); ++t) {
        if (inst.s1.at(kept1[t]) != inst.s2.at(kept2[t])) {
            throw std::logic_error("kept symbols disagree at common position " +
                                   std::to_string(t + 1));
        }
    }
    cert.common = delete_positions(inst.s1, del1);
    cert.embed1.map = std::move(kept1);
    cert.embed2.map = std::move(kept2);
    cert.length = cert.common.length();
    if (cert.length != inst.kprime) {
        throw std::logic_error("certificate length " + std::to_string(cert.length) +
                               " != threshold " + std::to_string(inst.kprime));
    }
    return cert;
}

Assignment extract_assignment(const ReductionInstance& inst,
                              const WitnessCertificate& cert) {
    const CnfInstance& cnf = inst.cnf;
    int n = cnf.n(), q = cnf.q();
    if (cert.length < inst.kprime) {
        throw std::invalid_argument("certificate length " + std::to_string(cert.length) +
                                    " is below the threshold " +
                                    std::to_string(inst.kprime));
    }
    std::set<int> del1(cert.deleted1.begin(), cert.deleted1.end());
    auto conserved = [&](int pos) { return del1.count(pos) == 0; };

    std::vector<int> forced(n + 1, -1); // -1 unknown, else 0/1
    for (int i = 1; i <= q; ++i) {
        std::vector<int> kept_js;
        for (int j = 1; j <= 3; ++j) {
            if (conserved(chi(1, ssym(j), inst.s1, inst.provenance1, label("C1", i)))) {
                kept_js.push_back(j);
            }
        }
        if (kept_js.size() != 1) {
            throw std::runtime_error("clause " + std::to_string(i) + " has " +
                                     std::to_string(kept_js.size()) +
                                     " conserved selector symbols, expected 1");
        }
        const Literal& lit = cnf.clauses[i - 1][kept_js[0] - 1];
        int want = lit.negated ? 0 : 1;
        if (forced[lit.var] != -1 && forced[lit.var] != want) {
            throw std::runtime_error("variable " + std::to_string(lit.var) +
                                     " is forced both true and false");
        }
        forced[lit.var] = want;
    }

    Assignment a;
    a.values.assign(n, false);
    for (int k = 1; k <= n; ++k) {
        if (forced[k] != -1) {
            a.values[k - 1] = forced[k] == 1;
            continue;
        }
        bool x_kept = conserved(chi(1, xsym(k), inst.s1, inst.provenance1, "SM1"));
        bool nx_kept = conserved(chi(1, nxsym(k), inst.s1, inst.provenance1, "SM1"));
        if (x_kept == nx_kept) {
            throw std::runtime_error("variable " + std::to_string(k) +
                                     ": SM1 conserves " + (x_kept ? "both" : "neither") +
                                     " of its literals");
        }
        a.values[k - 1] = x_kept;
    }
    return a;
}

CheckReport verify_witness(const ReductionInstance& inst,
                           const WitnessCertificate& cert) {
    CheckReport report;
    int n = inst.cnf.n(), q = inst.cnf.q();
    std::set<int> del1(cert.deleted1.begin(), cert.deleted1.end());
    std::set<int> del2(cert.deleted2.begin(), cert.deleted2.end());

    bool range_ok =
        del1.size() == cert.deleted1.size() && del2.size() == cert.deleted2.size() &&
        (del1.empty() || (*del1.begin() >= 1 && *del1.rbegin() <= inst.s1.length())) &&
        (del2.empty() || (*del2.begin() >= 1 && *del2.rbegin() <= inst.s2.length()));
    report.add("deletion-positions-valid", range_ok, "");
    if (!range_ok) return report;

    report.add("deletions1-match-embedding",
               kept_positions(inst.s1.length(), del1) == cert.embed1.map, "");
    report.add("deletions2-match-embedding",
               kept_positions(inst.s2.length(), del2) == cert.embed2.map, "");
    report.add("embedding1-verifies", verify_embedding(cert.common, inst.s1, cert.embed1), "");
    report.add("embedding2-verifies", verify_embedding(cert.common, inst.s2, cert.embed2), "");
    report.add("length-equals-kprime",
               cert.length == inst.kprime && cert.common.length() == cert.length,
               "length " + std::to_string(cert.length) + ", threshold " +
                   std::to_string(inst.kprime));

    bool padding_ok = true;
    for (int pos : cert.deleted1) {
        const std::string& lbl = inst.provenance1[pos];
        if (lbl[0] == 'W' || lbl[0] == 'V') padding_ok = false;
    }
    for (int pos : cert.deleted2) {
        const std::string& lbl = inst.provenance2[pos];
        if (lbl[0] == 'W' || lbl[0] == 'V') padding_ok = false;
    }
    report.add("padding-conserved", padding_ok, "no deleted w/v symbols allowed");

    bool arcs_cut = true;
    for (const Arc& arc : inst.s1.arcs()) {
        if (!del1.count(arc.left) && !del1.count(arc.right)) arcs_cut = false;
    }
    for (const Arc& arc : inst.s2.arcs()) {
        if (!del2.count(arc.left) && !del2.count(arc.right)) arcs_cut = false;
    }
    report.add("no-arc-fully-conserved", arcs_cut,
               "every arc must lose at least one endpoint");

    auto conserved1 = [&](int r, const Symbol& c, const std::string& comp) {
        return del1.count(chi(r, c, inst.s1, inst.provenance1, comp)) == 0;
    };

    bool uniform = true;
    for (int k = 1; k <= n; ++k) {
        bool x_ref = conserved1(1, xsym(k), "SM1");
        bool nx_ref = conserved1(1, nxsym(k), "SM1");
        if (x_ref == nx_ref) uniform = false;
        for (int i = 1; i <= q; ++i) {
            if (conserved1(1, xsym(k), label("C1", i)) != x_ref) uniform = false;
            if (conserved1(1, nxsym(k), label("C1", i)) != nx_ref) uniform = false;
        }
    }
    report.add("conserved-literal-uniformity", uniform,
               "each variable keeps the same literal in SM1 and every C1 component");

    std::map<Symbol, long long> kept_count;
    for (int pos = 1; pos <= inst.s1.length(); ++pos) {
        if (!del1.count(pos)) ++kept_count[inst.s1.at(pos)];
    }

    bool var_counts = true;
    for (int k = 1; k <= n; ++k) {
        if (kept_count[xsym(k)] + kept_count[nxsym(k)] != 2 * q + 1) var_counts = false;
    }
    report.add("variable-occurrence-counts", var_counts,
               "2q+1 conserved literal copies per variable");

    bool spacers = true;
    for (int i = 1; i <= 2 * q && spacers; ++i) {
        if (kept_count[ysym(i)] != 2LL * (n + 1)) spacers = false;
        std::string comp = i <= q ? label("C1", i) : label("P1", i - q);
        int full = 0;
        for (int r = 1; r <= 4; ++r) {
            auto seg = q_segment_positions(inst, 1, comp, r);
            int kept = 0;
            for (int pos : seg) {
                if (!del1.count(pos)) ++kept;
            }
            if (kept == static_cast<int>(seg.size())) {
                ++full;
            } else if (kept != 0) {
                spacers = false;
            }
        }
        if (full != 2) spacers = false;
    }
    report.add("spacer-run-composition", spacers,
               "exactly two complete spacer runs conserved per component");

    bool selectors = true;
    for (int i = 1; i <= q; ++i) {
        int kept_js = 0;
        for (int j = 1; j <= 3; ++j) {
            if (conserved1(1, ssym(j), label("C1", i))) ++kept_js;
        }
        if (kept_js != 1) selectors = false;
    }
    report.add("selector-composition", selectors, "one conserved s symbol per clause");

    bool r_comp = true;
    for (int i = 1; i <= q; ++i) {
        std::set<int> c_side, p_side;
        int c_copies = 0;
        for (int j = 1; j <= 3; ++j) {
            int copies = j == 2 ? 2 : 1;
            for (int r = 1; r <= copies; ++r) {
                if (conserved1(r, rsym(i, j), label("C1", i))) {
                    c_side.insert(j);
                    ++c_copies;
                }
            }
            if (conserved1(1, rsym(q + i, j), label("P1", i))) p_side.insert(j);
        }
        std::set<int> all = c_side;
        all.insert(p_side.begin(), p_side.end());
        if (c_copies != 2 || c_side.size() != 2 || p_side.size() != 1 ||
            all != std::set<int>{1, 2, 3}) {
            r_comp = false;
        }
    }
    report.add("r-symbol-composition", r_comp,
               "two C-side and one P-side R symbol covering indices 1..3");

    return report;
}

void save_certificate(const WitnessCertificate& cert, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "length: " << cert.length << "\n";
    out << "del1:";
    for (int pos : cert.deleted1) out << " " << pos;
    out << "\n";
    out << "del2:";
    for (int pos : cert.deleted2) out << " " << pos;
    out << "\n";
    out << serialize(cert.common);
    out << serialize_embedding(cert.embed1);
    out << serialize_embedding(cert.embed2);
}

WitnessCertificate load_certificate(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    WitnessCertificate cert;
    bool have_length = false, have_del1 = false, have_del2 = false;
    std::string seq_block;
    std::vector<std::string> maps;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::string key;
        if (!(ls >> key)) continue;
        if (key[0] == '#') continue;
        if (key == "length:") {
            ls >> cert.length;
            have_length = true;
        } else if (key == "del1:" || key == "del2:") {
            auto& target = key == "del1:" ? cert.deleted1 : cert.deleted2;
            (key == "del1:" ? have_del1 : have_del2) = true;
            int pos;
            while (ls >> pos) target.push_back(pos);
        } else if (key == "seq:" || key == "arc:") {
            seq_block += line + "\n";
        } else if (key == "map:") {
            maps.push_back(line);
        } else {
            throw ParseError("line " + std::to_string(line_no) + ": unknown key '" +
                             key + "'");
        }
    }
    if (!have_length || !have_del1 || !have_del2 || seq_block.empty() ||
        maps.size() != 2) {
        throw ParseError(path +
                         ": expected length:, del1:, del2:, a sequence, and two map: lines");
    }
    cert.common = parse_sequence(seq_block);
    cert.embed1 = parse_embedding(maps[0]);
    cert.embed2 = parse_embedding(maps[1]);
    std::sort(cert.deleted1.begin(), cert.deleted1.end());
    std::sort(cert.deleted2.begin(), cert.deleted2.end());
    return cert;
}

} // namespace arcseq
