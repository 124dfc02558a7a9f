#ifndef ARCSEQ_REPORT_HPP
#define ARCSEQ_REPORT_HPP

#include <ostream>
#include <string>
#include <vector>

namespace arcseq {

struct Check {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct CheckReport {
    std::vector<Check> checks;

    void add(std::string name, bool passed, std::string detail = "") {
        checks.push_back({std::move(name), passed, std::move(detail)});
    }

    bool all_passed() const {
        for (const auto& c : checks) {
            if (!c.passed) return false;
        }
        return true;
    }

    void print(std::ostream& os) const {
        for (const auto& c : checks) {
            os << "CHECK " << c.name << ": " << (c.passed ? "PASS" : "FAIL");
            if (!c.detail.empty()) os << " " << c.detail;
            os << "\n";
        }
    }
};

} // namespace arcseq

#endif
