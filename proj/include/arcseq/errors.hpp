#ifndef ARCSEQ_ERRORS_HPP
#define ARCSEQ_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace arcseq {

// Malformed input text (AAS, DIMACS, certificate, ...). Carries one message
// per defect so callers can report them all at once.
class ParseError : public std::runtime_error {
public:
    explicit ParseError(std::string message)
        : std::runtime_error(message), messages_{std::move(message)} {}

    explicit ParseError(std::vector<std::string> messages)
        : std::runtime_error(join(messages)), messages_(std::move(messages)) {}

    const std::vector<std::string>& messages() const { return messages_; }

private:
    static std::string join(const std::vector<std::string>& messages) {
        std::string out;
        for (const auto& m : messages) {
            if (!out.empty()) out += "; ";
            out += m;
        }
        return out;
    }

    std::vector<std::string> messages_;
};

// A size guard refused to run (brute-force enumerations only scale so far).
class GuardError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace arcseq

#endif
