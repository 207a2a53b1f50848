#ifndef RATDYN_CERTIFICATE_HPP
#define RATDYN_CERTIFICATE_HPP

#include <string>
#include <vector>

namespace ratdyn {

enum class CertVerdict { PASS, FAIL, INDETERMINATE };

inline const char* to_string(CertVerdict v) {
    switch (v) {
        case CertVerdict::PASS: return "PASS";
        case CertVerdict::FAIL: return "FAIL";
        default: return "INDETERMINATE";
    }
}

// Named verdict with the exact values that justify it. Witness values are
// canonical expression strings, so a report can be replayed through the
// parser.
struct Witness {
    std::string label;
    std::string value;
};

struct Certificate {
    std::string name;
    CertVerdict verdict = CertVerdict::INDETERMINATE;
    std::vector<Witness> witnesses;

    const std::string* find(const std::string& label) const {
        for (const auto& w : witnesses)
            if (w.label == label) return &w.value;
        return nullptr;
    }
};

} // namespace ratdyn

#endif
