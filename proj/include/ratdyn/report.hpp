#ifndef RATDYN_REPORT_HPP
#define RATDYN_REPORT_HPP

#include <string>
#include <vector>

namespace ratdyn {

struct CliResult {
    int exit_code = 0;   // 0 definite, 1 error, 2 indeterminate, 64 usage
    std::string out;     // JSON (or text) on success
    std::string err;     // diagnostics for stderr
};

// The full command surface: parse, portrait, sigma, certify emp|generic,
// genus, irreducible, decompose, audit, monodromy, conjugacy,
// periodic-curves, iterate; flags --precision, --precision-cap, --degree-cap,
// --seed, --format, plus per-command options.
CliResult run_command(const std::vector<std::string>& args);

} // namespace ratdyn

#endif
