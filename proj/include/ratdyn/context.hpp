#ifndef RATDYN_CONTEXT_HPP
#define RATDYN_CONTEXT_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

#include <mpfr.h>

namespace ratdyn {

// Immutable knobs threaded through every computation. All pseudo-random
// choices (fallback conjugations, basepoints, probe starts) derive from the
// seed, so identical inputs give identical outputs.
struct Context {
    mpfr_prec_t precision = 128;
    mpfr_prec_t precision_cap = 8192;
    int degree_cap = 256;
    std::uint64_t seed = 0;
};

struct error : std::runtime_error {
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

// the working-precision doubling loop hit the configured cap
struct precision_cap_error : error {
    explicit precision_cap_error(const std::string& what = "precision cap exceeded")
        : error(what) {}
};

// an iterate or composition would exceed the configured degree cap
struct overflow_guard_error : error {
    explicit overflow_guard_error(const std::string& what = "degree cap exceeded")
        : error(what) {}
};

struct finite_required_error : error {
    explicit finite_required_error() : error("operation requires a finite point") {}
};

struct degenerate_at_infinity_error : error {
    explicit degenerate_at_infinity_error()
        : error("map lies on the hypersurface L; projectivize first") {}
};

struct degenerate_map_error : error {
    explicit degenerate_map_error(const std::string& what) : error(what) {}
};

struct not_simple_error : error {
    explicit not_simple_error() : error("map is not simple") {}
};

struct near_critical_error : error {
    explicit near_critical_error() : error("target too close to a critical value") {}
};

struct precondition_error : error {
    explicit precondition_error(const std::string& what) : error(what) {}
};

struct parse_error : error {
    std::size_t position;
    parse_error(const std::string& what, std::size_t pos)
        : error(what + " at position " + std::to_string(pos)), position(pos) {}
};

} // namespace ratdyn

#endif
