#ifndef RATDYN_DYNPAIR_HPP
#define RATDYN_DYNPAIR_HPP

#include <optional>

#include "ratdyn/certificate.hpp"
#include "ratdyn/ratmap.hpp"

namespace ratdyn {

struct input_not_semiconjugate_error : error {
    input_not_semiconjugate_error() : error("inputs do not satisfy a^r o x = x o b") {}
};

// y = (mobius o base^s)(x) or x = (base^s o mobius^{-1})(y)
struct GraphCurve {
    enum class Orientation { Y_OF_X, X_OF_Y };
    Orientation orientation = Orientation::Y_OF_X;
    Mobius mobius = Mobius::identity();
    int s = 0;
    RatMap base;

    std::string str() const;
};

// alpha with a2 o alpha = alpha o a1, verified exactly; the search matches
// multiplier data at fixed points and falls back to critical points when the
// fixed-point data degenerates
std::optional<Mobius> find_conjugating(const RatMap& a1, const RatMap& a2,
                                       const Context& ctx);

// all graph curves with s <= s_max in both orientations for a conjugate pair,
// each verified invariant before inclusion; empty when the maps are not
// conjugate
std::vector<GraphCurve> enumerate_periodic_curves(const RatMap& a1, const RatMap& a2,
                                                  int s_max, const Context& ctx);

// the defining exact identity of the orientation at exponent d, certifying
// (a1, a2)^d (C) = C
bool verify_invariant(const GraphCurve& c, const RatMap& a1, const RatMap& a2, int d,
                      const Context& ctx);

struct SemiconjugacyResult {
    bool confirms = false; // CONFIRMS_THEOREM_T4 vs COUNTEREXAMPLE_DUMP
    int l = 0;
    std::optional<Mobius> mu;
    std::string detail;
};

// given a^r o x = x o b, try to exhibit x = a^l o mu and b = mu^{-1} a^r mu
SemiconjugacyResult semiconjugacy_check(const RatMap& a, const RatMap& b, const RatMap& x,
                                        int r, const Context& ctx);

// falsification probe: search for an invariant graph y = phi(x) with
// deg phi <= max_deg by a multi-start Newton solve with exact verification;
// a null result is evidence, not proof
std::optional<RatMap> invariant_graph_probe(const RatMap& a1, const RatMap& a2, int max_deg,
                                            const Context& ctx);

} // namespace ratdyn

#endif
