// Internal: certified continuation of the fiber of P(z) - w Q(z) = 0 as the
// base value w moves. Each step certifies uniqueness over a whole w-ball, so
// any path inside that ball transports the labels identically.
#ifndef RATDYN_SRC_TRACK_HPP
#define RATDYN_SRC_TRACK_HPP

#include <optional>
#include <vector>

#include "ratdyn/numeric.hpp"
#include "ratdyn/poly.hpp"

namespace ratdyn::track {

// Certify that every disk (inflated from pts) holds exactly one root of
// P - wQ for every w in whull, then tighten onto the exact endpoint w1.
// Fails (nullopt) when inflation cannot be certified; callers shorten the
// step.
std::optional<std::vector<ComplexBall>> step(const Poly& P, const Poly& Q,
                                             const ComplexBall& whull, const GaussRat& w1,
                                             const std::vector<ComplexBall>& pts,
                                             mpfr_prec_t prec);

// Drive along a polyline of exact base values with adaptive bisection.
std::optional<std::vector<ComplexBall>> polyline(const Poly& P, const Poly& Q,
                                                 const std::vector<GaussRat>& waypoints,
                                                 std::vector<ComplexBall> start,
                                                 mpfr_prec_t prec, int max_depth = 12);

} // namespace ratdyn::track

#endif
