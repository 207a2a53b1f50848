#ifndef RATDYN_NUMERIC_HPP
#define RATDYN_NUMERIC_HPP

#include <optional>
#include <vector>

#include "ratdyn/ball.hpp"
#include "ratdyn/context.hpp"
#include "ratdyn/poly.hpp"

namespace ratdyn {

// Uncertified root approximations (Aberth-Ehrlich seeded in double precision,
// polished by high-precision Newton). f should be squarefree. The returned
// balls have zero radius; certification is a separate step.
std::vector<ComplexBall> approx_roots(const Poly& f, mpfr_prec_t prec);

// Interval-Newton test on the disk: if it succeeds, the disk contains exactly
// one root of the polynomial and the returned (smaller) disk contains it.
std::optional<ComplexBall> newton_certify(const std::vector<ComplexBall>& f,
                                          const std::vector<ComplexBall>& fp,
                                          const ComplexBall& disk);
std::optional<ComplexBall> newton_certify(const Poly& f, const ComplexBall& disk);

// Contract a certified isolating disk below target_radius, raising precision
// as needed; throws precision_cap_error at the cap.
ComplexBall newton_refine(const Poly& f, const ComplexBall& box,
                          const mpq_class& target_radius, const Context& ctx);

// One plain Newton polish step at the ball's precision (uncertified).
ComplexBall newton_polish(const Poly& f, const ComplexBall& x, int steps);

// Smallest-denominator rational in [lo, hi] by the continued-fraction walk.
mpq_class simplest_rational_in(const mpq_class& lo, const mpq_class& hi);

// Candidate exact value for the quantity enclosed by the ball; null when the
// ball is too wide to suggest anything stable.
std::optional<GaussRat> reconstruct_gaussrat(const ComplexBall& b);

// Approximate kernel direction of an underdetermined homogeneous system
// (rows x cols, rows < cols), by Gaussian elimination on the ball centers
// with deterministic pivoting. Radii are dropped: callers verify exactly.
std::vector<ComplexBall> nullspace_vector(std::vector<std::vector<ComplexBall>> rows,
                                          std::size_t cols);

} // namespace ratdyn

#endif
