#ifndef RATDYN_SYMMETRY_HPP
#define RATDYN_SYMMETRY_HPP

#include <optional>

#include "ratdyn/certificate.hpp"
#include "ratdyn/ratmap.hpp"

namespace ratdyn {

struct SymmetryGroup {
    std::vector<Mobius> elements; // always contains the identity
    bool complete = false;        // every candidate was decided
};

// The closed-form generator of Sigma(A) for a quadratic map: mu with
// A o mu = A and mu o mu = id, straight from the six coefficients.
Mobius sigma_quadratic(const RatMap& a);

// Disjointness certificate mu_A(V(A)) cap V(A) = empty, decided exactly by
// the resultant of the critical-value polynomial against the mu_A-image
// polynomial in a chart where all four points are finite.
Certificate emp_certificate(const RatMap& a, const Context& ctx);

// Independent enumeration of all Mobius mu with A^n o mu = A^n, by fiber
// correspondences over a generic base value. complete is true only when every
// image triple was either excluded by a certified difference or confirmed by
// an exact identity.
SymmetryGroup sigma_infinity_oracle(const RatMap& a, int n, const Context& ctx);

// nu with a2 = nu o a1 when the quadratics share their symmetry involution
std::optional<Mobius> same_right_factor(const RatMap& a1, const RatMap& a2,
                                        const Context& ctx);

// Is A the only degree-m map with B^n = A^n? Decided by exhausting the
// candidates B = nu o A against the fixed points of A^n. Throws
// precondition_error when the genericity hypotheses fail to certify.
bool iterate_root_unique(const RatMap& a, int n, const Context& ctx);

} // namespace ratdyn

#endif
