#ifndef RATDYN_MODRING_HPP
#define RATDYN_MODRING_HPP

#include <vector>

#include "ratdyn/poly.hpp"

namespace ratdyn::modring {

// Dynamic evaluation: arithmetic in Q(i)[t]/(rho) proceeds as if rho were
// irreducible; inverting a zero divisor raises split_request instead, and the
// caller restarts on the discovered factors.
struct split_request {
    Poly factor; // proper monic divisor of the modulus
};

Poly reduce(const Poly& a, const Poly& rho);
Poly mul_mod(const Poly& a, const Poly& b, const Poly& rho);
Poly inv_mod(const Poly& a, const Poly& rho); // throws split_request

// Multiplicity structure of F(z) = P(z) - t*Q(z) over any root of rho, where
// rho is monic and squarefree: finite local multiplicities plus the local
// multiplicity at infinity (0 when infinity is not in the fiber). The answer
// is uniform over the roots of rho or a split_request is thrown.
struct FiberShape {
    std::vector<int> finite_mults; // one entry per preimage point, descending
    int infinity_mult = 0;
};

FiberShape fiber_shape(const Poly& P, const Poly& Q, int degree, const Poly& rho);

// The j-level locus polynomials: for each multiplicity j present in the
// fibers over the roots of rho, a squarefree E_j over Q(i) whose roots are
// exactly the j-fold preimage points over all roots of rho. Only finite
// preimages appear; use fiber_shape for the infinity book-keeping.
struct LevelPolys {
    std::vector<std::pair<int, Poly>> levels;
};

LevelPolys fiber_level_polys(const Poly& P, const Poly& Q, int degree, const Poly& rho);

} // namespace ratdyn::modring

#endif
