#ifndef RATDYN_ORBIFOLD_HPP
#define RATDYN_ORBIFOLD_HPP

#include <utility>
#include <vector>

#include "ratdyn/certificate.hpp"
#include "ratdyn/ratmap.hpp"

namespace ratdyn {

// Ramification function on the sphere: nu >= 2 at the listed points, 1
// elsewhere. Points are pairwise distinct.
struct Orbifold {
    std::vector<std::pair<AlgebraicPoint, int>> singular;

    std::vector<int> signature() const; // descending
    bool empty() const { return singular.empty(); }
};

// 2 + sum (1/nu - 1), exact
mpq_class euler_characteristic(const Orbifold& o);

// the canonical pair: o2 from lcm of local degrees per critical value, o1 by
// pulling nu2 back through the local degrees; a is a covering o1 -> o2
std::pair<Orbifold, Orbifold> canonical_orbifolds(const RatMap& a, const Context& ctx);

// nu2(A(z)) = nu1(z) * deg_z A everywhere (checked on every fiber where it
// can fail, including over the critical values)
bool is_covering(const RatMap& a, const Orbifold& o1, const Orbifold& o2, const Context& ctx);

// nu2(A(z)) = nu1(z) * gcd(deg_z A, nu2(A(z))) everywhere
bool is_minimal_holomorphic(const RatMap& a, const Orbifold& o1, const Orbifold& o2,
                            const Context& ctx);

enum class LattesVerdict { LATTES, NOT_LATTES };

// For a simple cubic both canonical orbifolds have signature {2,2,2,2}; the
// map is Lattes exactly when their supports coincide.
LattesVerdict cubic_lattes_test(const RatMap& a, const Context& ctx);

// Sufficient exclusion of generalized Lattes maps: with T = a for deg >= 5
// and T = a^(o3) below, PASS certifies T(V(T)) cap V(T) = empty via the
// resultant of the critical-value data, hence a is not generalized Lattes.
Certificate generalized_lattes_genericity(const RatMap& a, const Context& ctx);

// local degree of the map at an arbitrary point of the sphere
int local_degree(const RatMap& a, const AlgebraicPoint& p, const Context& ctx);

// local multiplicities of the fiber over an arbitrary value, descending;
// infinity contributes its own entry when it lies in the fiber
std::vector<int> fiber_multiplicities(const RatMap& a, const AlgebraicPoint& v,
                                      const Context& ctx);

} // namespace ratdyn

#endif
