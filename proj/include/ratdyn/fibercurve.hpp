#ifndef RATDYN_FIBERCURVE_HPP
#define RATDYN_FIBERCURVE_HPP

#include <optional>
#include <string>

#include "ratdyn/ratmap.hpp"

namespace ratdyn {

struct irreducibility_unknown_error : error {
    irreducibility_unknown_error() : error("irreducibility of the curve is not certified") {}
};

// Bivariate polynomial over Q(i); entry k is the y-polynomial coefficient of
// x^k.
struct BiPoly {
    std::vector<Poly> cx;

    int xdegree() const;
    int ydegree() const;
    bool is_zero() const;
    GaussRat eval(const GaussRat& x, const GaussRat& y) const;
    std::string str() const;

    BiPoly operator-(const BiPoly& o) const;
    bool operator==(const BiPoly& o) const = default;
};

// A1(x) B2(y) - A2(x) B1(y)
BiPoly curve_polynomial(const RatMap& a, const RatMap& b);
// exact quotient by (x - y); throws when the division leaves a remainder
BiPoly divide_by_diagonal(const BiPoly& h);

enum class Irreducibility { IRREDUCIBLE_BY_CRITERION, REDUCIBLE_WITH_WITNESS, UNKNOWN };

struct FiberCurveAnalysis {
    BiPoly bipoly;
    std::pair<int, int> bidegree{0, 0};
    Irreducibility irreducibility = Irreducibility::UNKNOWN;
    std::string witness;               // component description, when reducible
    std::optional<mpq_class> genus;    // set when irreducibility is certified
};

// Criteria: |V(a) cap V(b)| <= 1 or coprime degrees certify irreducibility;
// a shared composition factor or the diagonal certifies reducibility.
FiberCurveAnalysis build_h(const RatMap& a, const RatMap& b, const Context& ctx);

// genus of h_{a,b} from the gcd formula over the joint critical-value set;
// requires certified irreducibility
mpq_class genus(const RatMap& a, const RatMap& b, const Context& ctx);

// (A1(x)A2(y) - A2(x)A1(y)) / (x - y), with the simple-map guarantee recorded
FiberCurveAnalysis build_h_diagonal_removed(const RatMap& a, const Context& ctx);

// R with b = a o R, found by certified branch tracking and exact
// verification; hit_cap reports a precision-capped search when non-null
std::optional<RatMap> left_factor_divide(const RatMap& a, const RatMap& b,
                                         const Context& ctx, bool* hit_cap = nullptr);

} // namespace ratdyn

#endif
