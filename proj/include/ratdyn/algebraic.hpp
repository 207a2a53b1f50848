#ifndef RATDYN_ALGEBRAIC_HPP
#define RATDYN_ALGEBRAIC_HPP

#include <cstddef>
#include <vector>

#include "ratdyn/context.hpp"
#include "ratdyn/numeric.hpp"
#include "ratdyn/poly.hpp"

namespace ratdyn {

enum class Verdict { YES, NO, INDETERMINATE };

// A point of the projective line: either the marker at infinity, or a root of
// an exact squarefree polynomial isolated by a complex ball. Rational points
// carry a degree-one factor and a zero-radius box.
class AlgebraicPoint {
public:
    static AlgebraicPoint infinity();
    static AlgebraicPoint rational(const GaussRat& v);
    // caller certifies that box isolates exactly one root of minimal_factor
    AlgebraicPoint(Poly minimal_factor, ComplexBall box);

    bool is_infinity() const { return infinite_; }
    bool is_rational() const { return !infinite_ && factor_.degree() == 1; }
    GaussRat rational_value() const;

    const Poly& minimal_factor() const;
    const ComplexBall& box() const;

    std::string str() const;

private:
    AlgebraicPoint() = default;
    bool infinite_ = false;
    Poly factor_;
    ComplexBall box_;
};

AlgebraicPoint ball_refine(const AlgebraicPoint& p, const mpq_class& target_radius,
                           const Context& ctx);

// YES / NO are definite; INDETERMINATE only at the precision cap.
Verdict certainly_distinct(const AlgebraicPoint& p, const AlgebraicPoint& q,
                           const Context& ctx);

inline bool same_point(const AlgebraicPoint& p, const AlgebraicPoint& q, const Context& ctx) {
    return certainly_distinct(p, q, ctx) == Verdict::NO;
}

// one point per distinct root, pairwise disjoint boxes; rational roots are
// split off exactly where the numeric bridge finds them
std::vector<AlgebraicPoint> isolate_roots(const Poly& f, const Context& ctx);

// definite test: is p's root a root of g? (throws precision_cap_error only
// when the refinement loop cannot separate at the cap)
bool vanishes_at(const Poly& g, const AlgebraicPoint& p, const Context& ctx);

// refine until all boxes are pairwise disjoint (the points must be
// mathematically distinct)
void separate_points(std::vector<AlgebraicPoint>& pts, const Context& ctx);

// Dynamic-evaluation support: given proper factors of p's minimal factor,
// find the one whose root p is and re-anchor p on it.
std::pair<std::size_t, AlgebraicPoint> select_factor(const AlgebraicPoint& p,
                                                     const std::vector<Poly>& factors,
                                                     const Context& ctx);

// deterministic ordering for reports: finite points by center, infinity last
bool canonical_less(const AlgebraicPoint& p, const AlgebraicPoint& q);

} // namespace ratdyn

#endif
