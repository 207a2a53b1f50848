#ifndef RATDYN_RATMAP_HPP
#define RATDYN_RATMAP_HPP

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "ratdyn/algebraic.hpp"
#include "ratdyn/poly.hpp"

namespace ratdyn {

// Rational self-map of the projective line as a coprime pair of polynomials
// with a canonical scaling: the first nonzero coefficient of the denominator
// (of the numerator when the denominator is constant) equals one.
class RatMap {
public:
    // normalizes: removes the gcd, scales canonically; throws
    // degenerate_map_error when the quotient is constant or the denominator
    // vanishes identically
    RatMap(Poly num, Poly den);
    // composition of normalized maps is automatically coprime; this entry
    // point skips the gcd pass for such callers
    static RatMap from_coprime(Poly num, Poly den);

    int degree() const { return m_; }
    const Poly& num() const { return p_; }
    const Poly& den() const { return q_; }
    bool is_mobius() const { return m_ == 1; }
    bool is_polynomial() const { return q_.is_constant(); }

    // value at a finite rational point; nullopt encodes infinity
    std::optional<GaussRat> eval(const GaussRat& x) const;
    // image of the point at infinity
    std::optional<GaussRat> eval_infinity() const;
    // certified evaluation; requires the denominator to be certifiably
    // nonzero on the ball
    ComplexBall eval_ball(const ComplexBall& x) const;

    bool operator==(const RatMap& o) const { return p_ == o.p_ && q_ == o.q_; }

    std::string str() const;

private:
    RatMap() : m_(0) {}
    Poly p_, q_;
    int m_;
};

// Degree-one rational map with matrix helpers.
class Mobius {
public:
    explicit Mobius(RatMap m);
    Mobius(const GaussRat& a, const GaussRat& b, const GaussRat& c, const GaussRat& d);
    static Mobius identity();

    const RatMap& map() const { return m_; }
    bool is_identity() const;
    Mobius inverse() const;
    // matrix entries for (a z + b) / (c z + d)
    GaussRat a() const, b() const, c() const, d() const;

    std::optional<GaussRat> eval(const GaussRat& x) const { return m_.eval(x); }
    bool operator==(const Mobius& o) const { return m_ == o.m_; }
    std::string str() const { return m_.str(); }

private:
    RatMap m_;
};

RatMap compose_maps(const RatMap& f, const RatMap& g);
RatMap compose(const Mobius& f, const RatMap& g);
RatMap compose(const RatMap& f, const Mobius& g);
Mobius compose(const Mobius& f, const Mobius& g);
RatMap conjugate(const RatMap& a, const Mobius& mu); // mu o a o mu^{-1}
RatMap iterate(const RatMap& a, int n, const Context& ctx);

struct ProjBall {
    bool infinite = false;
    ComplexBall ball;
};

// exact Mobius through three pairwise-distinct point correspondences
// (projective: nullopt values denote infinity); degenerate data gives nullopt
struct ProjQ {
    std::optional<GaussRat> v; // nullopt = infinity
    static ProjQ inf() { return {std::nullopt}; }
    static ProjQ at(const GaussRat& x) { return {x}; }
};
std::optional<Mobius> mobius_from_three(const ProjQ src[3], const ProjQ dst[3]);

// Ball enclosure of the Mobius matrix through three correspondences, via the
// signed maximal minors of the 3x4 interpolation system. Projective points
// use the ProjBall infinity marker. Null when no entry is certainly nonzero,
// i.e. the data does not pin the matrix down at this precision.
std::optional<std::array<ComplexBall, 4>> mobius_ball_from_three(const ProjBall src[3],
                                                                 const ProjBall dst[3]);

// candidate evaluation of a ball Mobius matrix at a ball point
std::optional<ComplexBall> mobius_ball_eval(const std::array<ComplexBall, 4>& m,
                                            const ComplexBall& x);

// W = P'Q - PQ' (eq. of the Wronskian); roots are the finite critical points
Poly wronskian(const RatMap& a);
// the degenerate locus: deg W < 2m-2, i.e. infinity is a critical point
bool in_wronskian_degenerate_locus(const RatMap& a);
// R(t) = Res_{2m-2, m, z}(W(z), P(z) - Q(z) t); throws
// degenerate_at_infinity_error on the locus above
Poly critical_value_poly(const RatMap& a);

struct PortraitEntry {
    AlgebraicPoint value;
    std::vector<int> collection; // descending local multiplicities, summing to deg
};

struct Portrait {
    int degree = 0;
    std::vector<PortraitEntry> points; // critical values only
};

Portrait portrait(const RatMap& a, const Context& ctx);
bool is_simple(const RatMap& a, const Context& ctx);

// image of an algebraic point under the map, computed exactly
AlgebraicPoint image_point(const RatMap& a, const AlgebraicPoint& p, const Context& ctx);

// critical values as points (the portrait's support)
std::vector<AlgebraicPoint> critical_values(const RatMap& a, const Context& ctx);

// the full fiber over an exact non-critical value (the ball's center);
// throws near_critical_error if the center is a critical value or isolation
// fails at the cap
std::vector<ProjBall> fiber(const RatMap& a, const ComplexBall& w, mpfr_prec_t precision);

// deterministic pre-composition making the Wronskian non-degenerate:
// returns nu with (a o nu) off the degenerate locus and V(a o nu) = V(a)
Mobius off_locus_precomposition(const RatMap& a);

// local multiplicities of the fiber over infinity, descending
std::vector<int> collection_over_infinity(const RatMap& a);

// does the fiber over infinity have fewer than deg(a) points?
bool infinity_is_critical_value(const RatMap& a);

// deterministic conjugation (sigma, returning sigma o a o sigma^{-1}) into a
// chart where the Wronskian has full degree and infinity is not a critical
// value; sigma is the identity when a is already clean
std::pair<RatMap, Mobius> finite_chart(const RatMap& a);

} // namespace ratdyn

#endif
