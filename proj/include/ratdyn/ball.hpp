#ifndef RATDYN_BALL_HPP
#define RATDYN_BALL_HPP

#include <mpfr.h>
#include <vector>
#include <string>

#include "ratdyn/gaussrat.hpp"

namespace ratdyn {

// Complex disk: MPFR center (exact dyadic components) plus an upward-rounded
// radius. Every operation returns a ball containing the exact image of the
// exact points of its input balls.
class ComplexBall {
public:
    explicit ComplexBall(mpfr_prec_t prec = 128);
    ComplexBall(const ComplexBall&);
    ComplexBall(ComplexBall&&) noexcept;
    ComplexBall& operator=(const ComplexBall&);
    ComplexBall& operator=(ComplexBall&&) noexcept;
    ~ComplexBall();

    static ComplexBall exact(const GaussRat& v, mpfr_prec_t prec);
    // center from rationals, radius folded together with the embedding error
    static ComplexBall from_q(const mpq_class& re, const mpq_class& im,
                              const mpq_class& rad, mpfr_prec_t prec);
    // disk hull of two balls
    static ComplexBall hull(const ComplexBall& a, const ComplexBall& b);

    mpfr_prec_t prec() const { return prec_; }
    bool exact_zero() const;

    // exact dyadic center and exact radius value
    GaussRat center_q() const;
    mpq_class radius_q() const;
    mpq_class abs_upper_q() const;  // >= |z| for all z in the ball
    mpq_class abs_lower_q() const;  // <= |z| for all z in the ball (clamped at 0)

    ComplexBall operator-() const;
    ComplexBall conj() const;
    ComplexBall operator+(const ComplexBall&) const;
    ComplexBall operator-(const ComplexBall&) const;
    ComplexBall operator*(const ComplexBall&) const;
    ComplexBall inv() const;    // requires certainly_nonzero()
    ComplexBall operator/(const ComplexBall& o) const { return *this * o.inv(); }

    ComplexBall at_prec(mpfr_prec_t prec) const;       // re-round center, grow radius
    ComplexBall widened(const mpq_class& extra) const; // radius += extra
    ComplexBall center_ball() const;                   // same center, radius 0

    bool certainly_nonzero() const;
    bool contains_zero_certainly() const;
    bool disjoint(const ComplexBall& o) const;
    // all of o inside *this
    bool contains(const ComplexBall& o) const;
    // o inside the open interior of *this (what interval Newton needs)
    bool contains_inner(const ComplexBall& o) const;
    bool overlaps(const ComplexBall& o) const { return !disjoint(o); }

    double center_re_d() const { return mpfr_get_d(re_, MPFR_RNDN); }
    double center_im_d() const { return mpfr_get_d(im_, MPFR_RNDN); }
    double radius_d() const { return mpfr_get_d(rad_, MPFR_RNDU); }

    std::string str() const;

private:
    mpfr_t re_, im_, rad_;
    mpfr_prec_t prec_;

    friend ComplexBall ball_mul_i(const ComplexBall&);
};

// Horner evaluation of a ball-coefficient polynomial (lowest degree first).
ComplexBall eval_ball_poly(const std::vector<ComplexBall>& coeffs, const ComplexBall& x);

} // namespace ratdyn

#endif
