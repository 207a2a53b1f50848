#include "ratdyn/ball.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace ratdyn {

namespace {

constexpr mpfr_prec_t RAD_PREC = 64;

// one-ulp upper bound on the rounding error of the last RNDN operation on x
void rad_bump(mpfr_t rad, const mpfr_t x, int ternary) {
    if (ternary == 0) return;
    mpfr_t u;
    mpfr_init2(u, 8);
    if (mpfr_zero_p(x))
        mpfr_set_ui_2exp(u, 1, mpfr_get_emin(), MPFR_RNDU);
    else
        mpfr_set_ui_2exp(u, 1, mpfr_get_exp(x) - mpfr_get_prec(x), MPFR_RNDU);
    mpfr_add(rad, rad, u, MPFR_RNDU);
    mpfr_clear(u);
}

mpq_class mpfr_to_q(const mpfr_t x) {
    if (mpfr_zero_p(x)) return mpq_class(0);
    mpz_class m;
    mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), x);
    mpq_class q(m);
    if (e >= 0) {
        mpz_class s;
        mpz_ui_pow_ui(s.get_mpz_t(), 2, static_cast<unsigned long>(e));
        q *= s;
    } else {
        mpz_class s;
        mpz_ui_pow_ui(s.get_mpz_t(), 2, static_cast<unsigned long>(-e));
        q /= s;
    }
    return q;
}

void q_to_mpfr_up(mpfr_t x, const mpq_class& q) {
    mpfr_set_q(x, q.get_mpq_t(), MPFR_RNDU);
}

} // namespace

ComplexBall::ComplexBall(mpfr_prec_t prec) : prec_(prec) {
    mpfr_init2(re_, prec);
    mpfr_init2(im_, prec);
    mpfr_init2(rad_, RAD_PREC);
    mpfr_set_zero(re_, 1);
    mpfr_set_zero(im_, 1);
    mpfr_set_zero(rad_, 1);
}

ComplexBall::ComplexBall(const ComplexBall& o) : prec_(o.prec_) {
    mpfr_init2(re_, o.prec_);
    mpfr_init2(im_, o.prec_);
    mpfr_init2(rad_, RAD_PREC);
    mpfr_set(re_, o.re_, MPFR_RNDN);
    mpfr_set(im_, o.im_, MPFR_RNDN);
    mpfr_set(rad_, o.rad_, MPFR_RNDU);
}

ComplexBall::ComplexBall(ComplexBall&& o) noexcept : prec_(o.prec_) {
    re_[0] = o.re_[0];
    im_[0] = o.im_[0];
    rad_[0] = o.rad_[0];
    mpfr_init2(o.re_, 8);
    mpfr_init2(o.im_, 8);
    mpfr_init2(o.rad_, 8);
}

ComplexBall& ComplexBall::operator=(const ComplexBall& o) {
    if (this == &o) return *this;
    mpfr_set_prec(re_, o.prec_);
    mpfr_set_prec(im_, o.prec_);
    mpfr_set(re_, o.re_, MPFR_RNDN);
    mpfr_set(im_, o.im_, MPFR_RNDN);
    mpfr_set(rad_, o.rad_, MPFR_RNDU);
    prec_ = o.prec_;
    return *this;
}

ComplexBall& ComplexBall::operator=(ComplexBall&& o) noexcept {
    std::swap(re_[0], o.re_[0]);
    std::swap(im_[0], o.im_[0]);
    std::swap(rad_[0], o.rad_[0]);
    std::swap(prec_, o.prec_);
    return *this;
}

ComplexBall::~ComplexBall() {
    mpfr_clear(re_);
    mpfr_clear(im_);
    mpfr_clear(rad_);
}

ComplexBall ComplexBall::exact(const GaussRat& v, mpfr_prec_t prec) {
    ComplexBall b(prec);
    int t1 = mpfr_set_q(b.re_, v.re.get_mpq_t(), MPFR_RNDN);
    int t2 = mpfr_set_q(b.im_, v.im.get_mpq_t(), MPFR_RNDN);
    rad_bump(b.rad_, b.re_, t1);
    rad_bump(b.rad_, b.im_, t2);
    return b;
}

ComplexBall ComplexBall::from_q(const mpq_class& re, const mpq_class& im,
                                const mpq_class& rad, mpfr_prec_t prec) {
    ComplexBall b = exact(GaussRat(re, im), prec);
    if (sgn(rad) > 0) {
        mpfr_t r;
        mpfr_init2(r, RAD_PREC);
        q_to_mpfr_up(r, rad);
        mpfr_add(b.rad_, b.rad_, r, MPFR_RNDU);
        mpfr_clear(r);
    }
    return b;
}

ComplexBall ComplexBall::hull(const ComplexBall& a, const ComplexBall& b) {
    // exact rational construction, then embed
    GaussRat ca = a.center_q(), cb = b.center_q();
    mpq_class half(1, 2);
    GaussRat mid((ca.re + cb.re) * half, (ca.im + cb.im) * half);
    GaussRat d = ca - cb;
    // |d|/2 <= (|d.re| + |d.im|)/2
    mpq_class sep = (abs(d.re) + abs(d.im)) * half;
    mpq_class r = sep + std::max(a.radius_q(), b.radius_q());
    return from_q(mid.re, mid.im, r, std::max(a.prec_, b.prec_));
}

bool ComplexBall::exact_zero() const {
    return mpfr_zero_p(re_) && mpfr_zero_p(im_) && mpfr_zero_p(rad_);
}

GaussRat ComplexBall::center_q() const {
    return GaussRat(mpfr_to_q(re_), mpfr_to_q(im_));
}

mpq_class ComplexBall::radius_q() const {
    return mpfr_to_q(rad_);
}

mpq_class ComplexBall::abs_upper_q() const {
    return abs(mpfr_to_q(re_)) + abs(mpfr_to_q(im_)) + mpfr_to_q(rad_);
}

mpq_class ComplexBall::abs_lower_q() const {
    mpq_class lo = std::max(abs(mpfr_to_q(re_)), abs(mpfr_to_q(im_))) - mpfr_to_q(rad_);
    if (sgn(lo) < 0) lo = 0;
    return lo;
}

ComplexBall ComplexBall::operator-() const {
    ComplexBall b(*this);
    mpfr_neg(b.re_, b.re_, MPFR_RNDN);
    mpfr_neg(b.im_, b.im_, MPFR_RNDN);
    return b;
}

ComplexBall ComplexBall::conj() const {
    ComplexBall b(*this);
    mpfr_neg(b.im_, b.im_, MPFR_RNDN);
    return b;
}

ComplexBall ball_mul_i(const ComplexBall& a) {
    ComplexBall b(a);
    mpfr_swap(b.re_, b.im_);
    mpfr_neg(b.re_, b.re_, MPFR_RNDN);
    return b;
}

ComplexBall ComplexBall::operator+(const ComplexBall& o) const {
    ComplexBall b(std::max(prec_, o.prec_));
    int t1 = mpfr_add(b.re_, re_, o.re_, MPFR_RNDN);
    int t2 = mpfr_add(b.im_, im_, o.im_, MPFR_RNDN);
    mpfr_add(b.rad_, rad_, o.rad_, MPFR_RNDU);
    rad_bump(b.rad_, b.re_, t1);
    rad_bump(b.rad_, b.im_, t2);
    return b;
}

ComplexBall ComplexBall::operator-(const ComplexBall& o) const {
    ComplexBall b(std::max(prec_, o.prec_));
    int t1 = mpfr_sub(b.re_, re_, o.re_, MPFR_RNDN);
    int t2 = mpfr_sub(b.im_, im_, o.im_, MPFR_RNDN);
    mpfr_add(b.rad_, rad_, o.rad_, MPFR_RNDU);
    rad_bump(b.rad_, b.re_, t1);
    rad_bump(b.rad_, b.im_, t2);
    return b;
}

ComplexBall ComplexBall::operator*(const ComplexBall& o) const {
    ComplexBall b(std::max(prec_, o.prec_));
    int t1 = mpfr_fmms(b.re_, re_, o.re_, im_, o.im_, MPFR_RNDN);
    int t2 = mpfr_fmma(b.im_, re_, o.im_, im_, o.re_, MPFR_RNDN);

    // |a|*rb + |b|*ra + ra*rb with upper bounds |.| <= |re| + |im|
    mpfr_t ua, ub, acc, term;
    mpfr_init2(ua, RAD_PREC);
    mpfr_init2(ub, RAD_PREC);
    mpfr_init2(acc, RAD_PREC);
    mpfr_init2(term, RAD_PREC);

    mpfr_abs(ua, re_, MPFR_RNDU);
    mpfr_abs(term, im_, MPFR_RNDU);
    mpfr_add(ua, ua, term, MPFR_RNDU);
    mpfr_abs(ub, o.re_, MPFR_RNDU);
    mpfr_abs(term, o.im_, MPFR_RNDU);
    mpfr_add(ub, ub, term, MPFR_RNDU);

    mpfr_mul(acc, ua, o.rad_, MPFR_RNDU);
    mpfr_mul(term, ub, rad_, MPFR_RNDU);
    mpfr_add(acc, acc, term, MPFR_RNDU);
    mpfr_mul(term, rad_, o.rad_, MPFR_RNDU);
    mpfr_add(acc, acc, term, MPFR_RNDU);

    mpfr_set(b.rad_, acc, MPFR_RNDU);
    rad_bump(b.rad_, b.re_, t1);
    rad_bump(b.rad_, b.im_, t2);

    mpfr_clear(ua);
    mpfr_clear(ub);
    mpfr_clear(acc);
    mpfr_clear(term);
    return b;
}

ComplexBall ComplexBall::inv() const {
    // center is exact dyadic: invert it exactly in Q(i), then add the
    // propagated radius r/(L*(L-r)) with L a lower bound on |center|
    mpq_class cre = mpfr_to_q(re_), cim = mpfr_to_q(im_), r = mpfr_to_q(rad_);
    mpq_class L = std::max(abs(cre), abs(cim));
    mpq_class margin = L - r;
    if (sgn(L) <= 0 || sgn(margin) <= 0)
        throw std::domain_error("ComplexBall::inv: ball may contain zero");
    GaussRat w = GaussRat(cre, cim).inv();
    mpq_class prop = r / (L * margin);
    return from_q(w.re, w.im, prop, prec_);
}

ComplexBall ComplexBall::at_prec(mpfr_prec_t prec) const {
    ComplexBall b(prec);
    int t1 = mpfr_set(b.re_, re_, MPFR_RNDN);
    int t2 = mpfr_set(b.im_, im_, MPFR_RNDN);
    mpfr_set(b.rad_, rad_, MPFR_RNDU);
    rad_bump(b.rad_, b.re_, t1);
    rad_bump(b.rad_, b.im_, t2);
    return b;
}

ComplexBall ComplexBall::widened(const mpq_class& extra) const {
    ComplexBall b(*this);
    if (sgn(extra) > 0) {
        mpfr_t r;
        mpfr_init2(r, RAD_PREC);
        q_to_mpfr_up(r, extra);
        mpfr_add(b.rad_, b.rad_, r, MPFR_RNDU);
        mpfr_clear(r);
    }
    return b;
}

bool ComplexBall::certainly_nonzero() const {
    mpq_class lo = abs_lower_q();
    return sgn(lo) > 0;
}

bool ComplexBall::contains_zero_certainly() const {
    mpq_class cre = mpfr_to_q(re_), cim = mpfr_to_q(im_), r = mpfr_to_q(rad_);
    return cre * cre + cim * cim <= r * r;
}

bool ComplexBall::disjoint(const ComplexBall& o) const {
    GaussRat d = center_q() - o.center_q();
    mpq_class rr = radius_q() + o.radius_q();
    return d.norm() > rr * rr;
}

bool ComplexBall::contains(const ComplexBall& o) const {
    mpq_class ra = radius_q(), rb = o.radius_q();
    if (ra < rb) return false;
    GaussRat d = center_q() - o.center_q();
    mpq_class m = ra - rb;
    return d.norm() <= m * m;
}

bool ComplexBall::contains_inner(const ComplexBall& o) const {
    mpq_class ra = radius_q(), rb = o.radius_q();
    if (ra <= rb) return false;
    GaussRat d = center_q() - o.center_q();
    mpq_class m = ra - rb;
    return d.norm() < m * m;
}

ComplexBall ComplexBall::center_ball() const {
    ComplexBall b(*this);
    mpfr_set_zero(b.rad_, 1);
    return b;
}

std::string ComplexBall::str() const {
    std::ostringstream os;
    os << "(" << center_re_d();
    double i = center_im_d();
    if (i >= 0) os << "+" << i << "i";
    else os << i << "i";
    os << " +/- " << radius_d() << ")";
    return os.str();
}

ComplexBall eval_ball_poly(const std::vector<ComplexBall>& coeffs, const ComplexBall& x) {
    if (coeffs.empty()) return ComplexBall(x.prec());
    ComplexBall acc = coeffs.back();
    for (std::size_t i = coeffs.size(); i-- > 1;)
        acc = acc * x + coeffs[i - 1];
    return acc;
}

} // namespace ratdyn
