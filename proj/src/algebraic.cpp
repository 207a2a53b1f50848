#include "ratdyn/algebraic.hpp"

#include <algorithm>

namespace ratdyn {

AlgebraicPoint AlgebraicPoint::infinity() {
    AlgebraicPoint p;
    p.infinite_ = true;
    return p;
}

AlgebraicPoint AlgebraicPoint::rational(const GaussRat& v) {
    AlgebraicPoint p;
    p.factor_ = Poly(std::vector<GaussRat>{-v, GaussRat(1)});
    // dyadic values embed with radius zero, others with one-ulp slack
    p.box_ = ComplexBall::exact(v, 128);
    return p;
}

AlgebraicPoint::AlgebraicPoint(Poly minimal_factor, ComplexBall box)
    : factor_(std::move(minimal_factor)), box_(std::move(box)) {}

GaussRat AlgebraicPoint::rational_value() const {
    if (!is_rational()) throw error("rational_value on a non-rational point");
    return -(factor_.coeff(0) / factor_.coeff(1));
}

const Poly& AlgebraicPoint::minimal_factor() const {
    if (infinite_) throw finite_required_error();
    return factor_;
}

const ComplexBall& AlgebraicPoint::box() const {
    if (infinite_) throw finite_required_error();
    return box_;
}

std::string AlgebraicPoint::str() const {
    if (infinite_) return "inf";
    if (is_rational()) return rational_value().str();
    return "root of " + factor_.str("t") + " near " + box_.str();
}

AlgebraicPoint ball_refine(const AlgebraicPoint& p, const mpq_class& target_radius,
                           const Context& ctx) {
    if (p.is_infinity()) throw finite_required_error();
    if (p.box().radius_q() <= target_radius) return p;
    return AlgebraicPoint(p.minimal_factor(),
                          newton_refine(p.minimal_factor(), p.box(), target_radius, ctx));
}

namespace {

enum class Membership { COMMON, NOT_COMMON, UNKNOWN };

// does the isolated root of p lie among the roots of g (g | p.factor,
// cofactor = p.factor / g)
Membership g_membership(const AlgebraicPoint& p, const Poly& g, const Poly& cofactor) {
    if (g.eval_ball(p.box()).certainly_nonzero()) return Membership::NOT_COMMON;
    if (cofactor.is_constant() || cofactor.eval_ball(p.box()).certainly_nonzero())
        return Membership::COMMON;
    return Membership::UNKNOWN;
}

} // namespace

Verdict certainly_distinct(const AlgebraicPoint& p, const AlgebraicPoint& q,
                           const Context& ctx) {
    if (p.is_infinity() && q.is_infinity()) return Verdict::NO;
    if (p.is_infinity() != q.is_infinity()) return Verdict::YES;
    if (p.is_rational() && q.is_rational())
        return p.rational_value() == q.rational_value() ? Verdict::NO : Verdict::YES;

    Poly g = gcd(p.minimal_factor(), q.minimal_factor());
    if (g.degree() == 0) return Verdict::YES;
    Poly hp = divexact(p.minimal_factor(), g);
    Poly hq = divexact(q.minimal_factor(), g);

    AlgebraicPoint a = p, b = q;
    mpq_class target = std::max(a.box().radius_q(), b.box().radius_q());
    if (sgn(target) == 0) target = mpq_class(1, 1024);
    for (int round = 0; round < 64; ++round) {
        if (a.box().disjoint(b.box())) return Verdict::YES;
        Membership ma = g_membership(a, g, hp);
        Membership mb = g_membership(b, g, hq);
        if (ma == Membership::NOT_COMMON || mb == Membership::NOT_COMMON)
            return Verdict::YES;
        if (ma == Membership::COMMON && mb == Membership::COMMON) {
            ComplexBall hull = ComplexBall::hull(a.box(), b.box());
            if (newton_certify(g, hull.widened(hull.radius_q() + mpq_class(1, 1 << 16))))
                return Verdict::NO;
        }
        target /= 16;
        try {
            a = ball_refine(a, target, ctx);
            b = ball_refine(b, target, ctx);
        } catch (const precision_cap_error&) {
            return Verdict::INDETERMINATE;
        }
    }
    return Verdict::INDETERMINATE;
}

namespace {

std::vector<AlgebraicPoint> isolate_squarefree(const Poly& h0, const Context& ctx) {
    std::vector<AlgebraicPoint> out;
    Poly h = h0.monic();

    // split off exact Q(i) roots found through the numeric bridge
    if (h.degree() >= 1) {
        std::vector<ComplexBall> approx = approx_roots(h, 192);
        for (const auto& a : approx) {
            if (h.degree() == 0) break;
            auto cand = reconstruct_gaussrat(
                a.widened(mpq_class(mpz_class(1), mpz_class(1) << 62)));
            if (!cand) continue;
            if (!h.eval(*cand).is_zero()) continue;
            Poly lin(std::vector<GaussRat>{-*cand, GaussRat(1)});
            h = divexact(h, lin);
            out.push_back(AlgebraicPoint::rational(*cand));
        }
    }
    int d = h.degree();
    if (d == 0) return out;

    for (mpfr_prec_t prec = std::max<mpfr_prec_t>(ctx.precision, 64);;
         prec = std::min(prec * 2, ctx.precision_cap)) {
        std::vector<ComplexBall> approx = approx_roots(h, prec);
        bool ok = static_cast<int>(approx.size()) == d;
        std::vector<ComplexBall> certified;
        if (ok) {
            std::sort(approx.begin(), approx.end(),
                      [](const ComplexBall& x, const ComplexBall& y) {
                          GaussRat cx = x.center_q(), cy = y.center_q();
                          if (cx.re != cy.re) return cx.re < cy.re;
                          return cx.im < cy.im;
                      });
            for (int i = 0; i < d && ok; ++i) {
                // keep clear of the other approximations and the exact roots
                mpq_class sep(-1);
                GaussRat ci = approx[static_cast<std::size_t>(i)].center_q();
                for (int j = 0; j < d; ++j) {
                    if (j == i) continue;
                    mpq_class n2 = (ci - approx[static_cast<std::size_t>(j)].center_q()).norm();
                    if (sep < 0 || n2 < sep) sep = n2;
                }
                for (const auto& rp : out) {
                    mpq_class n2 = (ci - rp.rational_value()).norm();
                    if (sep < 0 || n2 < sep) sep = n2;
                }
                mpq_class maxrad;
                if (sep < 0) maxrad = mpq_class(1, 4);
                else {
                    // dyadic upper bound for sqrt(sep)/8
                    maxrad = 1;
                    while (maxrad * maxrad * 64 > sep) maxrad /= 2;
                    if (sgn(maxrad) == 0) { ok = false; break; }
                }
                // small disks certify most easily; grow only as needed
                mpq_class rad = maxrad;
                for (int k = 0; k < 9; ++k) rad /= 16;
                bool done = false;
                while (rad <= maxrad) {
                    auto cert =
                        newton_certify(h, approx[static_cast<std::size_t>(i)].widened(rad));
                    if (cert) {
                        certified.push_back(*cert);
                        done = true;
                        break;
                    }
                    rad *= 16;
                }
                if (!done) { ok = false; break; }
            }
        }
        if (ok) {
            for (int i = 0; i < d && ok; ++i)
                for (int j = i + 1; j < d; ++j)
                    if (!certified[static_cast<std::size_t>(i)].disjoint(
                            certified[static_cast<std::size_t>(j)]))
                        ok = false;
        }
        if (ok) {
            for (auto& c : certified) out.emplace_back(h, std::move(c));
            return out;
        }
        if (prec >= ctx.precision_cap) throw precision_cap_error("root isolation at cap");
    }
}

} // namespace

std::vector<AlgebraicPoint> isolate_roots(const Poly& f, const Context& ctx) {
    if (f.is_zero()) throw precondition_error("isolate_roots: zero polynomial");
    if (f.degree() == 0) return {};
    std::vector<AlgebraicPoint> pts = isolate_squarefree(squarefree_part(f), ctx);
    std::sort(pts.begin(), pts.end(), canonical_less);
    return pts;
}

bool vanishes_at(const Poly& g, const AlgebraicPoint& p, const Context& ctx) {
    if (p.is_infinity()) throw finite_required_error();
    if (g.is_zero()) return true;
    if (g.is_constant()) return false;
    if (p.is_rational()) return g.eval(p.rational_value()).is_zero();
    Poly common = gcd(p.minimal_factor(), g);
    if (common.degree() == 0) return false;
    Poly cof = divexact(p.minimal_factor().monic(), common);
    AlgebraicPoint cur = p;
    mpq_class target = cur.box().radius_q();
    for (int round = 0; round < 64; ++round) {
        if (common.eval_ball(cur.box()).certainly_nonzero()) return false;
        if (cof.is_constant() || cof.eval_ball(cur.box()).certainly_nonzero()) return true;
        target /= 16;
        cur = ball_refine(cur, target, ctx);
    }
    throw precision_cap_error("vanishes_at undecided");
}

void separate_points(std::vector<AlgebraicPoint>& pts, const Context& ctx) {
    for (int round = 0; round < 64; ++round) {
        bool clash = false;
        for (std::size_t i = 0; i < pts.size() && !clash; ++i) {
            if (pts[i].is_infinity()) continue;
            for (std::size_t j = i + 1; j < pts.size() && !clash; ++j) {
                if (pts[j].is_infinity()) continue;
                if (!pts[i].box().disjoint(pts[j].box())) {
                    clash = true;
                    mpq_class t =
                        std::max(pts[i].box().radius_q(), pts[j].box().radius_q()) / 64;
                    if (sgn(t) == 0) t = mpq_class(1, 1 << 20);
                    pts[i] = ball_refine(pts[i], t, ctx);
                    pts[j] = ball_refine(pts[j], t, ctx);
                }
            }
        }
        if (!clash) return;
    }
    throw precision_cap_error("separate_points did not separate");
}

std::pair<std::size_t, AlgebraicPoint> select_factor(const AlgebraicPoint& p,
                                                     const std::vector<Poly>& factors,
                                                     const Context& ctx) {
    if (p.is_rational()) {
        for (std::size_t i = 0; i < factors.size(); ++i)
            if (factors[i].eval(p.rational_value()).is_zero())
                return {i, AlgebraicPoint::rational(p.rational_value())};
        throw error("select_factor: no factor vanishes at the point");
    }
    AlgebraicPoint cur = p;
    mpq_class target = cur.box().radius_q();
    for (int round = 0; round < 64; ++round) {
        std::vector<std::size_t> alive;
        for (std::size_t i = 0; i < factors.size(); ++i)
            if (!factors[i].eval_ball(cur.box()).certainly_nonzero()) alive.push_back(i);
        if (alive.size() == 1)
            return {alive[0], AlgebraicPoint(factors[alive[0]].monic(), cur.box())};
        if (alive.empty()) throw error("select_factor: no factor vanishes at the point");
        target /= 16;
        cur = ball_refine(cur, target, ctx);
    }
    throw precision_cap_error("select_factor did not separate");
}

bool canonical_less(const AlgebraicPoint& p, const AlgebraicPoint& q) {
    if (p.is_infinity() || q.is_infinity()) return !p.is_infinity() && q.is_infinity();
    GaussRat cp = p.box().center_q(), cq = q.box().center_q();
    if (cp.re != cq.re) return cp.re < cq.re;
    return cp.im < cq.im;
}

} // namespace ratdyn
