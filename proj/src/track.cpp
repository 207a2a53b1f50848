#include "track.hpp"

#include <algorithm>

namespace ratdyn::track {

namespace {

std::vector<ComplexBall> family_coeffs(const Poly& P, const Poly& Q, const ComplexBall& w,
                                       mpfr_prec_t prec) {
    int top = std::max(P.degree(), Q.degree());
    std::vector<ComplexBall> c;
    c.reserve(static_cast<std::size_t>(top) + 1);
    for (int k = 0; k <= top; ++k) {
        ComplexBall pk = ComplexBall::exact(P.coeff(k), prec);
        ComplexBall qk = ComplexBall::exact(Q.coeff(k), prec);
        c.push_back(pk - w * qk);
    }
    return c;
}

std::vector<ComplexBall> derivative_coeffs(const std::vector<ComplexBall>& c) {
    std::vector<ComplexBall> d;
    if (c.size() <= 1) return d;
    d.reserve(c.size() - 1);
    for (std::size_t i = 1; i < c.size(); ++i) {
        GaussRat s(static_cast<long>(i));
        d.push_back(c[i] * ComplexBall::exact(s, c[i].prec()));
    }
    return d;
}

} // namespace

std::optional<std::vector<ComplexBall>> step(const Poly& P, const Poly& Q,
                                             const ComplexBall& whull, const GaussRat& w1,
                                             const std::vector<ComplexBall>& pts,
                                             mpfr_prec_t prec) {
    std::vector<ComplexBall> fam = family_coeffs(P, Q, whull, prec);
    std::vector<ComplexBall> dfam = derivative_coeffs(fam);

    // inflation bound: a quarter of the smallest pairwise distance
    mpq_class mind(-1);
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            mpq_class d2 = (pts[i].center_q() - pts[j].center_q()).norm();
            if (mind < 0 || d2 < mind) mind = d2;
        }
    mpq_class cap = 1;
    if (mind >= 0)
        while (cap * cap * 16 > mind) cap /= 2;

    Poly end_poly = P - Q * w1;
    std::vector<ComplexBall> end_coeffs = end_poly.ball_coeffs(prec);
    std::vector<ComplexBall> end_dcoeffs = end_poly.derivative().ball_coeffs(prec);

    std::vector<ComplexBall> out;
    out.reserve(pts.size());
    for (const auto& p : pts) {
        // ladder of inflations, from tight to the pairwise cap; the disk must
        // contain p's whole ball so the tracked root is the certified one
        mpq_class rad = cap;
        for (int k = 0; k < 6; ++k) rad /= 16;
        mpq_class floor_rad = p.radius_q() * 2;
        while (rad < floor_rad) rad *= 16;
        if (rad > cap && mind >= 0) return std::nullopt;
        std::optional<ComplexBall> tube;
        ComplexBall c = p.center_ball().at_prec(prec);
        while (rad <= cap) {
            tube = newton_certify(fam, dfam, c.widened(rad));
            if (tube) break;
            rad *= 16;
        }
        if (!tube) return std::nullopt;
        // tighten onto the endpoint inside the tube disk
        ComplexBall disk = c.widened(rad);
        ComplexBall x = disk.center_ball();
        for (int it = 0; it < 8; ++it) {
            ComplexBall fx = eval_ball_poly(end_coeffs, x.center_ball());
            ComplexBall dfx = eval_ball_poly(end_dcoeffs, x.center_ball());
            if (!dfx.certainly_nonzero()) break;
            x = (x - fx / dfx).center_ball();
        }
        std::optional<ComplexBall> tight;
        mpq_class r2 = rad;
        for (int k = 0; k < 10; ++k) r2 /= 16;
        while (r2 <= rad) {
            auto cert = newton_certify(end_coeffs, end_dcoeffs, x.widened(r2));
            if (cert && disk.contains(*cert)) {
                tight = cert;
                break;
            }
            r2 *= 16;
        }
        if (!tight) return std::nullopt;
        out.push_back(std::move(*tight));
    }
    // labels stay unambiguous only if the tubes stayed disjoint
    for (std::size_t i = 0; i < out.size(); ++i)
        for (std::size_t j = i + 1; j < out.size(); ++j)
            if (!out[i].disjoint(out[j])) return std::nullopt;
    return out;
}

namespace {

std::optional<std::vector<ComplexBall>> drive(const Poly& P, const Poly& Q,
                                              const GaussRat& w0, const GaussRat& w1,
                                              std::vector<ComplexBall> pts,
                                              mpfr_prec_t prec, int depth) {
    ComplexBall b0 = ComplexBall::exact(w0, prec);
    ComplexBall b1 = ComplexBall::exact(w1, prec);
    ComplexBall hull = ComplexBall::hull(b0, b1);
    auto stepped = step(P, Q, hull, w1, pts, prec);
    if (stepped) return stepped;
    if (depth <= 0) return std::nullopt;
    GaussRat mid = (w0 + w1) * GaussRat(mpq_class(1, 2));
    auto first = drive(P, Q, w0, mid, std::move(pts), prec, depth - 1);
    if (!first) return std::nullopt;
    return drive(P, Q, mid, w1, std::move(*first), prec, depth - 1);
}

} // namespace

std::optional<std::vector<ComplexBall>> polyline(const Poly& P, const Poly& Q,
                                                 const std::vector<GaussRat>& waypoints,
                                                 std::vector<ComplexBall> start,
                                                 mpfr_prec_t prec, int max_depth) {
    if (waypoints.size() < 2) return start;
    std::vector<ComplexBall> cur = std::move(start);
    for (std::size_t i = 0; i + 1 < waypoints.size(); ++i) {
        auto next = drive(P, Q, waypoints[i], waypoints[i + 1], std::move(cur), prec,
                          max_depth);
        if (!next) return std::nullopt;
        cur = std::move(*next);
    }
    return cur;
}

} // namespace ratdyn::track
