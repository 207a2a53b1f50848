#include "ratdyn/ratmap.hpp"

#include <algorithm>
#include <array>
#include <deque>

#include "ratdyn/modring.hpp"

namespace ratdyn {

namespace {

// canonical scaling shared by both constructors
void canonicalize_pair(Poly& p, Poly& q) {
    const Poly& anchor = q.is_constant() ? p : q;
    GaussRat pivot;
    for (int k = 0; k <= anchor.degree(); ++k)
        if (!anchor.coeff(k).is_zero()) {
            pivot = anchor.coeff(k);
            break;
        }
    GaussRat s = pivot.inv();
    p = p * s;
    q = q * s;
}

} // namespace

RatMap::RatMap(Poly num, Poly den) : p_(std::move(num)), q_(std::move(den)) {
    if (q_.is_zero()) throw degenerate_map_error("zero denominator");
    Poly g = gcd(p_, q_);
    if (g.degree() > 0) {
        p_ = divexact(p_, g);
        q_ = divexact(q_, g);
    }
    m_ = std::max(p_.degree(), q_.degree());
    if (m_ < 1) throw degenerate_map_error("map is constant");
    canonicalize_pair(p_, q_);
}

RatMap RatMap::from_coprime(Poly num, Poly den) {
    RatMap r;
    r.p_ = std::move(num);
    r.q_ = std::move(den);
    if (r.q_.is_zero()) throw degenerate_map_error("zero denominator");
    r.m_ = std::max(r.p_.degree(), r.q_.degree());
    if (r.m_ < 1) throw degenerate_map_error("map is constant");
    canonicalize_pair(r.p_, r.q_);
    return r;
}

std::optional<GaussRat> RatMap::eval(const GaussRat& x) const {
    GaussRat d = q_.eval(x);
    if (d.is_zero()) return std::nullopt;
    return p_.eval(x) / d;
}

std::optional<GaussRat> RatMap::eval_infinity() const {
    int dp = p_.degree(), dq = q_.degree();
    if (dp > dq) return std::nullopt;
    if (dp < dq) return GaussRat(0);
    return p_.lc() / q_.lc();
}

ComplexBall RatMap::eval_ball(const ComplexBall& x) const {
    ComplexBall d = q_.eval_ball(x);
    if (!d.certainly_nonzero()) throw error("ball evaluation near a pole");
    return p_.eval_ball(x) / d;
}

namespace {

bool single_factor_text(const std::string& s) {
    if (s == "i" || s == "z") return true;
    if (s.rfind("z^", 0) == 0) return s.find_first_not_of("0123456789", 2) == std::string::npos;
    return !s.empty() && s.find_first_not_of("0123456789") == std::string::npos;
}

bool has_top_level_sum(const std::string& s) {
    int depth = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '(') ++depth;
        else if (s[i] == ')') --depth;
        else if (depth == 0 && i > 0 && (s[i] == '+' || s[i] == '-')) return true;
    }
    return false;
}

} // namespace

std::string RatMap::str() const {
    std::string ns = p_.str();
    if (q_ == Poly::one()) return ns;
    if (has_top_level_sum(ns)) ns = "(" + ns + ")";
    std::string ds = q_.str();
    if (!single_factor_text(ds)) ds = "(" + ds + ")";
    return ns + "/" + ds;
}

Mobius::Mobius(RatMap m) : m_(std::move(m)) {
    if (m_.degree() != 1) throw precondition_error("Mobius requires degree one");
}

Mobius::Mobius(const GaussRat& a, const GaussRat& b, const GaussRat& c, const GaussRat& d)
    : m_(Poly(std::vector<GaussRat>{b, a}), Poly(std::vector<GaussRat>{d, c})) {
    if (m_.degree() != 1) throw precondition_error("Mobius matrix is singular");
}

Mobius Mobius::identity() { return Mobius(GaussRat(1), GaussRat(0), GaussRat(0), GaussRat(1)); }

bool Mobius::is_identity() const {
    return m_.num() == Poly::z() && m_.den() == Poly::one();
}

GaussRat Mobius::a() const { return m_.num().coeff(1); }
GaussRat Mobius::b() const { return m_.num().coeff(0); }
GaussRat Mobius::c() const { return m_.den().coeff(1); }
GaussRat Mobius::d() const { return m_.den().coeff(0); }

Mobius Mobius::inverse() const {
    return Mobius(d(), -b(), -c(), a());
}

namespace {

RatMap compose_impl(const Poly& p, const Poly& q, int m, const Poly& r, const Poly& s) {
    // N = sum p_k r^k s^(m-k), D likewise; coprimality is inherited from the
    // normalized inputs, so the gcd pass is skipped
    std::vector<Poly> spow(static_cast<std::size_t>(m) + 1);
    spow[0] = Poly::one();
    for (int k = 1; k <= m; ++k)
        spow[static_cast<std::size_t>(k)] = spow[static_cast<std::size_t>(k - 1)] * s;
    Poly n, d, rpow = Poly::one();
    for (int k = 0; k <= m; ++k) {
        const Poly& sp = spow[static_cast<std::size_t>(m - k)];
        if (!p.coeff(k).is_zero()) n = n + rpow * sp * p.coeff(k);
        if (!q.coeff(k).is_zero()) d = d + rpow * sp * q.coeff(k);
        if (k < m) rpow = rpow * r;
    }
    return RatMap::from_coprime(std::move(n), std::move(d));
}

} // namespace

RatMap compose_maps(const RatMap& f, const RatMap& g) {
    RatMap out = compose_impl(f.num(), f.den(), f.degree(), g.num(), g.den());
    if (out.degree() != f.degree() * g.degree())
        throw error("composition degree dropped; inputs were not normalized");
    return out;
}

RatMap compose(const Mobius& f, const RatMap& g) { return compose_maps(f.map(), g); }
RatMap compose(const RatMap& f, const Mobius& g) { return compose_maps(f, g.map()); }
Mobius compose(const Mobius& f, const Mobius& g) { return Mobius(compose_maps(f.map(), g.map())); }

RatMap conjugate(const RatMap& a, const Mobius& mu) {
    return compose(mu, compose(a, mu.inverse()));
}

RatMap iterate(const RatMap& a, int n, const Context& ctx) {
    if (n < 1) throw precondition_error("iterate requires n >= 1");
    double degs = 1;
    for (int i = 0; i < n; ++i) {
        degs *= a.degree();
        if (degs > ctx.degree_cap) throw overflow_guard_error();
    }
    RatMap acc = a;
    for (int i = 1; i < n; ++i) acc = compose_maps(a, acc);
    return acc;
}

std::optional<Mobius> mobius_from_three(const ProjQ src[3], const ProjQ dst[3]) {
    struct Hom {
        GaussRat x, y;
    };
    auto hom = [](const ProjQ& p) -> Hom {
        if (!p.v) return {GaussRat(1), GaussRat(0)};
        return {*p.v, GaussRat(1)};
    };
    // matrix sending (0:1),(1:1),(1:0) to p1,p2,p3
    auto standard = [&](const ProjQ* t) -> std::optional<std::array<GaussRat, 4>> {
        Hom p1 = hom(t[0]), p2 = hom(t[1]), p3 = hom(t[2]);
        GaussRat det = p3.x * p1.y - p3.y * p1.x;
        if (det.is_zero()) return std::nullopt;
        GaussRat l3 = (p2.x * p1.y - p2.y * p1.x) / det;
        GaussRat l1 = (p3.x * p2.y - p3.y * p2.x) / det;
        if (l3.is_zero() || l1.is_zero()) return std::nullopt;
        return std::array<GaussRat, 4>{l3 * p3.x, l1 * p1.x, l3 * p3.y, l1 * p1.y};
    };
    auto ms = standard(src), md = standard(dst);
    if (!ms || !md) return std::nullopt;
    // mu = M_dst * adj(M_src)
    const auto& s = *ms;
    const auto& d = *md;
    GaussRat a = d[0] * s[3] - d[1] * s[2];
    GaussRat b = -d[0] * s[1] + d[1] * s[0];
    GaussRat c = d[2] * s[3] - d[3] * s[2];
    GaussRat e = -d[2] * s[1] + d[3] * s[0];
    GaussRat det = a * e - b * c;
    if (det.is_zero()) return std::nullopt;
    return Mobius(a, b, c, e);
}

namespace {

ComplexBall det3(const std::array<std::array<ComplexBall, 3>, 3>& m) {
    ComplexBall d = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]);
    d = d - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]);
    return d + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

} // namespace

std::optional<std::array<ComplexBall, 4>> mobius_ball_from_three(const ProjBall src[3],
                                                                 const ProjBall dst[3]) {
    mpfr_prec_t prec = 64;
    for (int i = 0; i < 3; ++i) {
        if (!src[i].infinite) prec = std::max(prec, src[i].ball.prec());
        if (!dst[i].infinite) prec = std::max(prec, dst[i].ball.prec());
    }
    ComplexBall one = ComplexBall::exact(GaussRat(1), prec);
    ComplexBall zero(prec);
    // rows of the homogeneous system in (a, b, c, d)
    std::array<std::array<ComplexBall, 4>, 3> rows{};
    for (int i = 0; i < 3; ++i) {
        if (!src[i].infinite && !dst[i].infinite) {
            const ComplexBall& s = src[i].ball;
            const ComplexBall& t = dst[i].ball;
            rows[i] = {s, one, -(s * t), -t};
        } else if (src[i].infinite && !dst[i].infinite) {
            rows[i] = {one, zero, -dst[i].ball, zero};
        } else if (!src[i].infinite && dst[i].infinite) {
            rows[i] = {zero, zero, src[i].ball, one};
        } else {
            rows[i] = {zero, zero, one, zero};
        }
    }
    std::array<ComplexBall, 4> sol{zero, zero, zero, zero};
    bool pinned = false;
    for (int k = 0; k < 4; ++k) {
        std::array<std::array<ComplexBall, 3>, 3> minor{};
        for (int r = 0; r < 3; ++r) {
            int cc = 0;
            for (int c = 0; c < 4; ++c) {
                if (c == k) continue;
                minor[r][cc++] = rows[r][c];
            }
        }
        ComplexBall d = det3(minor);
        if (k % 2 == 1) d = -d;
        if (d.certainly_nonzero()) pinned = true;
        sol[static_cast<std::size_t>(k)] = std::move(d);
    }
    if (!pinned) return std::nullopt;
    return sol;
}

std::optional<ComplexBall> mobius_ball_eval(const std::array<ComplexBall, 4>& m,
                                            const ComplexBall& x) {
    ComplexBall den = m[2] * x + m[3];
    if (!den.certainly_nonzero()) return std::nullopt;
    return (m[0] * x + m[1]) / den;
}

Poly wronskian(const RatMap& a) {
    return a.num().derivative() * a.den() - a.num() * a.den().derivative();
}

bool in_wronskian_degenerate_locus(const RatMap& a) {
    return wronskian(a).degree() < 2 * a.degree() - 2;
}

Poly critical_value_poly(const RatMap& a) {
    if (in_wronskian_degenerate_locus(a)) throw degenerate_at_infinity_error();
    int m = a.degree();
    return resultant_in_t(wronskian(a), a.num(), -a.den(), 2 * m - 2, m);
}

Mobius off_locus_precomposition(const RatMap& a) {
    Poly w = wronskian(a);
    for (long c = 0;; c = c > 0 ? -c : -c + 1) {
        if (!w.eval(GaussRat(c)).is_zero())
            return Mobius(GaussRat(c), GaussRat(1), GaussRat(1), GaussRat(0));
    }
}

// local multiplicities of the fiber over infinity: the denominator's root
// structure plus the pole at infinity when deg num > deg den
std::vector<int> collection_over_infinity(const RatMap& a) {
    std::vector<int> coll;
    if (a.den().degree() >= 1)
        for (const auto& [factor, mult] : squarefree_decomposition(a.den()))
            for (int i = 0; i < factor.degree(); ++i) coll.push_back(mult);
    if (a.num().degree() > a.den().degree())
        coll.push_back(a.num().degree() - a.den().degree());
    std::sort(coll.rbegin(), coll.rend());
    return coll;
}

bool infinity_is_critical_value(const RatMap& a) {
    return static_cast<int>(collection_over_infinity(a).size()) < a.degree();
}

std::pair<RatMap, Mobius> finite_chart(const RatMap& a) {
    Mobius id = Mobius::identity();
    if (!in_wronskian_degenerate_locus(a) && !infinity_is_critical_value(a)) return {a, id};
    for (long c = 0; c <= 64; c = c > 0 ? -c : -c + 1) {
        // sigma = 1/(z - c)
        Mobius sigma(GaussRat(0), GaussRat(1), GaussRat(1), GaussRat(-c));
        RatMap t = conjugate(a, sigma);
        if (!in_wronskian_degenerate_locus(t) && !infinity_is_critical_value(t))
            return {t, sigma};
    }
    throw error("finite_chart: no small chart found");
}

namespace {

bool nontrivial_collection(const std::vector<int>& coll) {
    for (int c : coll)
        if (c >= 2) return true;
    return false;
}

} // namespace

Portrait portrait(const RatMap& a, const Context& ctx) {
    if (a.degree() < 2) throw precondition_error("portrait requires degree >= 2");
    int m = a.degree();
    Portrait out;
    out.degree = m;

    Poly R;
    if (in_wronskian_degenerate_locus(a)) {
        RatMap b = compose(a, off_locus_precomposition(a)); // same critical values
        R = critical_value_poly(b);
    } else {
        R = critical_value_poly(a);
    }

    std::deque<AlgebraicPoint> queue;
    for (auto& p : isolate_roots(R, ctx)) queue.push_back(std::move(p));
    while (!queue.empty()) {
        AlgebraicPoint v = std::move(queue.front());
        queue.pop_front();
        try {
            modring::FiberShape shape =
                modring::fiber_shape(a.num(), a.den(), m, v.minimal_factor().monic());
            std::vector<int> coll = shape.finite_mults;
            if (shape.infinity_mult > 0) coll.push_back(shape.infinity_mult);
            std::sort(coll.rbegin(), coll.rend());
            int total = 0;
            for (int c : coll) total += c;
            if (total != m) throw error("portrait: collection does not sum to the degree");
            if (!nontrivial_collection(coll))
                throw error("portrait: trivial collection at a root of R");
            out.points.push_back({std::move(v), std::move(coll)});
        } catch (const modring::split_request& sr) {
            Poly g = sr.factor;
            Poly h = divexact(v.minimal_factor().monic(), g);
            auto [idx, anchored] = select_factor(v, {g, h}, ctx);
            (void)idx;
            queue.push_back(std::move(anchored));
        }
    }

    std::vector<int> inf_coll = collection_over_infinity(a);
    if (nontrivial_collection(inf_coll))
        out.points.push_back({AlgebraicPoint::infinity(), std::move(inf_coll)});

    std::sort(out.points.begin(), out.points.end(),
              [](const PortraitEntry& x, const PortraitEntry& y) {
                  return canonical_less(x.value, y.value);
              });
    return out;
}

bool is_simple(const RatMap& a, const Context& ctx) {
    if (a.degree() < 2) throw precondition_error("is_simple requires degree >= 2");
    Portrait p = portrait(a, ctx);
    int m = a.degree();
    if (static_cast<int>(p.points.size()) != 2 * m - 2) return false;
    for (const auto& e : p.points) {
        if (static_cast<int>(e.collection.size()) != m - 1) return false;
        if (e.collection[0] != 2) return false;
    }
    return true;
}

std::vector<AlgebraicPoint> critical_values(const RatMap& a, const Context& ctx) {
    Portrait p = portrait(a, ctx);
    std::vector<AlgebraicPoint> out;
    out.reserve(p.points.size());
    for (auto& e : p.points) out.push_back(std::move(e.value));
    return out;
}

AlgebraicPoint image_point(const RatMap& a, const AlgebraicPoint& p, const Context& ctx) {
    if (p.is_infinity()) {
        auto v = a.eval_infinity();
        return v ? AlgebraicPoint::rational(*v) : AlgebraicPoint::infinity();
    }
    if (p.is_rational()) {
        auto v = a.eval(p.rational_value());
        return v ? AlgebraicPoint::rational(*v) : AlgebraicPoint::infinity();
    }
    const Poly rho = p.minimal_factor().monic();

    // does the point map to infinity (is it a pole)?
    Poly g = gcd(rho, a.den());
    if (g.degree() >= 1) {
        Poly h = divexact(rho, g);
        AlgebraicPoint cur = p;
        mpq_class target = cur.box().radius_q();
        bool decided = false;
        for (int round = 0; round < 64; ++round) {
            if (g.eval_ball(cur.box()).certainly_nonzero()) {
                decided = true; // finite value
                break;
            }
            if (h.is_constant() || h.eval_ball(cur.box()).certainly_nonzero())
                return AlgebraicPoint::infinity();
            target /= 16;
            cur = ball_refine(cur, target, ctx);
        }
        if (!decided) throw precision_cap_error("image_point: pole test undecided");
    }

    // minimal polynomial of the image: eliminate t from rho(t), p(t) - s q(t)
    int m = std::max(a.num().degree(), a.den().degree());
    Poly n = resultant_in_t(rho, a.num(), -a.den(), rho.degree(), m);
    std::vector<AlgebraicPoint> candidates = isolate_roots(n, ctx);
    if (candidates.empty()) throw error("image_point: no finite candidate");

    AlgebraicPoint cur = p;
    mpq_class target = cur.box().radius_q();
    for (int round = 0; round < 64; ++round) {
        bool image_ok = true;
        ComplexBall image(ctx.precision);
        try {
            image = a.eval_ball(cur.box());
        } catch (const error&) {
            image_ok = false;
        }
        if (image_ok) {
            std::vector<std::size_t> hits;
            for (std::size_t i = 0; i < candidates.size(); ++i)
                if (!candidates[i].box().disjoint(image)) hits.push_back(i);
            if (hits.size() == 1) return candidates[hits[0]];
            if (hits.empty()) throw error("image_point: image escaped all candidates");
            for (auto i : hits)
                candidates[i] =
                    ball_refine(candidates[i], candidates[i].box().radius_q() / 16, ctx);
        }
        target /= 16;
        cur = ball_refine(cur, target, ctx);
    }
    throw precision_cap_error("image_point did not separate candidates");
}

std::vector<ProjBall> fiber(const RatMap& a, const ComplexBall& w, mpfr_prec_t precision) {
    Context local;
    local.precision = precision;
    local.precision_cap = std::max<mpfr_prec_t>(precision * 64, 8192);
    GaussRat wc = w.center_q();
    Poly F = a.num() - a.den() * wc;
    if (F.is_zero()) throw near_critical_error();
    if (gcd(F, F.derivative()).degree() > 0) throw near_critical_error();
    std::vector<ProjBall> out;
    try {
        for (auto& pt : isolate_roots(F, local)) {
            ProjBall pb;
            pb.ball = ball_refine(pt, mpq_class(1, 1 << 20), local).box();
            out.push_back(std::move(pb));
        }
    } catch (const precision_cap_error&) {
        throw near_critical_error();
    }
    if (F.degree() < a.degree()) {
        ProjBall inf;
        inf.infinite = true;
        out.push_back(std::move(inf));
    }
    return out;
}

} // namespace ratdyn
