#include "ratdyn/orbifold.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>

#include "ratdyn/modring.hpp"

namespace ratdyn {

std::vector<int> Orbifold::signature() const {
    std::vector<int> s;
    s.reserve(singular.size());
    for (const auto& [p, nu] : singular) s.push_back(nu);
    std::sort(s.rbegin(), s.rend());
    return s;
}

mpq_class euler_characteristic(const Orbifold& o) {
    mpq_class chi(2);
    for (const auto& [p, nu] : o.singular) chi += mpq_class(1, nu) - 1;
    return chi;
}

namespace {

int lcm_of(const std::vector<int>& v) {
    long l = 1;
    for (int x : v) l = std::lcm(l, static_cast<long>(x));
    return static_cast<int>(l);
}

int orb_nu(const Orbifold& o, const AlgebraicPoint& p, const Context& ctx) {
    for (const auto& [q, nu] : o.singular)
        if (certainly_distinct(p, q, ctx) == Verdict::NO) return nu;
    return 1;
}

} // namespace

std::vector<int> fiber_multiplicities(const RatMap& a, const AlgebraicPoint& v,
                                      const Context& ctx) {
    int m = a.degree();
    std::vector<int> coll;
    if (v.is_infinity()) return collection_over_infinity(a);
    if (v.is_rational()) {
        Poly f = a.num() - a.den() * v.rational_value();
        if (f.degree() >= 1)
            for (const auto& [factor, mult] : squarefree_decomposition(f))
                for (int i = 0; i < factor.degree(); ++i) coll.push_back(mult);
        int drop = m - std::max(f.degree(), 0);
        if (drop > 0) coll.push_back(drop);
        std::sort(coll.rbegin(), coll.rend());
        return coll;
    }
    // algebraic value: quotient-ring shape with dynamic splitting
    AlgebraicPoint cur = v;
    while (true) {
        try {
            modring::FiberShape shape =
                modring::fiber_shape(a.num(), a.den(), m, cur.minimal_factor().monic());
            coll = shape.finite_mults;
            if (shape.infinity_mult > 0) coll.push_back(shape.infinity_mult);
            std::sort(coll.rbegin(), coll.rend());
            return coll;
        } catch (const modring::split_request& sr) {
            Poly g = sr.factor;
            Poly h = divexact(cur.minimal_factor().monic(), g);
            cur = select_factor(cur, {g, h}, ctx).second;
        }
    }
}

int local_degree(const RatMap& a, const AlgebraicPoint& p, const Context& ctx) {
    int m = a.degree();
    if (p.is_infinity()) {
        if (a.num().degree() > a.den().degree()) return m - a.den().degree();
        GaussRat w = *a.eval_infinity();
        Poly f = a.num() - a.den() * w;
        return m - std::max(f.degree(), 0);
    }
    // 1 + order of vanishing of the Wronskian
    Poly w = wronskian(a);
    int ord = 0;
    while (vanishes_at(w, p, ctx)) {
        w = w.derivative();
        ++ord;
    }
    return 1 + ord;
}

namespace {

void separate_points_in(Orbifold& o, const Context& ctx) {
    std::vector<AlgebraicPoint> pts;
    pts.reserve(o.singular.size());
    for (auto& [p, nu] : o.singular) pts.push_back(p);
    separate_points(pts, ctx);
    for (std::size_t i = 0; i < pts.size(); ++i) o.singular[i].first = std::move(pts[i]);
}

} // namespace

std::pair<Orbifold, Orbifold> canonical_orbifolds(const RatMap& a, const Context& ctx) {
    if (a.degree() < 2) throw precondition_error("canonical_orbifolds requires degree >= 2");
    Portrait port = portrait(a, ctx);
    Orbifold o2;
    for (const auto& e : port.points) {
        int nu = lcm_of(e.collection);
        if (nu >= 2) o2.singular.emplace_back(e.value, nu);
    }

    // fibers grouped by the anchored minimal factor so each conjugacy class
    // of singular values is pulled back exactly once
    struct Group {
        bool infinite = false;
        bool rational = false;
        GaussRat value;
        Poly factor;
        int nu2 = 0;
    };
    std::vector<Group> groups;
    for (const auto& [w, nu2] : o2.singular) {
        Group g;
        g.nu2 = nu2;
        if (w.is_infinity()) g.infinite = true;
        else if (w.is_rational()) {
            g.rational = true;
            g.value = w.rational_value();
        } else {
            g.factor = w.minimal_factor().monic();
        }
        bool dup = false;
        for (const auto& h : groups) {
            if (g.infinite && h.infinite) dup = true;
            else if (g.rational && h.rational && g.value == h.value) dup = true;
            else if (!g.infinite && !g.rational && !h.infinite && !h.rational &&
                     g.factor == h.factor)
                dup = true;
        }
        if (!dup) groups.push_back(std::move(g));
    }

    Orbifold o1;
    for (const auto& g : groups) {
        auto add_point = [&](AlgebraicPoint p, int local) {
            if (g.nu2 % local != 0)
                throw error("canonical_orbifolds: local degree does not divide nu2");
            int nu1 = g.nu2 / local;
            if (nu1 > 1) o1.singular.emplace_back(std::move(p), nu1);
        };
        if (g.infinite || g.rational) {
            Poly f = g.infinite ? a.den() : a.num() - a.den() * g.value;
            if (f.degree() >= 1)
                for (const auto& [factor, mult] : squarefree_decomposition(f))
                    for (auto& pt : isolate_roots(factor, ctx)) add_point(pt, mult);
            int drop = a.degree() - std::max(f.degree(), 0);
            if (drop > 0) add_point(AlgebraicPoint::infinity(), drop);
        } else {
            std::deque<Poly> queue{g.factor};
            while (!queue.empty()) {
                Poly phi = queue.front();
                queue.pop_front();
                try {
                    modring::LevelPolys lp =
                        modring::fiber_level_polys(a.num(), a.den(), a.degree(), phi);
                    for (const auto& [mult, ej] : lp.levels)
                        for (auto& pt : isolate_roots(ej, ctx)) add_point(pt, mult);
                } catch (const modring::split_request& sr) {
                    queue.push_back(sr.factor);
                    queue.push_back(divexact(phi, sr.factor));
                }
            }
        }
    }
    separate_points_in(o1, ctx);
    return {std::move(o1), std::move(o2)};
}

namespace {

// shared pointwise check driving both covering predicates
bool orbifold_condition(const RatMap& a, const Orbifold& o1, const Orbifold& o2,
                        bool covering, const Context& ctx) {
    // values where the condition can fail: c(o2), images of c(o1), V(a)
    std::vector<AlgebraicPoint> values;
    auto push_value = [&](const AlgebraicPoint& p) {
        for (const auto& q : values)
            if (certainly_distinct(p, q, ctx) == Verdict::NO) return;
        values.push_back(p);
    };
    for (const auto& [p, nu] : o2.singular) push_value(p);
    std::vector<std::pair<std::size_t, AlgebraicPoint>> o1_images;
    for (std::size_t i = 0; i < o1.singular.size(); ++i) {
        AlgebraicPoint img = image_point(a, o1.singular[i].first, ctx);
        push_value(img);
        o1_images.emplace_back(i, std::move(img));
    }
    if (a.degree() >= 2)
        for (const auto& v : critical_values(a, ctx)) push_value(v);

    for (const auto& w : values) {
        int nu2 = orb_nu(o2, w, ctx);
        std::vector<int> shape = fiber_multiplicities(a, w, ctx);
        std::multiset<int> degrees(shape.begin(), shape.end());
        // marked preimages of w
        for (const auto& [idx, img] : o1_images) {
            if (certainly_distinct(img, w, ctx) != Verdict::NO) continue;
            const auto& [p, nu1] = o1.singular[idx];
            int d = local_degree(a, p, ctx);
            auto it = degrees.find(d);
            if (it == degrees.end())
                throw error("orbifold check: marked degree missing from the fiber");
            degrees.erase(it);
            if (covering) {
                if (nu2 != nu1 * d) return false;
            } else {
                if (nu2 != nu1 * std::gcd(d, nu2)) return false;
            }
        }
        // unmarked preimages have nu1 = 1
        for (int d : degrees) {
            if (covering) {
                if (nu2 != d) return false;
            } else {
                if (nu2 != std::gcd(d, nu2)) return false;
            }
        }
    }
    return true;
}

} // namespace

bool is_covering(const RatMap& a, const Orbifold& o1, const Orbifold& o2, const Context& ctx) {
    return orbifold_condition(a, o1, o2, true, ctx);
}

bool is_minimal_holomorphic(const RatMap& a, const Orbifold& o1, const Orbifold& o2,
                            const Context& ctx) {
    return orbifold_condition(a, o1, o2, false, ctx);
}

LattesVerdict cubic_lattes_test(const RatMap& a, const Context& ctx) {
    if (a.degree() != 3 || !is_simple(a, ctx)) throw not_simple_error();
    auto [o1, o2] = canonical_orbifolds(a, ctx);
    std::vector<int> sig{2, 2, 2, 2};
    if (o1.signature() != sig || o2.signature() != sig)
        throw error("cubic_lattes_test: unexpected canonical signatures");
    for (const auto& [p, nu] : o1.singular) {
        bool matched = false;
        for (const auto& [q, nu2] : o2.singular)
            if (certainly_distinct(p, q, ctx) == Verdict::NO) matched = true;
        if (!matched) return LattesVerdict::NOT_LATTES;
    }
    return LattesVerdict::LATTES;
}

namespace {

// gcd-free basis of the anchored minimal factors, so grouped products never
// double-count a conjugacy class
std::vector<Poly> gcd_free_basis(std::vector<Poly> polys) {
    std::vector<Poly> basis;
    std::deque<Poly> queue(polys.begin(), polys.end());
    while (!queue.empty()) {
        Poly f = queue.front().monic();
        queue.pop_front();
        if (f.degree() < 1) continue;
        bool splitd = false;
        for (std::size_t i = 0; i < basis.size(); ++i) {
            Poly g = gcd(f, basis[i]);
            if (g.degree() < 1) continue;
            if (g == basis[i]) {
                Poly rest = divexact(f, g);
                if (rest.degree() >= 1) queue.push_back(rest);
                splitd = true;
                break;
            }
            Poly b1 = divexact(basis[i], g);
            basis[i] = g;
            if (b1.degree() >= 1) basis.push_back(b1);
            Poly rest = divexact(f, g);
            queue.push_back(g);
            if (rest.degree() >= 1) queue.push_back(rest);
            splitd = true;
            break;
        }
        if (!splitd) basis.push_back(f);
    }
    return basis;
}

} // namespace

Certificate generalized_lattes_genericity(const RatMap& a, const Context& ctx) {
    if (a.degree() < 2)
        throw precondition_error("generalized_lattes_genericity requires degree >= 2");
    Certificate cert;
    cert.name = "generalized_lattes";

    RatMap t = a.degree() >= 5 ? a : iterate(a, 3, ctx);
    cert.witnesses.push_back({"iterate", a.degree() >= 5 ? "1" : "3"});
    auto [tc, sigma] = finite_chart(t);
    if (!sigma.is_identity()) cert.witnesses.push_back({"chart", sigma.str()});
    int big = tc.degree();

    Poly r, s;
    if (2 * big - 2 <= 30) {
        // the literal construction
        r = critical_value_poly(tc);
        s = resultant_in_t(r, tc.num(), -tc.den(), 2 * big - 2, big);
    } else {
        // product construction: group the critical values of the iterate by
        // their Wronskian multiplicities; equal to the literal R, S up to units
        std::vector<AlgebraicPoint> vals = critical_values(a, ctx);
        std::vector<AlgebraicPoint> orbit = vals;
        for (int k = 0; k < 2; ++k) {
            std::vector<AlgebraicPoint> next;
            for (const auto& p : orbit) next.push_back(image_point(a, p, ctx));
            for (auto& p : next) vals.push_back(p);
            orbit = std::move(next);
        }
        // move into the chart; drop duplicates and infinity cannot occur
        std::vector<Poly> factors;
        for (const auto& p : vals) {
            AlgebraicPoint q = image_point(sigma.map(), p, ctx);
            if (q.is_infinity())
                throw error("generalized_lattes: chart left a value at infinity");
            factors.push_back(q.minimal_factor().monic());
        }
        std::sort(factors.begin(), factors.end(),
                  [](const Poly& x, const Poly& y) { return x.str() < y.str(); });
        factors.erase(std::unique(factors.begin(), factors.end()), factors.end());
        std::deque<Poly> basis;
        for (auto& f : gcd_free_basis(factors)) basis.push_back(f);

        r = Poly::one();
        s = Poly::one();
        while (!basis.empty()) {
            Poly phi = basis.front();
            basis.pop_front();
            try {
                modring::FiberShape shape =
                    modring::fiber_shape(tc.num(), tc.den(), big, phi);
                // infinity is never critical in the chart, so only finite
                // preimages contribute Wronskian multiplicity
                int e = 0;
                for (int d : shape.finite_mults) e += d - 1;
                if (e == 0) continue;
                r = r * phi.pow(static_cast<unsigned>(e));
                Poly n = resultant_in_t(phi, tc.num(), -tc.den(), phi.degree(), big);
                s = s * n.pow(static_cast<unsigned>(e));
            } catch (const modring::split_request& sr) {
                Poly g = sr.factor;
                basis.push_back(g);
                basis.push_back(divexact(phi, g));
            }
        }
        cert.witnesses.push_back({"construction", "critical-orbit product"});
    }

    GaussRat res = resultant(r, s, std::max(r.degree(), 0), std::max(s.degree(), 0));
    cert.witnesses.push_back({"R", r.str("t")});
    cert.witnesses.push_back({"S", s.str("t")});
    cert.witnesses.push_back({"resultant", res.str()});

    if (!res.is_zero()) {
        cert.verdict = CertVerdict::PASS;
        return cert;
    }
    cert.verdict = CertVerdict::FAIL;
    Poly g = gcd(r, s);
    Mobius back = sigma.inverse();
    for (const auto& pt : isolate_roots(g, ctx)) {
        AlgebraicPoint w = image_point(back.map(), pt, ctx);
        cert.witnesses.push_back({"common_point", w.str()});
    }
    return cert;
}

} // namespace ratdyn
