#include "ratdyn/modring.hpp"

#include <algorithm>

#include "ratdyn/context.hpp"

namespace ratdyn::modring {

Poly reduce(const Poly& a, const Poly& rho) { return divrem(a, rho).second; }

Poly mul_mod(const Poly& a, const Poly& b, const Poly& rho) { return reduce(a * b, rho); }

namespace {

// extended gcd over Q(i)[t]: g = u*a + v*b with g monic
struct ExtGcd {
    Poly g, u, v;
};

ExtGcd ext_gcd(const Poly& a, const Poly& b) {
    Poly r0 = a, r1 = b;
    Poly u0 = Poly::one(), u1 = Poly::zero();
    Poly v0 = Poly::zero(), v1 = Poly::one();
    while (!r1.is_zero()) {
        auto [q, r] = divrem(r0, r1);
        Poly u2 = u0 - q * u1, v2 = v0 - q * v1;
        r0 = std::move(r1);
        r1 = std::move(r);
        u0 = std::move(u1);
        u1 = std::move(u2);
        v0 = std::move(v1);
        v1 = std::move(v2);
    }
    if (r0.is_zero()) return {r0, u0, v0};
    GaussRat s = r0.lc().inv();
    return {r0 * s, u0 * s, v0 * s};
}

} // namespace

Poly inv_mod(const Poly& a, const Poly& rho) {
    Poly ar = reduce(a, rho);
    if (ar.is_zero()) throw error("inv_mod: zero element");
    ExtGcd e = ext_gcd(ar, rho);
    if (e.g.degree() > 0) throw split_request{e.g};
    return reduce(e.u, rho);
}

namespace {

// polynomial in z with coefficients in Q(i)[t]/(rho)
using QPoly = std::vector<Poly>;

void trim_q(QPoly& f) {
    while (!f.empty() && f.back().is_zero()) f.pop_back();
}

int deg_q(const QPoly& f) { return static_cast<int>(f.size()) - 1; }

QPoly derivative_q(const QPoly& f) {
    if (f.size() <= 1) return {};
    QPoly d(f.size() - 1);
    for (std::size_t i = 1; i < f.size(); ++i)
        d[i - 1] = f[i] * GaussRat(static_cast<long>(i));
    trim_q(d);
    return d;
}

// remainder of a by monic-in-z b, coefficients mod rho
QPoly rem_q(QPoly a, const QPoly& b, const Poly& rho) {
    int db = deg_q(b);
    while (deg_q(a) >= db) {
        Poly top = a.back();
        int shift = deg_q(a) - db;
        for (int i = 0; i <= db; ++i) {
            std::size_t k = static_cast<std::size_t>(i + shift);
            a[k] = reduce(a[k] - mul_mod(top, b[static_cast<std::size_t>(i)], rho), rho);
        }
        trim_q(a);
    }
    return a;
}

QPoly monic_q(QPoly f, const Poly& rho) {
    Poly inv = inv_mod(f.back(), rho);
    for (auto& c : f) c = mul_mod(c, inv, rho);
    return f;
}

QPoly gcd_q(QPoly a, QPoly b, const Poly& rho) {
    while (!b.empty()) {
        b = monic_q(std::move(b), rho);
        QPoly r = rem_q(std::move(a), b, rho);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) a = monic_q(std::move(a), rho);
    return a;
}

QPoly mul_qq(const QPoly& a, const QPoly& b, const Poly& rho) {
    if (a.empty() || b.empty()) return {};
    QPoly r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = reduce(r[i + j] + a[i] * b[j], rho);
    trim_q(r);
    return r;
}

QPoly divexact_qq(QPoly a, const QPoly& b, const Poly& rho) {
    if (b.empty()) throw error("divexact_qq: zero divisor polynomial");
    Poly binv = inv_mod(b.back(), rho);
    int db = deg_q(b);
    if (deg_q(a) < db) {
        if (a.empty()) return {};
        throw error("divexact_qq: inexact");
    }
    QPoly q(static_cast<std::size_t>(deg_q(a) - db) + 1);
    while (deg_q(a) >= db) {
        Poly top = mul_mod(a.back(), binv, rho);
        int shift = deg_q(a) - db;
        q[static_cast<std::size_t>(shift)] = top;
        for (int i = 0; i <= db; ++i) {
            std::size_t k = static_cast<std::size_t>(i + shift);
            a[k] = reduce(a[k] - mul_mod(top, b[static_cast<std::size_t>(i)], rho), rho);
        }
        trim_q(a);
        if (a.empty()) break;
    }
    if (!a.empty()) throw error("divexact_qq: nonzero remainder");
    trim_q(q);
    return q;
}

// F(z) = P(z) - t*Q(z) reduced mod rho, with the degree drop recorded
QPoly fiber_poly(const Poly& P, const Poly& Q, int degree, const Poly& rho) {
    QPoly F(static_cast<std::size_t>(degree) + 1);
    for (int j = 0; j <= degree; ++j) {
        Poly cj = Poly(P.coeff(j)) - Poly::z() * Q.coeff(j);
        F[static_cast<std::size_t>(j)] = reduce(cj, rho);
    }
    trim_q(F);
    if (F.empty()) throw error("fiber_poly: map degenerates on the modulus");
    (void)inv_mod(F.back(), rho); // force a split on a zero-divisor lead
    return F;
}

// [g_0 = F monic, g_1 = gcd(F,F'), ...] down to a constant
std::vector<QPoly> gcd_chain(const QPoly& F0, const Poly& rho) {
    std::vector<QPoly> chain;
    chain.push_back(monic_q(F0, rho));
    QPoly dk = F0;
    while (deg_q(chain.back()) > 0) {
        dk = derivative_q(dk);
        if (dk.empty()) break;
        chain.push_back(gcd_q(chain.back(), dk, rho));
    }
    return chain;
}

} // namespace

FiberShape fiber_shape(const Poly& P, const Poly& Q, int degree, const Poly& rho) {
    QPoly F = fiber_poly(P, Q, degree, rho);
    FiberShape shape;
    shape.infinity_mult = degree - deg_q(F);

    // d_k = deg gcd(F, F', ..., F^(k)); roots with multiplicity exactly j
    // number d_{j-1} - 2 d_j + d_{j+1}
    std::vector<QPoly> chain = gcd_chain(F, rho);
    std::vector<int> d;
    for (const auto& g : chain) d.push_back(std::max(deg_q(g), 0));
    d.push_back(0);
    d.push_back(0);
    for (std::size_t j = 1; j + 1 < d.size(); ++j) {
        int count = d[j - 1] - 2 * d[j] + d[j + 1];
        for (int c = 0; c < count; ++c)
            shape.finite_mults.push_back(static_cast<int>(j));
    }
    std::sort(shape.finite_mults.rbegin(), shape.finite_mults.rend());
    return shape;
}

LevelPolys fiber_level_polys(const Poly& P, const Poly& Q, int degree, const Poly& rho) {
    QPoly F = fiber_poly(P, Q, degree, rho);
    std::vector<QPoly> chain = gcd_chain(F, rho);
    chain.push_back({Poly::one()});
    chain.push_back({Poly::one()});

    LevelPolys out;
    int drho = rho.degree();
    for (std::size_t j = 1; j + 1 < chain.size(); ++j) {
        QPoly sj = divexact_qq(chain[j - 1], chain[j], rho);
        QPoly sj1 = divexact_qq(chain[j], chain[j + 1], rho);
        QPoly cj = divexact_qq(sj, sj1, rho);
        if (deg_q(cj) <= 0) continue;
        // reinterpret as a t-polynomial with z-polynomial coefficients
        std::vector<Poly> tpolys(static_cast<std::size_t>(drho));
        int dz = deg_q(cj);
        for (int ti = 0; ti < drho; ++ti) {
            std::vector<GaussRat> zc(static_cast<std::size_t>(dz) + 1);
            for (int k = 0; k <= dz; ++k) zc[static_cast<std::size_t>(k)] =
                cj[static_cast<std::size_t>(k)].coeff(ti);
            tpolys[static_cast<std::size_t>(ti)] = Poly(zc);
        }
        // eliminate t by interpolation over z
        int nodes = drho * dz + 1;
        std::vector<GaussRat> xs, ys;
        long node = 0;
        for (int k = 0; k < nodes; ++k) {
            GaussRat z0(node);
            node = node > 0 ? -node : -node + 1;
            std::vector<GaussRat> tc(static_cast<std::size_t>(drho));
            for (int ti = 0; ti < drho; ++ti)
                tc[static_cast<std::size_t>(ti)] =
                    tpolys[static_cast<std::size_t>(ti)].eval(z0);
            Poly pt(tc);
            xs.push_back(z0);
            ys.push_back(resultant(rho, pt, drho, drho - 1));
        }
        Poly ej = interpolate(xs, ys);
        if (ej.degree() >= 1)
            out.levels.emplace_back(static_cast<int>(j), squarefree_part(ej));
    }
    return out;
}

} // namespace ratdyn::modring
