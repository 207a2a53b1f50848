#include "ratdyn/fibercurve.hpp"

#include <algorithm>
#include <numeric>

#include "track.hpp"

namespace ratdyn {

int BiPoly::xdegree() const {
    for (std::size_t i = cx.size(); i-- > 0;)
        if (!cx[i].is_zero()) return static_cast<int>(i);
    return -1;
}

int BiPoly::ydegree() const {
    int d = -1;
    for (const auto& p : cx) d = std::max(d, p.degree());
    return d;
}

bool BiPoly::is_zero() const { return xdegree() < 0; }

GaussRat BiPoly::eval(const GaussRat& x, const GaussRat& y) const {
    GaussRat acc;
    for (std::size_t i = cx.size(); i-- > 0;) acc = acc * x + cx[i].eval(y);
    return acc;
}

std::string BiPoly::str() const {
    std::string out;
    bool first = true;
    for (std::size_t i = cx.size(); i-- > 0;) {
        if (cx[i].is_zero()) continue;
        std::string c = cx[i].str("y");
        if (!first) out += " + ";
        if (i == 0) out += "(" + c + ")";
        else out += "(" + c + ")*x" + (i == 1 ? "" : "^" + std::to_string(i));
        first = false;
    }
    return first ? "0" : out;
}

BiPoly BiPoly::operator-(const BiPoly& o) const {
    BiPoly r;
    r.cx.resize(std::max(cx.size(), o.cx.size()));
    for (std::size_t i = 0; i < r.cx.size(); ++i) {
        if (i < cx.size()) r.cx[i] = r.cx[i] + cx[i];
        if (i < o.cx.size()) r.cx[i] = r.cx[i] - o.cx[i];
    }
    return r;
}

BiPoly curve_polynomial(const RatMap& a, const RatMap& b) {
    BiPoly h;
    h.cx.resize(static_cast<std::size_t>(a.num().degree() > a.den().degree()
                                             ? a.num().degree()
                                             : a.den().degree()) +
                1);
    for (std::size_t i = 0; i < h.cx.size(); ++i) {
        int k = static_cast<int>(i);
        // A1(x) B2(y) - A2(x) B1(y)
        h.cx[i] = b.den() * a.num().coeff(k) - b.num() * a.den().coeff(k);
    }
    return h;
}

BiPoly divide_by_diagonal(const BiPoly& h) {
    // synthetic division of h (as a polynomial in x over Q(i)[y]) by x - y
    int dx = h.xdegree();
    if (dx < 1) throw error("divide_by_diagonal: x-degree too small");
    BiPoly q;
    q.cx.resize(static_cast<std::size_t>(dx));
    Poly carry; // running value of q_k evaluated against y
    for (int k = dx; k >= 1; --k) {
        Poly c = (k == dx ? Poly() : carry);
        Poly qk = (k <= static_cast<int>(h.cx.size()) - 1
                       ? h.cx[static_cast<std::size_t>(k)]
                       : Poly()) +
                  c;
        q.cx[static_cast<std::size_t>(k - 1)] = qk;
        carry = qk * Poly::z(); // multiply by y
    }
    Poly rem = h.cx[0] + carry;
    if (!rem.is_zero()) throw error("divide_by_diagonal: nonzero remainder");
    return q;
}

namespace {

// the projective critical-value sets meet in at most one point?
int critical_value_intersection_count(const RatMap& a, const RatMap& b, const Context& ctx) {
    auto va = critical_values(a, ctx);
    auto vb = critical_values(b, ctx);
    int count = 0;
    for (const auto& p : va)
        for (const auto& q : vb)
            if (certainly_distinct(p, q, ctx) == Verdict::NO) ++count;
    return count;
}

} // namespace

FiberCurveAnalysis build_h(const RatMap& a, const RatMap& b, const Context& ctx) {
    FiberCurveAnalysis out;
    out.bipoly = curve_polynomial(a, b);
    out.bidegree = {a.degree(), b.degree()};

    if (a == b) {
        out.irreducibility = Irreducibility::REDUCIBLE_WITH_WITNESS;
        out.witness = "diagonal component x - y";
        return out;
    }
    if (std::gcd(a.degree(), b.degree()) == 1) {
        out.irreducibility = Irreducibility::IRREDUCIBLE_BY_CRITERION;
        out.witness = "coprime degrees";
        out.genus = genus(a, b, ctx);
        return out;
    }
    if (critical_value_intersection_count(a, b, ctx) <= 1) {
        out.irreducibility = Irreducibility::IRREDUCIBLE_BY_CRITERION;
        out.witness = "critical value sets share at most one point";
        out.genus = genus(a, b, ctx);
        return out;
    }
    if (b.degree() % a.degree() == 0) {
        if (auto r = left_factor_divide(a, b, ctx)) {
            out.irreducibility = Irreducibility::REDUCIBLE_WITH_WITNESS;
            out.witness = "b = a o r with r = " + r->str() + "; component x - r(y) = 0";
            return out;
        }
    }
    if (a.degree() % b.degree() == 0) {
        if (auto r = left_factor_divide(b, a, ctx)) {
            out.irreducibility = Irreducibility::REDUCIBLE_WITH_WITNESS;
            out.witness = "a = b o r with r = " + r->str() + "; component r(x) - y = 0";
            return out;
        }
    }
    out.irreducibility = Irreducibility::UNKNOWN;
    return out;
}

mpq_class genus(const RatMap& a, const RatMap& b, const Context& ctx) {
    if (std::gcd(a.degree(), b.degree()) != 1 &&
        critical_value_intersection_count(a, b, ctx) > 1)
        throw irreducibility_unknown_error();
    // the gcd formula over S = V(a) union V(b) on the sphere
    Portrait pa = portrait(a, ctx);
    Portrait pb = portrait(b, ctx);
    int m = a.degree(), l = b.degree();

    struct Entry {
        AlgebraicPoint value;
        std::vector<int> ca, cb;
    };
    std::vector<Entry> s;
    auto find_in = [&](const AlgebraicPoint& p) -> Entry* {
        for (auto& e : s)
            if (certainly_distinct(p, e.value, ctx) == Verdict::NO) return &e;
        return nullptr;
    };
    for (const auto& e : pa.points) {
        s.push_back({e.value, e.collection, {}});
    }
    for (const auto& e : pb.points) {
        if (Entry* hit = find_in(e.value)) hit->cb = e.collection;
        else s.push_back({e.value, {}, e.collection});
    }
    // fill the all-ones collections of non-critical values
    for (auto& e : s) {
        if (e.ca.empty()) e.ca.assign(static_cast<std::size_t>(m), 1);
        if (e.cb.empty()) e.cb.assign(static_cast<std::size_t>(l), 1);
    }
    long r = static_cast<long>(s.size());
    mpq_class total = 0;
    for (const auto& e : s)
        for (int x : e.ca)
            for (int y : e.cb) total += std::gcd(x, y);
    // 2 - 2g = sum gcd - l*m*(r-2)
    mpq_class two_minus_2g = total - mpq_class(l) * m * (r - 2);
    mpq_class g = (2 - two_minus_2g) / 2;
    if (g.get_den() != 1 || sgn(g) < 0) throw error("genus formula returned a non-genus");
    return g;
}

FiberCurveAnalysis build_h_diagonal_removed(const RatMap& a, const Context& ctx) {
    if (a.degree() < 2)
        throw precondition_error("build_h_diagonal_removed requires degree >= 2");
    FiberCurveAnalysis out;
    out.bipoly = divide_by_diagonal(curve_polynomial(a, a));
    out.bidegree = {a.degree(), a.degree()};
    if (a.degree() >= 3 && is_simple(a, ctx)) {
        // imported guarantee for simple maps of degree >= 3: irreducible with
        // positive genus
        out.irreducibility = Irreducibility::IRREDUCIBLE_BY_CRITERION;
        out.witness = "simple map of degree >= 3: curve irreducible of positive genus";
    } else {
        out.irreducibility = Irreducibility::UNKNOWN;
    }
    return out;
}

namespace {

// all critical values of a appear among those of b (necessary for b = a o r)
bool critical_values_contained(const RatMap& a, const RatMap& b, const Context& ctx) {
    auto va = critical_values(a, ctx);
    auto vb = critical_values(b, ctx);
    for (const auto& p : va) {
        bool found = false;
        for (const auto& q : vb)
            if (certainly_distinct(p, q, ctx) == Verdict::NO) found = true;
        if (!found) return false;
    }
    return true;
}

} // namespace

namespace {

// continuation of one a-fiber branch above the w-path induced by moving z,
// with adaptive bisection in z
std::optional<ComplexBall> drive_branch(const RatMap& a, const RatMap& b, const GaussRat& z0,
                                        const GaussRat& z1, const ComplexBall& branch,
                                        mpfr_prec_t prec, int depth) {
    ComplexBall zh = ComplexBall::hull(ComplexBall::exact(z0, prec),
                                       ComplexBall::exact(z1, prec));
    auto w1 = b.eval(z1);
    if (!w1) return std::nullopt;
    bool ok = true;
    std::optional<std::vector<ComplexBall>> next;
    try {
        ComplexBall whull = b.eval_ball(zh);
        next = track::step(a.num(), a.den(), whull, *w1, {branch}, prec);
    } catch (const error&) {
        ok = false;
    }
    if (ok && next) return (*next)[0];
    if (depth <= 0) return std::nullopt;
    GaussRat mid = (z0 + z1) * GaussRat(mpq_class(1, 2));
    auto first = drive_branch(a, b, z0, mid, branch, prec, depth - 1);
    if (!first) return std::nullopt;
    return drive_branch(a, b, mid, z1, *first, prec, depth - 1);
}

std::optional<GaussRat> reconstruct_with_window(const ComplexBall& v, mpfr_prec_t prec) {
    mpq_class window(1);
    for (mpfr_prec_t k = 0; k * 5 < prec * 2; ++k) window /= 2;
    return reconstruct_gaussrat(v.widened(window));
}

} // namespace

std::optional<RatMap> left_factor_divide(const RatMap& a, const RatMap& b,
                                         const Context& ctx, bool* hit_cap) {
    if (hit_cap) *hit_cap = false;
    if (b.degree() % a.degree() != 0)
        throw precondition_error("left_factor_divide: degree of a must divide degree of b");
    int k = b.degree() / a.degree();
    if (a.degree() >= 2 && b.degree() >= 2 && !critical_values_contained(a, b, ctx))
        return std::nullopt;

    // base z0 with a clean full a-fiber over b(z0)
    GaussRat z0;
    bool have_base = false;
    std::vector<GaussRat> base_candidates;
    for (long c : {3l, -3l, 5l, -5l, 7l, 2l, -2l, 9l, -7l, 11l}) {
        base_candidates.emplace_back(mpq_class(c, 8));
        base_candidates.emplace_back(GaussRat(mpq_class(c, 8), mpq_class(1, 4)));
    }
    for (const auto& cand : base_candidates) {
        auto w = b.eval(cand);
        if (!w) continue;
        Poly f = a.num() - a.den() * *w;
        if (f.degree() != a.degree()) continue;
        if (gcd(f, f.derivative()).degree() > 0) continue;
        z0 = cand;
        have_base = true;
        break;
    }
    if (!have_base) return std::nullopt;

    int samples = 2 * k + 3;
    for (mpfr_prec_t prec = ctx.precision;; prec = std::min(prec * 2, ctx.precision_cap)) {
        Context local = ctx;
        local.precision = prec;
        Poly f0 = a.num() - a.den() * *b.eval(z0);
        std::vector<AlgebraicPoint> fiber0 = isolate_roots(f0, local);
        for (const auto& branch0 : fiber0) {
            // collect (z_j, r(z_j)) along a straight z-path
            std::vector<GaussRat> zs{z0};
            std::vector<ComplexBall> vals{
                ball_refine(branch0, mpq_class(1, mpz_class(1) << (prec / 2)), local).box()};
            bool good = true;
            for (int j = 1; j <= samples && good; ++j) {
                GaussRat zj = z0 + GaussRat(mpq_class(j, 8 * samples));
                if (b.eval(zj) == std::nullopt) { good = false; break; }
                auto moved = drive_branch(a, b, zs.back(), zj, vals.back(), prec, 10);
                if (!moved) { good = false; break; }
                zs.push_back(zj);
                vals.push_back(*moved);
            }
            if (!good) continue;
            // fit n(z) - y d(z) = 0 of degree k through the samples
            std::size_t cols = 2 * static_cast<std::size_t>(k) + 2;
            std::vector<std::vector<ComplexBall>> rows;
            for (int j = 0; j < samples; ++j) {
                std::vector<ComplexBall> row;
                ComplexBall zb = ComplexBall::exact(zs[static_cast<std::size_t>(j) + 1], prec);
                ComplexBall y = vals[static_cast<std::size_t>(j) + 1];
                ComplexBall p = ComplexBall::exact(GaussRat(1), prec);
                for (int q = 0; q <= k; ++q) {
                    row.push_back(p);
                    p = p * zb;
                }
                p = -y;
                for (int q = 0; q <= k; ++q) {
                    row.push_back(p);
                    p = p * zb;
                }
                rows.push_back(std::move(row));
            }
            std::vector<ComplexBall> v = nullspace_vector(std::move(rows), cols);
            // normalize by the largest entry and reconstruct
            std::size_t pivot = cols;
            mpq_class best(0);
            for (std::size_t i = 0; i < cols; ++i) {
                mpq_class m = v[i].abs_lower_q();
                if (m > best) {
                    best = m;
                    pivot = i;
                }
            }
            if (pivot == cols) continue;
            ComplexBall inv = v[pivot].inv();
            std::vector<GaussRat> nc(static_cast<std::size_t>(k) + 1),
                dc(static_cast<std::size_t>(k) + 1);
            bool recon = true;
            for (std::size_t i = 0; i < cols && recon; ++i) {
                auto c = reconstruct_with_window(v[i] * inv, prec);
                if (!c) { recon = false; break; }
                if (i <= static_cast<std::size_t>(k)) nc[i] = *c;
                else dc[i - static_cast<std::size_t>(k) - 1] = *c;
            }
            if (!recon) continue;
            try {
                RatMap r{Poly(nc), Poly(dc)};
                if (r.degree() == k && compose_maps(a, r) == b) return r;
            } catch (const degenerate_map_error&) {
            }
        }
        if (prec >= ctx.precision_cap) {
            if (hit_cap) *hit_cap = true;
            return std::nullopt;
        }
    }
}

} // namespace ratdyn
