#include "ratdyn/symmetry.hpp"

#include <algorithm>

#include "ratdyn/monodromy.hpp"
#include "ratdyn/orbifold.hpp"

namespace ratdyn {

Mobius sigma_quadratic(const RatMap& m) {
    if (m.degree() != 2) throw precondition_error("sigma_quadratic requires degree two");
    GaussRat a = m.num().coeff(2), b = m.num().coeff(1), c = m.num().coeff(0);
    GaussRat d = m.den().coeff(2), e = m.den().coeff(1), f = m.den().coeff(0);
    Mobius mu(c * d - a * f, c * e - b * f, a * e - b * d, a * f - c * d);
    if (!(compose(m, mu) == m)) throw error("sigma_quadratic: formula verification failed");
    return mu;
}

Certificate emp_certificate(const RatMap& a, const Context& ctx) {
    if (a.degree() != 2) throw precondition_error("emp certificate requires degree two");
    Certificate cert;
    cert.name = "emp";

    auto [t, sigma] = finite_chart(a);
    if (!sigma.is_identity()) cert.witnesses.push_back({"chart", sigma.str()});
    Mobius mu = sigma_quadratic(t);
    cert.witnesses.push_back({"mu", mu.str()});

    // R(t) = Res_{2,2,z}(W, P - Qt): roots are the two critical values
    Poly r = critical_value_poly(t);
    // S(t) = Res_{2,1,z}(R(z), mu_num(z) - mu_den(z) t): roots are the finite
    // mu-images of the critical values
    Poly s = resultant_in_t(r, mu.map().num(), -mu.map().den(), 2, 1);
    GaussRat res = resultant(r, s, 2, 2);

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

namespace {

// deterministic exact probe values for certified-exclusion tests
std::vector<GaussRat> probe_values() {
    std::vector<GaussRat> v;
    for (long k : {0l, 1l, -1l, 2l, -2l, 3l, -3l, 5l}) v.emplace_back(GaussRat(k));
    v.push_back(GaussRat(mpq_class(1, 2)));
    v.push_back(GaussRat(mpq_class(0), mpq_class(1)));
    v.push_back(GaussRat(mpq_class(1), mpq_class(1)));
    return v;
}

// evaluate F o (mobius ball matrix) at exact x and compare against the exact
// value of F at x; true = certainly different (triple excluded)
bool excluded_by_probe(const RatMap& f, const std::array<ComplexBall, 4>& m,
                       const Context& ctx) {
    for (const GaussRat& x : probe_values()) {
        auto fx = f.eval(x);
        if (!fx) continue;
        auto mx = mobius_ball_eval(m, ComplexBall::exact(x, ctx.precision));
        if (!mx) continue;
        ComplexBall img(ctx.precision);
        try {
            img = f.eval_ball(*mx);
        } catch (const error&) {
            continue;
        }
        if (img.disjoint(ComplexBall::exact(*fx, img.prec()))) return true;
    }
    return false;
}

std::optional<Mobius> reconstruct_mobius(const std::array<ComplexBall, 4>& m) {
    // normalize by the largest certainly-nonzero entry
    int pivot = -1;
    mpq_class best(0);
    for (int k = 0; k < 4; ++k) {
        if (!m[static_cast<std::size_t>(k)].certainly_nonzero()) continue;
        mpq_class mag = m[static_cast<std::size_t>(k)].abs_lower_q();
        if (pivot < 0 || mag > best) {
            pivot = k;
            best = mag;
        }
    }
    if (pivot < 0) return std::nullopt;
    ComplexBall inv = m[static_cast<std::size_t>(pivot)].inv();
    GaussRat coef[4];
    for (int k = 0; k < 4; ++k) {
        auto c = reconstruct_gaussrat(m[static_cast<std::size_t>(k)] * inv);
        if (!c) return std::nullopt;
        coef[k] = *c;
    }
    try {
        return Mobius(coef[0], coef[1], coef[2], coef[3]);
    } catch (const error&) {
        return std::nullopt;
    }
}

// base value over which the iterate has a clean full fiber
GaussRat generic_base_value(const RatMap& f, SplitMix64& rng) {
    for (int tries = 0; tries < 4096; ++tries) {
        GaussRat w(mpq_class(rng.next_in(-40, 40), rng.next_in(1, 12)),
                   mpq_class(rng.next_in(-6, 6), rng.next_in(1, 6)));
        Poly fw = f.num() - f.den() * w;
        if (fw.degree() != f.degree()) continue;
        if (gcd(fw, fw.derivative()).degree() > 0) continue;
        return w;
    }
    throw error("no generic base value found");
}

} // namespace

SymmetryGroup sigma_infinity_oracle(const RatMap& a, int n, const Context& ctx) {
    if (a.degree() != 2 && a.degree() != 3)
        throw precondition_error("sigma_infinity_oracle requires degree 2 or 3");
    RatMap f = iterate(a, n, ctx);
    SplitMix64 rng(ctx.seed ^ 0x51f7a11ce5ULL);
    GaussRat w = generic_base_value(f, rng);
    Poly fw = f.num() - f.den() * w;
    std::vector<AlgebraicPoint> fiber_pts = isolate_roots(fw, ctx);
    int big = static_cast<int>(fiber_pts.size());

    SymmetryGroup out;
    out.complete = true;

    struct Triple {
        int q[3];
    };
    std::vector<Triple> undecided;
    for (int i = 0; i < big; ++i)
        for (int j = 0; j < big; ++j)
            for (int k = 0; k < big; ++k)
                if (i != j && j != k && i != k) undecided.push_back({{i, j, k}});

    std::vector<Mobius> found;
    mpq_class target(1, 1 << 12);
    for (mpfr_prec_t prec = ctx.precision; !undecided.empty();
         prec = std::min(prec * 2, ctx.precision_cap)) {
        for (auto& p : fiber_pts) p = ball_refine(p, target, ctx);
        std::vector<Triple> still;
        for (const Triple& t : undecided) {
            ProjBall src[3], dst[3];
            for (int i = 0; i < 3; ++i) {
                src[i].ball = fiber_pts[static_cast<std::size_t>(i)].box();
                dst[i].ball = fiber_pts[static_cast<std::size_t>(t.q[i])].box();
            }
            auto mb = mobius_ball_from_three(src, dst);
            if (mb) {
                if (excluded_by_probe(f, *mb, ctx)) continue;
                auto cand = reconstruct_mobius(*mb);
                if (cand && compose(f, *cand) == f) {
                    found.push_back(*cand);
                    continue;
                }
            }
            still.push_back(t);
        }
        undecided = std::move(still);
        if (undecided.empty()) break;
        if (prec >= ctx.precision_cap) {
            out.complete = false;
            break;
        }
        target /= mpz_class(1) << 16;
    }

    // dedupe, identity first
    std::sort(found.begin(), found.end(), [](const Mobius& x, const Mobius& y) {
        if (x.is_identity() != y.is_identity()) return x.is_identity();
        return x.str() < y.str();
    });
    for (const auto& mu : found)
        if (out.elements.empty() || !(out.elements.back() == mu)) out.elements.push_back(mu);
    return out;
}

std::optional<Mobius> same_right_factor(const RatMap& a1, const RatMap& a2,
                                        const Context& ctx) {
    (void)ctx;
    if (a1.degree() != 2 || a2.degree() != 2)
        throw precondition_error("same_right_factor requires degree two");
    if (!(sigma_quadratic(a1) == sigma_quadratic(a2))) return std::nullopt;
    // interpolate nu through three exact graph points of a2 o a1^{-1}
    std::vector<GaussRat> zs;
    for (long k : {0l, 1l, -1l, 2l, -2l, 3l, -3l, 4l, -4l, 5l, -5l, 6l, 7l})
        zs.emplace_back(k);
    for (std::size_t i = 0; i + 2 < zs.size(); ++i)
        for (std::size_t j = i + 1; j + 1 < zs.size(); ++j)
            for (std::size_t k = j + 1; k < zs.size(); ++k) {
                GaussRat z[3] = {zs[i], zs[j], zs[k]};
                ProjQ src[3], dst[3];
                bool good = true;
                for (int q = 0; q < 3 && good; ++q) {
                    auto x = a1.eval(z[q]);
                    auto y = a2.eval(z[q]);
                    if (!x || !y) { good = false; break; }
                    src[q] = ProjQ::at(*x);
                    dst[q] = ProjQ::at(*y);
                }
                if (!good) continue;
                if (src[0].v == src[1].v || src[1].v == src[2].v || src[0].v == src[2].v)
                    continue;
                auto nu = mobius_from_three(src, dst);
                if (!nu) continue;
                if (compose(*nu, a1) == a2) return nu;
                return std::nullopt; // interpolation is exact: mismatch is definitive
            }
    throw error("same_right_factor: no usable interpolation nodes");
}

namespace {

struct FixData {
    std::vector<AlgebraicPoint> points; // finite fixed points and possibly infinity
};

FixData fixed_points(const RatMap& f, const Context& ctx) {
    FixData out;
    Poly fixp = f.num() - Poly::z() * f.den();
    if (!fixp.is_zero())
        out.points = isolate_roots(fixp, ctx);
    if (f.num().degree() > f.den().degree()) out.points.push_back(AlgebraicPoint::infinity());
    return out;
}

} // namespace

bool iterate_root_unique(const RatMap& a, int n, const Context& ctx) {
    int m = a.degree();
    if (m == 2) {
        if (emp_certificate(a, ctx).verdict != CertVerdict::PASS)
            throw precondition_error("PRECONDITION_UNCERTIFIED: emp certificate fails");
    } else if (m == 3) {
        if (!is_simple(a, ctx))
            throw precondition_error("PRECONDITION_UNCERTIFIED: map is not simple");
        if (cubic_lattes_test(a, ctx) != LattesVerdict::NOT_LATTES)
            throw precondition_error("PRECONDITION_UNCERTIFIED: Lattes test");
    } else {
        throw precondition_error("iterate_root_unique requires degree 2 or 3");
    }

    RatMap f = iterate(a, n, ctx);

    // the audit supplies the candidate form B = nu o A
    {
        auto classes = decompositions_of_iterate(a, n, ctx);
        Decomposition trivial;
        for (int i = 0; i < n; ++i) trivial.factors.push_back(a);
        for (const auto& cls : classes)
            if (!equivalent(cls, trivial, ctx))
                throw error("iterate has a nontrivial decomposition class; "
                            "candidate form not established");
    }

    FixData fix = fixed_points(f, ctx);
    std::size_t count = fix.points.size();
    if (count < 3) throw error("too few fixed points for reference data");

    // references: finite fixed points with finite pairwise-distinct a-images
    std::vector<std::size_t> refs;
    std::vector<AlgebraicPoint> ref_imgs;
    for (std::size_t i = 0; i < count && refs.size() < 3; ++i) {
        if (fix.points[i].is_infinity()) continue;
        AlgebraicPoint img = image_point(a, fix.points[i], ctx);
        if (img.is_infinity()) continue;
        bool distinct = true;
        for (const auto& prev : ref_imgs)
            if (certainly_distinct(img, prev, ctx) != Verdict::YES) distinct = false;
        if (!distinct) continue;
        refs.push_back(i);
        ref_imgs.push_back(std::move(img));
    }
    if (refs.size() < 3) throw error("could not choose three reference fixed points");

    struct Triple {
        std::size_t q[3];
    };
    std::vector<Triple> undecided;
    for (std::size_t i = 0; i < count; ++i)
        for (std::size_t j = 0; j < count; ++j)
            for (std::size_t k = 0; k < count; ++k)
                if (i != j && j != k && i != k) undecided.push_back({{i, j, k}});

    auto probe_candidate = [&](const std::array<ComplexBall, 4>& mb) -> bool {
        // certainly (nu o a)^n != f ?
        for (const GaussRat& x : probe_values()) {
            auto fx = f.eval(x);
            if (!fx) continue;
            ComplexBall v = ComplexBall::exact(x, ctx.precision);
            bool bad = false;
            for (int step = 0; step < n && !bad; ++step) {
                try {
                    v = a.eval_ball(v);
                } catch (const error&) {
                    bad = true;
                    break;
                }
                auto nv = mobius_ball_eval(mb, v);
                if (!nv) { bad = true; break; }
                v = *nv;
            }
            if (bad) continue;
            if (v.disjoint(ComplexBall::exact(*fx, v.prec()))) return true;
        }
        return false;
    };

    bool unique = true;
    mpq_class target(1, 1 << 12);
    for (mpfr_prec_t prec = ctx.precision; !undecided.empty();
         prec = std::min(prec * 2, ctx.precision_cap)) {
        for (auto& p : fix.points)
            if (!p.is_infinity()) p = ball_refine(p, target, ctx);
        for (auto& p : ref_imgs) p = ball_refine(p, target, ctx);
        std::vector<Triple> still;
        for (const Triple& t : undecided) {
            ProjBall src[3], dst[3];
            for (int i = 0; i < 3; ++i) {
                src[i].ball = ref_imgs[static_cast<std::size_t>(i)].box();
                const AlgebraicPoint& q = fix.points[t.q[i]];
                dst[i].infinite = q.is_infinity();
                if (!dst[i].infinite) dst[i].ball = q.box();
            }
            auto mb = mobius_ball_from_three(src, dst);
            if (mb) {
                if (probe_candidate(*mb)) continue;
                auto cand = reconstruct_mobius(*mb);
                if (cand) {
                    RatMap b = compose(*cand, a);
                    if (iterate(b, n, ctx) == f) {
                        if (!(b == a)) unique = false;
                        continue;
                    }
                }
            }
            still.push_back(t);
        }
        undecided = std::move(still);
        if (undecided.empty()) break;
        if (prec >= ctx.precision_cap)
            throw precision_cap_error("iterate_root_unique: candidates undecided at cap");
        target /= mpz_class(1) << 16;
    }
    return unique;
}

} // namespace ratdyn
