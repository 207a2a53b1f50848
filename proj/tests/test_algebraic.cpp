#include "doctest.h"

#include "oracle.hpp"
#include "ratdyn/algebraic.hpp"

using namespace ratdyn;

namespace {
const Context ctx;
}

TEST_CASE("isolate_roots on easy factorizations") {
    SUBCASE("z^2 - 1") {
        auto pts = isolate_roots(Poly::from_ints({-1, 0, 1}), ctx);
        REQUIRE(pts.size() == 2);
        CHECK(pts[0].rational_value() == GaussRat(-1));
        CHECK(pts[1].rational_value() == GaussRat(1));
    }
    SUBCASE("4 - t^2, the critical-value polynomial of (z^2+1)/z") {
        auto pts = isolate_roots(Poly::from_ints({4, 0, -1}), ctx);
        REQUIRE(pts.size() == 2);
        CHECK(pts[0].rational_value() == GaussRat(-2));
        CHECK(pts[1].rational_value() == GaussRat(2));
    }
    SUBCASE("constant") {
        CHECK(isolate_roots(Poly(GaussRat(7)), ctx).empty());
    }
    SUBCASE("multiplicities collapse to distinct roots") {
        Poly f = Poly::from_ints({-1, 1});
        auto pts = isolate_roots(f * f * f * Poly::z(), ctx);
        CHECK(pts.size() == 2);
    }
}

TEST_CASE("isolate_roots on irrational and complex roots") {
    SUBCASE("z^2 - 2") {
        auto pts = isolate_roots(Poly::from_ints({-2, 0, 1}), ctx);
        REQUIRE(pts.size() == 2);
        for (const auto& p : pts) CHECK(!p.is_rational());
        CHECK(certainly_distinct(pts[0], pts[1], ctx) == Verdict::YES);
    }
    SUBCASE("z^2 + 1 has the exact Gaussian roots") {
        auto pts = isolate_roots(Poly::from_ints({1, 0, 1}), ctx);
        REQUIRE(pts.size() == 2);
        CHECK(pts[0].is_rational());
        CHECK(pts[0].rational_value() == -GaussRat::i());
        CHECK(pts[1].rational_value() == GaussRat::i());
    }
    SUBCASE("random degree-8 polynomial isolates all roots disjointly") {
        SplitMix64 rng(0x1dea);
        Poly f = oracle::random_poly(rng, 8);
        auto pts = isolate_roots(f, ctx);
        // squarefree check: random polys here are squarefree
        REQUIRE(static_cast<int>(pts.size()) == squarefree_part(f).degree());
        for (std::size_t i = 0; i < pts.size(); ++i)
            for (std::size_t j = i + 1; j < pts.size(); ++j)
                CHECK(pts[i].box().disjoint(pts[j].box()));
    }
}

TEST_CASE("ball_refine") {
    SUBCASE("sqrt(2) to 1e-30") {
        auto pts = isolate_roots(Poly::from_ints({-2, 0, 1}), ctx);
        const AlgebraicPoint& sqrt2 = pts[1];
        mpq_class target(1, mpz_class("1000000000000000000000000000000"));
        AlgebraicPoint r = ball_refine(sqrt2, target, ctx);
        CHECK(r.box().radius_q() <= target);
        CHECK(r.minimal_factor() == sqrt2.minimal_factor());
        CHECK(sqrt2.box().contains(r.box()));
        // the refined box still contains sqrt(2): 2 is in the square's image
        GaussRat c = r.box().center_q();
        mpq_class lo = (c.norm() - r.box().radius_q() * 3);
        CHECK(lo < 2);
        CHECK(2 < c.norm() + r.box().radius_q() * 3);
    }
    SUBCASE("infinity is rejected") {
        CHECK_THROWS_AS(ball_refine(AlgebraicPoint::infinity(), mpq_class(1, 10), ctx),
                        finite_required_error);
    }
    SUBCASE("rational root stays exact") {
        AlgebraicPoint z0 = AlgebraicPoint::rational(GaussRat(0));
        AlgebraicPoint r = ball_refine(z0, mpq_class(1, 10000000000L), ctx);
        CHECK(sgn(r.box().radius_q()) == 0);
        CHECK(r.rational_value() == GaussRat(0));
    }
}

TEST_CASE("certainly_distinct") {
    auto sqrt2 = isolate_roots(Poly::from_ints({-2, 0, 1}), ctx);
    SUBCASE("sqrt2 vs -sqrt2") {
        CHECK(certainly_distinct(sqrt2[0], sqrt2[1], ctx) == Verdict::YES);
    }
    SUBCASE("identical rational points") {
        AlgebraicPoint a = AlgebraicPoint::rational(GaussRat(2));
        AlgebraicPoint b = AlgebraicPoint::rational(GaussRat(2));
        CHECK(certainly_distinct(a, b, ctx) == Verdict::NO);
    }
    SUBCASE("infinity vs finite") {
        CHECK(certainly_distinct(AlgebraicPoint::infinity(),
                                 AlgebraicPoint::rational(GaussRat(0)), ctx) == Verdict::YES);
        CHECK(certainly_distinct(AlgebraicPoint::infinity(), AlgebraicPoint::infinity(),
                                 ctx) == Verdict::NO);
    }
    SUBCASE("same root reached through different squarefree factors") {
        // sqrt(2) as a root of z^2-2 and of (z^2-2)(z+5)
        Poly f = Poly::from_ints({-2, 0, 1});
        Poly g = f * Poly::from_ints({5, 1});
        auto pf = isolate_roots(f, ctx);
        auto pg = isolate_roots(g, ctx);
        int matches = 0;
        for (const auto& a : pf)
            for (const auto& b : pg)
                if (certainly_distinct(a, b, ctx) == Verdict::NO) ++matches;
        CHECK(matches == 2);
    }
    SUBCASE("symmetry") {
        AlgebraicPoint a = sqrt2[0], b = sqrt2[1];
        CHECK(certainly_distinct(a, b, ctx) == certainly_distinct(b, a, ctx));
        CHECK(certainly_distinct(a, a, ctx) == Verdict::NO);
    }
}

TEST_CASE("select_factor re-anchors a point on the right divisor") {
    Poly f = Poly::from_ints({-2, 0, 1});   // z^2-2
    Poly g = Poly::from_ints({3, 0, 1});    // z^2+3
    auto pts = isolate_roots(f * g, ctx);
    REQUIRE(pts.size() == 4);
    for (const auto& p : pts) {
        auto [idx, anchored] = select_factor(p, {f, g}, ctx);
        CHECK(anchored.minimal_factor().degree() == 2);
        CHECK((idx == 0 || idx == 1));
        // verify by exact membership: the anchored factor divides out correctly
        CHECK(anchored.minimal_factor() == (idx == 0 ? f : g).monic());
    }
}
