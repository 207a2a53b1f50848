#include "doctest.h"

#include "oracle.hpp"
#include "ratdyn/ball.hpp"
#include "ratdyn/gaussrat.hpp"
#include "ratdyn/poly.hpp"

using namespace ratdyn;

TEST_CASE("gaussian rational field ops") {
    GaussRat a(mpq_class(3, 2), mpq_class(-1, 3));
    GaussRat b(mpq_class(0), mpq_class(2));
    CHECK(a + b - b == a);
    CHECK((a * b) * b.inv() == a);
    CHECK(a * a.inv() == GaussRat::one());
    CHECK(GaussRat::i() * GaussRat::i() == GaussRat(-1));
    CHECK(a.norm() == mpq_class(9, 4) + mpq_class(1, 9));
    CHECK(GaussRat(mpq_class(1), mpq_class(-1)).str() == "1-i");
    CHECK(GaussRat(mpq_class(0), mpq_class(-3, 2)).str() == "-3/2*i");
}

TEST_CASE("poly arithmetic and division") {
    Poly f = Poly::from_ints({-1, 0, 1});            // z^2 - 1
    Poly g = Poly::from_ints({-1, 1});               // z - 1
    auto [q, r] = divrem(f, g);
    CHECK(r.is_zero());
    CHECK(q == Poly::from_ints({1, 1}));
    CHECK(gcd(f, g) == g.monic());
    CHECK(f.derivative() == Poly::from_ints({0, 2}));
    CHECK((f * g + g).eval(GaussRat(3)) == GaussRat((9 - 1) * 2 + 2));
}

TEST_CASE("squarefree decomposition examples") {
    Poly zm1 = Poly::from_ints({-1, 1});
    Poly zp2 = Poly::from_ints({2, 1});
    SUBCASE("(z-1)^2 (z+2)") {
        auto fac = squarefree_decomposition(zm1 * zm1 * zp2);
        REQUIRE(fac.size() == 2);
        CHECK(fac[0].first == zp2);
        CHECK(fac[0].second == 1);
        CHECK(fac[1].first == zm1);
        CHECK(fac[1].second == 2);
    }
    SUBCASE("z^3") {
        auto fac = squarefree_decomposition(Poly::from_ints({0, 0, 0, 1}));
        REQUIRE(fac.size() == 1);
        CHECK(fac[0].first == Poly::z());
        CHECK(fac[0].second == 3);
    }
    SUBCASE("squarefree input") {
        auto fac = squarefree_decomposition(zm1 * zp2);
        REQUIRE(fac.size() == 1);
        CHECK(fac[0].second == 1);
        CHECK(fac[0].first == (zm1 * zp2).monic());
    }
}

TEST_CASE("homogenized composition") {
    SUBCASE("f = z^2 at (z+1)/1") {
        auto [n, d] = compose_frac(Poly::from_ints({0, 0, 1}), Poly::from_ints({1, 1}),
                                   Poly::one());
        CHECK(n == Poly::from_ints({1, 2, 1}));
        CHECK(d == Poly::one());
    }
    SUBCASE("identity") {
        auto [n, d] = compose_frac(Poly::z(), Poly::from_ints({3, 1}), Poly::from_ints({0, 2}));
        CHECK(n == Poly::from_ints({3, 1}));
        CHECK(d == Poly::from_ints({0, 2}));
    }
    SUBCASE("numerator of A∘A for A=(z^2+1)/z") {
        Poly p = Poly::from_ints({1, 0, 1}), q = Poly::z();
        auto [n, d] = compose_frac(p, p, q);
        CHECK(n == Poly::from_ints({1, 0, 3, 0, 1}));
        CHECK(d == Poly::from_ints({0, 0, 1}));
    }
}

TEST_CASE("resultant spec examples") {
    SUBCASE("Res_{1,2,z}(2z, z^2 - t) = -4t") {
        Poly f = Poly::from_ints({0, 2});
        Poly r = resultant_in_t(f, Poly::from_ints({0, 0, 1}), Poly(GaussRat(-1)), 1, 2);
        CHECK(r == Poly::from_ints({0, -4}));
    }
    SUBCASE("common root forces zero") {
        CHECK(resultant(Poly::from_ints({-1, 1}), Poly::from_ints({-1, 0, 1}), 1, 2) ==
              GaussRat(0));
    }
    SUBCASE("Res(z-a, z-b) = a-b") {
        GaussRat a(mpq_class(7, 3)), b(mpq_class(-2));
        Poly f(std::vector<GaussRat>{-a, GaussRat(1)});
        Poly g(std::vector<GaussRat>{-b, GaussRat(1)});
        CHECK(resultant(f, g, 1, 1) == a - b);
    }
}

TEST_CASE("resultant matches Sylvester determinant, including formal padding") {
    SplitMix64 rng(0xabcdef12);
    for (int trial = 0; trial < 60; ++trial) {
        int df = static_cast<int>(rng.next_in(0, 5));
        int dg = static_cast<int>(rng.next_in(0, 5));
        Poly f = oracle::random_poly(rng, df);
        Poly g = oracle::random_poly(rng, dg);
        int m = df + static_cast<int>(rng.next_in(0, 2));
        int n = dg + static_cast<int>(rng.next_in(0, 2));
        CAPTURE(trial);
        CHECK(resultant(f, g, m, n) == oracle::resultant_det(f, g, m, n));
    }
}

TEST_CASE("resultant properties: symmetry and gcd detection") {
    SplitMix64 rng(0x5151);
    int shared = 0;
    for (int trial = 0; trial < 100; ++trial) {
        int df = static_cast<int>(rng.next_in(1, 4));
        int dg = static_cast<int>(rng.next_in(1, 4));
        Poly f = oracle::random_poly(rng, df);
        Poly g = oracle::random_poly(rng, dg);
        if (trial % 3 == 0) {
            // plant a common factor
            Poly lin = oracle::random_poly(rng, 1);
            f = f * lin;
            g = g * lin;
            df += 1;
            dg += 1;
        }
        GaussRat r = resultant(f, g, df, dg);
        GaussRat rs = resultant(g, f, dg, df);
        GaussRat expect = ((df * dg) % 2 == 1) ? -rs : rs;
        CHECK(r == expect);
        bool zero = r.is_zero();
        bool common = gcd(f, g).degree() >= 1;
        CHECK(zero == common);
        if (common) ++shared;
    }
    CHECK(shared >= 30);
}

TEST_CASE("exact interpolation round trip") {
    SplitMix64 rng(0x77);
    Poly f = oracle::random_poly(rng, 4);
    std::vector<GaussRat> xs, ys;
    for (long k = -2; k <= 2; ++k) {
        xs.emplace_back(k);
        ys.push_back(f.eval(GaussRat(k)));
    }
    CHECK(interpolate(xs, ys) == f);
}

TEST_CASE("poly printing stays within the expression grammar") {
    CHECK(Poly::from_ints({1, 0, 1}).str() == "z^2+1");
    CHECK(Poly::from_ints({0, -1}).str() == "(-1)*z");
    CHECK(Poly::from_ints({-1, 2, -3}).str() == "(-3)*z^2+2*z-1");
    Poly mixed(std::vector<GaussRat>{GaussRat(mpq_class(0), mpq_class(-1)), GaussRat(1)});
    CHECK(mixed.str() == "z-i");
}

TEST_CASE("ball arithmetic contains exact values") {
    SplitMix64 rng(0x9e77);
    for (int trial = 0; trial < 40; ++trial) {
        GaussRat x(mpq_class(rng.next_in(-9, 9), rng.next_in(1, 7)),
                   mpq_class(rng.next_in(-9, 9), rng.next_in(1, 7)));
        GaussRat y(mpq_class(rng.next_in(-9, 9), rng.next_in(1, 7)),
                   mpq_class(rng.next_in(-9, 9), rng.next_in(1, 7)));
        ComplexBall bx = ComplexBall::exact(x, 64);
        ComplexBall by = ComplexBall::exact(y, 64);
        auto contains_exact = [](const ComplexBall& b, const GaussRat& v) {
            GaussRat d = b.center_q() - v;
            mpq_class r = b.radius_q();
            return d.norm() <= r * r;
        };
        CHECK(contains_exact(bx + by, x + y));
        CHECK(contains_exact(bx - by, x - y));
        CHECK(contains_exact(bx * by, x * y));
        if (!y.is_zero() && ComplexBall::exact(y, 64).certainly_nonzero())
            CHECK(contains_exact(bx / by, x / y));
    }
}

TEST_CASE("ball eval of polynomial encloses exact evaluation") {
    SplitMix64 rng(0x1234);
    for (int trial = 0; trial < 20; ++trial) {
        Poly f = oracle::random_poly(rng, 5);
        GaussRat x(mpq_class(rng.next_in(-20, 20), 7), mpq_class(rng.next_in(-20, 20), 5));
        GaussRat exact = f.eval(x);
        ComplexBall b = f.eval_ball(ComplexBall::exact(x, 96));
        GaussRat d = b.center_q() - exact;
        mpq_class r = b.radius_q();
        CHECK(d.norm() <= r * r);
    }
}

TEST_CASE("ball predicates") {
    ComplexBall a = ComplexBall::exact(GaussRat(2), 64);
    ComplexBall b = ComplexBall::exact(GaussRat(-2), 64);
    CHECK(a.disjoint(b));
    CHECK(a.certainly_nonzero());
    CHECK((a - a).contains_zero_certainly());
    ComplexBall wide = a.widened(mpq_class(1, 10));
    CHECK(wide.contains(a));
    CHECK(!a.contains(wide));
}
