#ifndef RATDYN_GAUSSRAT_HPP
#define RATDYN_GAUSSRAT_HPP

#include <gmpxx.h>
#include <string>
#include <cstdint>

namespace ratdyn {

// Element of Q(i), both components kept canonical by mpq_class.
struct GaussRat {
    mpq_class re, im;

    GaussRat() : re(0), im(0) {}
    GaussRat(long r) : re(r), im(0) {}
    GaussRat(const mpq_class& r) : re(r), im(0) {}
    GaussRat(mpq_class r, mpq_class i) : re(std::move(r)), im(std::move(i)) {}

    static GaussRat zero() { return GaussRat(); }
    static GaussRat one() { return GaussRat(1); }
    static GaussRat i() { return GaussRat(mpq_class(0), mpq_class(1)); }

    bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
    bool is_one() const { return re == 1 && sgn(im) == 0; }
    bool is_real() const { return sgn(im) == 0; }

    GaussRat conj() const { return GaussRat(re, -im); }
    // |z|^2, exact
    mpq_class norm() const { return re * re + im * im; }

    GaussRat operator-() const { return GaussRat(-re, -im); }
    GaussRat operator+(const GaussRat& o) const { return GaussRat(re + o.re, im + o.im); }
    GaussRat operator-(const GaussRat& o) const { return GaussRat(re - o.re, im - o.im); }
    GaussRat operator*(const GaussRat& o) const {
        return GaussRat(re * o.re - im * o.im, re * o.im + im * o.re);
    }
    GaussRat inv() const;
    GaussRat operator/(const GaussRat& o) const { return *this * o.inv(); }

    GaussRat& operator+=(const GaussRat& o) { re += o.re; im += o.im; return *this; }
    GaussRat& operator-=(const GaussRat& o) { re -= o.re; im -= o.im; return *this; }
    GaussRat& operator*=(const GaussRat& o) { *this = *this * o; return *this; }

    bool operator==(const GaussRat& o) const { return re == o.re && im == o.im; }
    bool operator!=(const GaussRat& o) const { return !(*this == o); }

    GaussRat pow(unsigned long e) const;

    // "3/2", "i", "-1/2*i", "1+2*i", ... (matches the CLI expression grammar)
    std::string str() const;
};

GaussRat operator*(const mpq_class& a, const GaussRat& b);

// Element of Z[i]; coefficient domain for the fraction-free resultant PRS.
struct GaussInt {
    mpz_class re, im;

    GaussInt() : re(0), im(0) {}
    GaussInt(long r) : re(r), im(0) {}
    GaussInt(mpz_class r, mpz_class i) : re(std::move(r)), im(std::move(i)) {}

    bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }

    GaussInt operator-() const { return GaussInt(-re, -im); }
    GaussInt operator+(const GaussInt& o) const { return GaussInt(re + o.re, im + o.im); }
    GaussInt operator-(const GaussInt& o) const { return GaussInt(re - o.re, im - o.im); }
    GaussInt operator*(const GaussInt& o) const {
        return GaussInt(re * o.re - im * o.im, re * o.im + im * o.re);
    }
    bool operator==(const GaussInt& o) const { return re == o.re && im == o.im; }

    GaussInt pow(unsigned long e) const;

    // Exact quotient; aborts if o does not divide *this in Z[i].
    GaussInt exact_div(const GaussInt& o) const;
};

// Deterministic 64-bit generator for every pseudo-random choice in the toolkit.
struct SplitMix64 {
    std::uint64_t state;
    explicit SplitMix64(std::uint64_t seed) : state(seed) {}
    std::uint64_t next();
    // uniform in [lo, hi] inclusive
    long next_in(long lo, long hi);
};

} // namespace ratdyn

#endif
