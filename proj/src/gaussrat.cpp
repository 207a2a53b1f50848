#include "ratdyn/gaussrat.hpp"

#include <stdexcept>

namespace ratdyn {

GaussRat GaussRat::inv() const {
    mpq_class n = norm();
    if (sgn(n) == 0) throw std::domain_error("GaussRat: division by zero");
    return GaussRat(re / n, -im / n);
}

GaussRat GaussRat::pow(unsigned long e) const {
    GaussRat acc = one(), base = *this;
    while (e) {
        if (e & 1) acc *= base;
        base *= base;
        e >>= 1;
    }
    return acc;
}

GaussRat operator*(const mpq_class& a, const GaussRat& b) {
    return GaussRat(a * b.re, a * b.im);
}

namespace {
std::string q_str(const mpq_class& q) {
    return q.get_str();
}
} // namespace

std::string GaussRat::str() const {
    if (sgn(im) == 0) return q_str(re);
    std::string ims;
    if (im == 1) ims = "i";
    else if (im == -1) ims = "-i";
    else ims = q_str(im) + "*i";
    if (sgn(re) == 0) return ims;
    if (sgn(im) > 0) return q_str(re) + "+" + ims;
    return q_str(re) + ims; // imaginary part carries its own sign
}

GaussInt GaussInt::pow(unsigned long e) const {
    GaussInt acc(1), base = *this;
    while (e) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

GaussInt GaussInt::exact_div(const GaussInt& o) const {
    mpz_class n = o.re * o.re + o.im * o.im;
    if (sgn(n) == 0) throw std::domain_error("GaussInt: division by zero");
    GaussInt num = *this * GaussInt(o.re, -o.im);
    GaussInt q;
    mpz_class r;
    mpz_tdiv_qr(q.re.get_mpz_t(), r.get_mpz_t(), num.re.get_mpz_t(), n.get_mpz_t());
    if (sgn(r) != 0) throw std::logic_error("GaussInt: inexact division");
    mpz_tdiv_qr(q.im.get_mpz_t(), r.get_mpz_t(), num.im.get_mpz_t(), n.get_mpz_t());
    if (sgn(r) != 0) throw std::logic_error("GaussInt: inexact division");
    return q;
}

std::uint64_t SplitMix64::next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

long SplitMix64::next_in(long lo, long hi) {
    std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<long>(next() % span);
}

} // namespace ratdyn
