#include "ratdyn/poly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace ratdyn {

namespace {
const GaussRat kZero;
}

Poly::Poly(const GaussRat& c) {
    if (!c.is_zero()) c_.push_back(c);
}

Poly::Poly(std::vector<GaussRat> coeffs) : c_(std::move(coeffs)) { trim(); }

Poly Poly::z() {
    return Poly(std::vector<GaussRat>{GaussRat(0), GaussRat(1)});
}

Poly Poly::from_ints(std::initializer_list<long> coeffs) {
    std::vector<GaussRat> v;
    v.reserve(coeffs.size());
    for (long c : coeffs) v.emplace_back(c);
    return Poly(std::move(v));
}

void Poly::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

const GaussRat& Poly::coeff(int k) const {
    if (k < 0 || k >= static_cast<int>(c_.size())) return kZero;
    return c_[static_cast<std::size_t>(k)];
}

const GaussRat& Poly::lc() const {
    if (c_.empty()) throw std::logic_error("Poly::lc of zero polynomial");
    return c_.back();
}

Poly Poly::operator-() const {
    Poly r(*this);
    for (auto& c : r.c_) c = -c;
    return r;
}

Poly Poly::operator+(const Poly& o) const {
    std::vector<GaussRat> v(std::max(c_.size(), o.c_.size()));
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i < c_.size()) v[i] += c_[i];
        if (i < o.c_.size()) v[i] += o.c_[i];
    }
    return Poly(std::move(v));
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
    if (is_zero() || o.is_zero()) return Poly();
    std::vector<GaussRat> v(c_.size() + o.c_.size() - 1);
    for (std::size_t i = 0; i < c_.size(); ++i)
        for (std::size_t j = 0; j < o.c_.size(); ++j)
            v[i + j] += c_[i] * o.c_[j];
    return Poly(std::move(v));
}

Poly Poly::operator*(const GaussRat& s) const {
    if (s.is_zero()) return Poly();
    Poly r(*this);
    for (auto& c : r.c_) c *= s;
    return r;
}

Poly Poly::derivative() const {
    if (c_.size() <= 1) return Poly();
    std::vector<GaussRat> v(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i)
        v[i - 1] = GaussRat(mpq_class(static_cast<long>(i))) * c_[i];
    return Poly(std::move(v));
}

Poly Poly::monic() const {
    if (is_zero()) return *this;
    return *this * lc().inv();
}

Poly Poly::pow(unsigned e) const {
    Poly acc = Poly::one(), base = *this;
    while (e) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

Poly Poly::shifted(int k) const {
    if (is_zero() || k == 0) return *this;
    std::vector<GaussRat> v(c_.size() + static_cast<std::size_t>(k));
    for (std::size_t i = 0; i < c_.size(); ++i) v[i + static_cast<std::size_t>(k)] = c_[i];
    return Poly(std::move(v));
}

GaussRat Poly::eval(const GaussRat& x) const {
    GaussRat acc;
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
}

ComplexBall Poly::eval_ball(const ComplexBall& x) const {
    ComplexBall acc(x.prec());
    for (std::size_t i = c_.size(); i-- > 0;)
        acc = acc * x + ComplexBall::exact(c_[i], x.prec());
    return acc;
}

std::vector<ComplexBall> Poly::ball_coeffs(mpfr_prec_t prec) const {
    std::vector<ComplexBall> v;
    v.reserve(c_.size());
    for (const auto& c : c_) v.push_back(ComplexBall::exact(c, prec));
    return v;
}

std::pair<Poly, Poly> divrem(const Poly& f, const Poly& g) {
    if (g.is_zero()) throw std::domain_error("Poly divrem: division by zero polynomial");
    if (f.degree() < g.degree()) return {Poly(), f};
    std::vector<GaussRat> r(f.coeffs());
    int dg = g.degree();
    GaussRat inv_lc = g.lc().inv();
    std::vector<GaussRat> q(static_cast<std::size_t>(f.degree() - dg + 1));
    for (int k = f.degree() - dg; k >= 0; --k) {
        GaussRat c = r[static_cast<std::size_t>(k + dg)] * inv_lc;
        q[static_cast<std::size_t>(k)] = c;
        if (c.is_zero()) continue;
        for (int j = 0; j <= dg; ++j)
            r[static_cast<std::size_t>(k + j)] -= c * g.coeff(j);
    }
    r.resize(static_cast<std::size_t>(std::max(dg, 0)));
    return {Poly(std::move(q)), Poly(std::move(r))};
}

Poly divexact(const Poly& f, const Poly& g) {
    auto [q, r] = divrem(f, g);
    if (!r.is_zero()) throw std::logic_error("Poly divexact: nonzero remainder");
    return q;
}

Poly gcd(const Poly& f, const Poly& g) {
    Poly a = f, b = g;
    while (!b.is_zero()) {
        Poly r = divrem(a, b).second;
        a = std::move(b);
        b = r.is_zero() ? r : r.monic();
    }
    return a.is_zero() ? a : a.monic();
}

std::vector<std::pair<Poly, int>> squarefree_decomposition(const Poly& f) {
    if (f.is_zero()) throw std::domain_error("squarefree_decomposition of zero");
    std::vector<std::pair<Poly, int>> out;
    if (f.degree() == 0) return out;
    Poly g0 = gcd(f, f.derivative());
    Poly c = divexact(f, g0);
    Poly d = divexact(f.derivative(), g0) - c.derivative();
    int i = 1;
    while (c.degree() > 0) {
        Poly p = gcd(c, d);
        if (p.degree() > 0) out.emplace_back(p, i);
        c = divexact(c, p);
        d = divexact(d, p) - c.derivative();
        ++i;
    }
    return out;
}

Poly squarefree_part(const Poly& f) {
    if (f.is_zero() || f.degree() == 0) return f;
    return divexact(f, gcd(f, f.derivative())).monic();
}

std::pair<Poly, Poly> compose_frac(const Poly& f, const Poly& num, const Poly& den) {
    if (den.is_zero()) throw std::domain_error("compose_frac: zero denominator");
    int d = f.degree();
    if (d <= 0) return {Poly(d == 0 ? f.coeff(0) : GaussRat(0)), Poly::one()};
    Poly n(f.coeff(d));
    Poly dp = Poly::one();
    for (int k = d - 1; k >= 0; --k) {
        dp = dp * den;
        n = n * num + dp * f.coeff(k);
    }
    return {std::move(n), std::move(dp)};
}

// ---------------------------------------------------------------------------
// Resultants: fraction-free subresultant PRS over Z[i] with formal-degree
// padding handled by the strike rules of the Sylvester determinant.

namespace {

using PolyZ = std::vector<GaussInt>; // lowest degree first, trimmed

void trim_z(PolyZ& p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
}

int deg_z(const PolyZ& p) { return static_cast<int>(p.size()) - 1; }

PolyZ mul_scalar(const PolyZ& p, const GaussInt& s) {
    PolyZ r(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) r[i] = p[i] * s;
    trim_z(r);
    return r;
}

PolyZ div_scalar_exact(const PolyZ& p, const GaussInt& s) {
    PolyZ r(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) r[i] = p[i].exact_div(s);
    return r;
}

// pseudo-remainder: rem(lc(B)^(deg A - deg B + 1) * A, B)
PolyZ prem(PolyZ A, const PolyZ& B) {
    int db = deg_z(B);
    const GaussInt& lb = B.back();
    int e = deg_z(A) - db + 1;
    while (deg_z(A) >= db && !A.empty()) {
        int d = deg_z(A) - db;
        GaussInt la = A.back();
        PolyZ next(std::max(A.size() - 1, B.size() + static_cast<std::size_t>(d) - 1),
                   GaussInt());
        // next = lb*A - la*z^d*B, top term cancels
        for (int i = 0; i < deg_z(A); ++i) next[static_cast<std::size_t>(i)] = lb * A[static_cast<std::size_t>(i)];
        for (int i = 0; i < db; ++i)
            next[static_cast<std::size_t>(i + d)] =
                next[static_cast<std::size_t>(i + d)] - la * B[static_cast<std::size_t>(i)];
        trim_z(next);
        A = std::move(next);
        --e;
    }
    if (e > 0) {
        GaussInt m(1);
        for (int i = 0; i < e; ++i) m = m * lb;
        A = mul_scalar(A, m);
    }
    return A;
}

// resultant of nonconstant integer polynomials at exact degrees (Cohen 3.3.7,
// without content extraction)
GaussInt resultant_prs(PolyZ A, PolyZ B) {
    int s = 1;
    if (deg_z(A) < deg_z(B)) {
        if ((deg_z(A) & 1) && (deg_z(B) & 1)) s = -s;
        std::swap(A, B);
    }
    if (deg_z(B) == 0) {
        GaussInt r = B[0].pow(static_cast<unsigned long>(deg_z(A)));
        return s == 1 ? r : -r;
    }
    GaussInt g(1), h(1);
    while (true) {
        int da = deg_z(A), db = deg_z(B);
        int delta = da - db;
        if ((da & 1) && (db & 1)) s = -s;
        PolyZ R = prem(A, B);
        A = std::move(B);
        if (R.empty()) return GaussInt(0);
        GaussInt denom = g * h.pow(static_cast<unsigned long>(delta));
        B = div_scalar_exact(R, denom);
        g = A.back();
        if (delta > 0)
            h = g.pow(static_cast<unsigned long>(delta))
                    .exact_div(h.pow(static_cast<unsigned long>(delta - 1)));
        if (deg_z(B) == 0) {
            int dA = deg_z(A);
            GaussInt r = B[0].pow(static_cast<unsigned long>(dA));
            if (dA > 1) r = r.exact_div(h.pow(static_cast<unsigned long>(dA - 1)));
            return s == 1 ? r : -r;
        }
    }
}

// scale to Z[i]: f = (u/d) * F with F integral; returns (F, u, d)
struct Scaled {
    PolyZ F;
    mpz_class num, den;
};

Scaled scale_to_zi(const Poly& f) {
    Scaled s;
    s.num = 1;
    s.den = 1;
    for (const auto& c : f.coeffs()) {
        mpz_class l = lcm(c.re.get_den(), c.im.get_den());
        s.den = lcm(s.den, l);
    }
    s.F.reserve(f.coeffs().size());
    mpz_class g = 0;
    for (const auto& c : f.coeffs()) {
        mpz_class re = c.re.get_num() * (s.den / c.re.get_den());
        mpz_class im = c.im.get_num() * (s.den / c.im.get_den());
        g = gcd(g, re);
        g = gcd(g, im);
        s.F.emplace_back(std::move(re), std::move(im));
    }
    if (sgn(g) != 0 && g != 1) {
        for (auto& c : s.F) {
            c.re /= g;
            c.im /= g;
        }
        s.num = g;
    }
    trim_z(s.F);
    return s;
}

GaussRat pow_q(const mpq_class& base, int e) {
    mpq_class acc = 1;
    for (int i = 0; i < e; ++i) acc *= base;
    return GaussRat(acc);
}

// exact-degree resultant over Q(i)
GaussRat resultant_exact(const Poly& f, const Poly& g) {
    int a = f.degree(), b = g.degree();
    if (a < 0 || b < 0) throw std::logic_error("resultant_exact: zero polynomial");
    if (b == 0) return g.coeff(0).pow(static_cast<unsigned long>(a));
    if (a == 0) return f.coeff(0).pow(static_cast<unsigned long>(b));
    Scaled sf = scale_to_zi(f), sg = scale_to_zi(g);
    GaussInt rz = resultant_prs(sf.F, sg.F);
    GaussRat r(mpq_class(rz.re), mpq_class(rz.im));
    // f = (nf/df) F, g = (ng/dg) G  =>  Res(f,g) = (nf/df)^b (ng/dg)^a Res(F,G)
    r *= pow_q(mpq_class(sf.num) / mpq_class(sf.den), b);
    r *= pow_q(mpq_class(sg.num) / mpq_class(sg.den), a);
    return r;
}

} // namespace

GaussRat resultant(const Poly& f, const Poly& g, int m, int n) {
    if (m < f.degree() || n < g.degree())
        throw std::domain_error("resultant: formal degree below actual degree");
    if (m == 0 && n == 0) return GaussRat(1);
    int a = f.degree(), b = g.degree();
    if (f.is_zero()) return n == 0 ? g.coeff(0).pow(static_cast<unsigned long>(m)) : GaussRat(0);
    if (g.is_zero()) return m == 0 ? f.coeff(0).pow(static_cast<unsigned long>(n)) : GaussRat(0);
    if (a < m && b < n) return 0; // first Sylvester column vanishes
    if (b == n) {
        // expanding padded f-rows along the first column picks up one sign
        // (-1)^n and one factor lc(g) per struck row
        GaussRat r = resultant_exact(f, g);
        if (a < m) {
            r *= g.lc().pow(static_cast<unsigned long>(m - a));
            if ((n & 1) && ((m - a) & 1)) r = -r;
        }
        return r;
    }
    // a == m, b < n: reflecting twice cancels all signs
    return resultant_exact(f, g) * f.lc().pow(static_cast<unsigned long>(n - b));
}

Poly resultant_in_t(const Poly& f, const Poly& g0, const Poly& g1, int df, int dg) {
    std::vector<GaussRat> xs, ys;
    xs.reserve(static_cast<std::size_t>(df) + 1);
    ys.reserve(static_cast<std::size_t>(df) + 1);
    long node = 0;
    for (int k = 0; k <= df; ++k) {
        GaussRat t(node);
        // nodes 0, 1, -1, 2, -2, ...
        node = node > 0 ? -node : -node + 1;
        Poly g = g0 + g1 * t;
        xs.push_back(t);
        ys.push_back(resultant(f, g, df, dg));
    }
    return interpolate(xs, ys);
}

Poly interpolate(const std::vector<GaussRat>& xs, const std::vector<GaussRat>& ys) {
    if (xs.size() != ys.size() || xs.empty())
        throw std::domain_error("interpolate: bad input");
    // Newton form with exact divided differences
    std::size_t n = xs.size();
    std::vector<GaussRat> dd(ys);
    for (std::size_t level = 1; level < n; ++level)
        for (std::size_t i = n - 1; i >= level; --i)
            dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - level]);
    Poly acc(dd[n - 1]);
    for (std::size_t i = n - 1; i-- > 0;) {
        Poly lin(std::vector<GaussRat>{-xs[i], GaussRat(1)});
        acc = acc * lin + Poly(dd[i]);
    }
    return acc;
}

// ---------------------------------------------------------------------------

std::string Poly::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int k = degree(); k >= 0; --k) {
        const GaussRat& c = coeff(k);
        if (c.is_zero()) continue;
        std::string cs = c.str();
        bool negated = false;
        if (!first) {
            // pull a leading minus out of purely real/imaginary coefficients
            if (cs.size() > 1 && cs[0] == '-' && cs.find('+') == std::string::npos &&
                cs.find('-', 1) == std::string::npos) {
                os << "-";
                cs = cs.substr(1);
                negated = true;
            } else {
                os << "+";
            }
        }
        // the grammar has no unary minus on 'i'
        if (cs == "-i") cs = "0-i";
        bool needs_paren = cs.find('+') != std::string::npos ||
                           cs.find('-', 1) != std::string::npos ||
                           (!negated && cs[0] == '-' && k > 0);
        if (k == 0) {
            os << (needs_paren && !first ? "(" + cs + ")" : cs);
        } else {
            std::string p = (k == 1) ? var : var + "^" + std::to_string(k);
            if (cs == "1") os << p;
            else if (cs == "-1") os << (first ? "(-1)*" + p : "-" + p);
            else if (needs_paren) os << "(" << cs << ")*" << p;
            else os << cs << "*" << p;
        }
        first = false;
    }
    return os.str();
}

} // namespace ratdyn
