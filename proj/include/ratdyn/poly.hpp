#ifndef RATDYN_POLY_HPP
#define RATDYN_POLY_HPP

#include <string>
#include <utility>
#include <vector>

#include "ratdyn/ball.hpp"
#include "ratdyn/gaussrat.hpp"

namespace ratdyn {

// Dense univariate polynomial over Q(i), coefficients lowest degree first.
// The zero polynomial has an empty coefficient vector and degree -1.
class Poly {
public:
    Poly() = default;
    Poly(const GaussRat& c);
    explicit Poly(std::vector<GaussRat> coeffs);

    static Poly zero() { return Poly(); }
    static Poly one() { return Poly(GaussRat(1)); }
    static Poly z();
    // c0 + c1*z + ... (convenience for small long-valued examples)
    static Poly from_ints(std::initializer_list<long> coeffs);

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    const GaussRat& coeff(int k) const;          // zero beyond the degree
    const std::vector<GaussRat>& coeffs() const { return c_; }
    const GaussRat& lc() const;                  // leading coefficient, nonzero poly only

    Poly operator-() const;
    Poly operator+(const Poly&) const;
    Poly operator-(const Poly&) const;
    Poly operator*(const Poly&) const;
    Poly operator*(const GaussRat&) const;
    bool operator==(const Poly&) const = default;

    Poly derivative() const;
    Poly monic() const;
    Poly pow(unsigned e) const;
    // multiply by z^k
    Poly shifted(int k) const;

    GaussRat eval(const GaussRat& x) const;
    ComplexBall eval_ball(const ComplexBall& x) const;
    std::vector<ComplexBall> ball_coeffs(mpfr_prec_t prec) const;

    std::string str(const std::string& var = "z") const;

private:
    std::vector<GaussRat> c_;
    void trim();
};

// Euclidean division over the field Q(i): f = q*g + r with deg r < deg g.
std::pair<Poly, Poly> divrem(const Poly& f, const Poly& g);
// exact quotient, aborts if the division leaves a remainder
Poly divexact(const Poly& f, const Poly& g);
// monic gcd (1 for coprime, 0 iff both zero)
Poly gcd(const Poly& f, const Poly& g);

// Yun decomposition: pairwise-coprime squarefree factors with multiplicities;
// the product of factor^multiplicity equals f up to a constant.
std::vector<std::pair<Poly, int>> squarefree_decomposition(const Poly& f);
Poly squarefree_part(const Poly& f);

// Homogenized substitution: (N, D) with N/D = f(num/den), D = den^(deg f).
// No common-factor removal is performed.
std::pair<Poly, Poly> compose_frac(const Poly& f, const Poly& num, const Poly& den);

// Sylvester resultant at formal degrees (deg_f_hint, deg_g_hint) >= actual
// degrees; rows are padded exactly as in the determinant definition, so the
// value accounts for degree drops.
GaussRat resultant(const Poly& f, const Poly& g, int deg_f_hint, int deg_g_hint);

// R(t) = Res_{df,dg,z}(f(z), g0(z) + t*g1(z)), computed by evaluation at
// df+1 integer nodes and exact interpolation (deg_t R <= df).
Poly resultant_in_t(const Poly& f, const Poly& g0, const Poly& g1, int df, int dg);

// exact interpolation through distinct rational nodes
Poly interpolate(const std::vector<GaussRat>& xs, const std::vector<GaussRat>& ys);

} // namespace ratdyn

#endif
