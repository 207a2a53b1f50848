#include "ratdyn/numeric.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace ratdyn {

namespace {

using CD = std::complex<double>;

// coefficients scaled by a common power of two so the largest component
// magnitude is about 1; scaling does not move the roots
std::vector<CD> scaled_double_coeffs(const Poly& f) {
    long emax = LONG_MIN;
    auto exp_of = [](const mpq_class& q) -> long {
        if (sgn(q) == 0) return LONG_MIN;
        return static_cast<long>(mpz_sizeinbase(q.get_num().get_mpz_t(), 2)) -
               static_cast<long>(mpz_sizeinbase(q.get_den().get_mpz_t(), 2));
    };
    for (const auto& c : f.coeffs()) {
        emax = std::max(emax, exp_of(c.re));
        emax = std::max(emax, exp_of(c.im));
    }
    std::vector<CD> out(f.coeffs().size());
    if (emax == LONG_MIN) return out;
    mpq_class scale(1);
    mpz_ui_pow_ui(scale.get_num().get_mpz_t(), 2,
                  static_cast<unsigned long>(emax < 0 ? -emax : emax));
    if (emax > 0) scale = 1 / scale;
    scale.canonicalize();
    for (std::size_t i = 0; i < out.size(); ++i) {
        const GaussRat& c = f.coeffs()[i];
        out[i] = CD(mpq_class(c.re * scale).get_d(), mpq_class(c.im * scale).get_d());
    }
    return out;
}

CD eval_cd(const std::vector<CD>& c, CD x) {
    CD acc = 0;
    for (std::size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
    return acc;
}

std::vector<CD> aberth_double(const std::vector<CD>& c) {
    int n = static_cast<int>(c.size()) - 1;
    std::vector<CD> dc(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i)
        dc[static_cast<std::size_t>(i - 1)] = double(i) * c[static_cast<std::size_t>(i)];

    double lead = std::abs(c.back());
    double maxq = 0;
    for (int i = 0; i < n; ++i)
        maxq = std::max(maxq, std::abs(c[static_cast<std::size_t>(i)]) / lead);
    double radius = std::clamp(1.0 + maxq, 0.5, 1e8);

    std::vector<CD> z(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        double ang = 2.0 * M_PI * k / n + 0.39;
        z[static_cast<std::size_t>(k)] = radius * CD(std::cos(ang), std::sin(ang));
    }
    for (int iter = 0; iter < 400; ++iter) {
        double worst = 0;
        for (int k = 0; k < n; ++k) {
            CD zk = z[static_cast<std::size_t>(k)];
            CD p = eval_cd(c, zk), dp = eval_cd(dc, zk);
            if (std::abs(dp) == 0.0) {
                z[static_cast<std::size_t>(k)] += CD(1e-7, 2e-7);
                worst = 1;
                continue;
            }
            CD w = p / dp;
            CD s = 0;
            for (int j = 0; j < n; ++j) {
                if (j == k) continue;
                CD d = zk - z[static_cast<std::size_t>(j)];
                if (std::abs(d) < 1e-300) d = CD(1e-300, 0);
                s += 1.0 / d;
            }
            CD denom = 1.0 - w * s;
            CD corr = (std::abs(denom) < 1e-300) ? w : w / denom;
            z[static_cast<std::size_t>(k)] -= corr;
            worst = std::max(worst, std::abs(corr) / (1.0 + std::abs(zk)));
        }
        if (worst < 1e-14) break;
    }
    return z;
}

} // namespace

ComplexBall newton_polish(const Poly& f, const ComplexBall& x0, int steps) {
    Poly fp = f.derivative();
    ComplexBall x = x0.center_ball();
    for (int s = 0; s < steps; ++s) {
        ComplexBall fx = f.eval_ball(x).center_ball();
        ComplexBall dfx = fp.eval_ball(x).center_ball();
        if (!dfx.certainly_nonzero()) break;
        x = (x - fx / dfx).center_ball();
    }
    return x;
}

std::vector<ComplexBall> approx_roots(const Poly& f, mpfr_prec_t prec) {
    int n = f.degree();
    std::vector<ComplexBall> out;
    if (n <= 0) return out;
    if (n == 1) {
        GaussRat root = -(f.coeff(0) / f.coeff(1));
        out.push_back(ComplexBall::exact(root, prec).center_ball());
        return out;
    }
    std::vector<CD> cd = scaled_double_coeffs(f);
    std::vector<CD> z = aberth_double(cd);
    out.reserve(z.size());
    int polish_steps = 4;
    for (mpfr_prec_t p = 64; p < prec; p *= 2) ++polish_steps;
    for (const CD& r : z) {
        if (!std::isfinite(r.real()) || !std::isfinite(r.imag())) continue;
        ComplexBall seed =
            ComplexBall::from_q(mpq_class(r.real()), mpq_class(r.imag()), mpq_class(0), prec);
        out.push_back(newton_polish(f, seed, polish_steps + 4));
    }
    return out;
}

std::optional<ComplexBall> newton_certify(const std::vector<ComplexBall>& f,
                                          const std::vector<ComplexBall>& fp,
                                          const ComplexBall& disk) {
    ComplexBall c = disk.center_ball();
    ComplexBall fc = eval_ball_poly(f, c);
    ComplexBall dfd = eval_ball_poly(fp, disk);
    if (!dfd.certainly_nonzero()) return std::nullopt;
    ComplexBall e = c - fc / dfd;
    if (!disk.contains_inner(e)) return std::nullopt;
    return e;
}

std::optional<ComplexBall> newton_certify(const Poly& f, const ComplexBall& disk) {
    return newton_certify(f.ball_coeffs(disk.prec()),
                          f.derivative().ball_coeffs(disk.prec()), disk);
}

ComplexBall newton_refine(const Poly& f, const ComplexBall& box,
                          const mpq_class& target_radius, const Context& ctx) {
    ComplexBall cur = box;
    if (cur.radius_q() <= target_radius) return cur;
    mpfr_prec_t prec = std::max<mpfr_prec_t>(cur.prec(), ctx.precision);
    while (true) {
        ComplexBall x = newton_polish(f, cur.at_prec(prec), 6);
        GaussRat drift = x.center_q() - cur.center_q();
        mpq_class room = cur.radius_q();
        if (drift.norm() * 4 > room * room) x = cur.center_ball().at_prec(prec);
        mpq_class rad = cur.radius_q() / 4;
        while (rad > target_radius && rad > room / 1024) rad /= 4;
        bool progressed = false;
        for (int attempt = 0; attempt < 8; ++attempt) {
            GaussRat d = x.center_q() - cur.center_q();
            mpq_class slack = cur.radius_q() - rad;
            if (sgn(slack) < 0 || d.norm() > slack * slack) break; // would leave the box
            auto cert = newton_certify(f, x.widened(rad));
            if (cert && cur.radius_q() > cert->radius_q()) {
                cur = *cert;
                progressed = true;
                break;
            }
            rad *= 4;
        }
        if (cur.radius_q() <= target_radius) return cur;
        if (!progressed) {
            if (prec >= ctx.precision_cap) throw precision_cap_error();
            prec = std::min(prec * 2, ctx.precision_cap);
        }
    }
}

mpq_class simplest_rational_in(const mpq_class& lo, const mpq_class& hi) {
    if (lo > hi) throw std::logic_error("simplest_rational_in: empty interval");
    if (sgn(lo) <= 0 && sgn(hi) >= 0) return mpq_class(0);
    if (sgn(hi) < 0) return -simplest_rational_in(-hi, -lo);
    mpz_class fl = lo.get_num() / lo.get_den(); // floor (lo > 0)
    if (mpq_class(fl + 1) <= hi) return mpq_class(fl + 1);
    if (mpq_class(fl) == lo) return lo;
    mpq_class inner = simplest_rational_in(1 / (hi - fl), 1 / (lo - fl));
    return mpq_class(fl) + 1 / inner;
}

std::vector<ComplexBall> nullspace_vector(std::vector<std::vector<ComplexBall>> rows,
                                          std::size_t cols) {
    mpfr_prec_t prec = 64;
    for (const auto& r : rows)
        for (const auto& c : r) prec = std::max(prec, c.prec());
    for (auto& r : rows)
        for (auto& c : r) c = c.center_ball();

    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t col = 0; col < cols && r < rows.size(); ++col) {
        std::size_t best = r;
        mpq_class mag(-1);
        for (std::size_t i = r; i < rows.size(); ++i) {
            mpq_class m = rows[i][col].abs_lower_q();
            if (m > mag) {
                mag = m;
                best = i;
            }
        }
        if (sgn(mag) <= 0) continue;
        std::swap(rows[r], rows[best]);
        ComplexBall inv = rows[r][col].inv();
        for (std::size_t c = col; c < cols; ++c) rows[r][c] = (rows[r][c] * inv).center_ball();
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r) continue;
            ComplexBall f = rows[i][col];
            if (!f.certainly_nonzero()) continue;
            for (std::size_t c = col; c < cols; ++c)
                rows[i][c] = (rows[i][c] - f * rows[r][c]).center_ball();
        }
        pivot_col.push_back(col);
        ++r;
    }
    // free column: the first non-pivot one
    std::vector<bool> is_pivot(cols, false);
    for (auto c : pivot_col) is_pivot[c] = true;
    std::size_t free_col = cols;
    for (std::size_t c = 0; c < cols; ++c)
        if (!is_pivot[c]) {
            free_col = c;
            break;
        }
    std::vector<ComplexBall> v(cols, ComplexBall(prec));
    if (free_col == cols) return v; // full rank: no kernel direction
    v[free_col] = ComplexBall::exact(GaussRat(1), prec);
    for (std::size_t i = 0; i < pivot_col.size(); ++i)
        v[pivot_col[i]] = -rows[i][free_col];
    return v;
}

std::optional<GaussRat> reconstruct_gaussrat(const ComplexBall& b) {
    mpq_class r = b.radius_q();
    GaussRat c = b.center_q();
    if (sgn(r) == 0) return c;
    if (r >= mpq_class(1, 1024)) return std::nullopt;
    GaussRat cand(simplest_rational_in(c.re - r, c.re + r),
                  simplest_rational_in(c.im - r, c.im + r));
    std::size_t rbits = mpz_sizeinbase(r.get_den().get_mpz_t(), 2);
    std::size_t dbits = std::max(mpz_sizeinbase(cand.re.get_den().get_mpz_t(), 2),
                                 mpz_sizeinbase(cand.im.get_den().get_mpz_t(), 2));
    if (dbits * 2 + 8 > rbits) return std::nullopt;
    return cand;
}

} // namespace ratdyn
