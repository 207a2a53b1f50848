#include "ratdyn/monodromy.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <set>

#include "ratdyn/orbifold.hpp"
#include "ratdyn/symmetry.hpp"
#include "track.hpp"

namespace ratdyn {

RatMap Decomposition::recompose(const Context& ctx) const {
    if (factors.empty()) throw precondition_error("empty decomposition");
    (void)ctx;
    RatMap acc = factors.front();
    for (std::size_t i = 1; i < factors.size(); ++i) acc = compose_maps(factors[i], acc);
    return acc;
}

std::vector<int> Decomposition::degrees() const {
    std::vector<int> d;
    d.reserve(factors.size());
    for (const auto& f : factors) d.push_back(f.degree());
    return d;
}

namespace {

GaussRat dyadic_of(double re, double im) { return GaussRat(mpq_class(re), mpq_class(im)); }

std::vector<int> compose_perm(const std::vector<int>& first, const std::vector<int>& then) {
    std::vector<int> r(first.size());
    for (std::size_t i = 0; i < first.size(); ++i)
        r[i] = then[static_cast<std::size_t>(first[i])];
    return r;
}

bool is_identity_perm(const std::vector<int>& p) {
    for (std::size_t i = 0; i < p.size(); ++i)
        if (p[i] != static_cast<int>(i)) return false;
    return true;
}

// assign each tracked end ball to the base point it landed on
std::optional<std::vector<int>> match_perm(const std::vector<ComplexBall>& end,
                                           const std::vector<AlgebraicPoint>& base) {
    std::vector<int> perm(end.size(), -1);
    std::vector<bool> used(base.size(), false);
    for (std::size_t i = 0; i < end.size(); ++i) {
        int hit = -1;
        for (std::size_t j = 0; j < base.size(); ++j) {
            if (end[i].disjoint(base[j].box())) continue;
            if (hit >= 0) return std::nullopt;
            hit = static_cast<int>(j);
        }
        if (hit < 0 || used[static_cast<std::size_t>(hit)]) return std::nullopt;
        used[static_cast<std::size_t>(hit)] = true;
        perm[i] = hit;
    }
    return perm;
}

struct LoopPlan {
    std::vector<GaussRat> waypoints;
};

struct MonodromyData {
    std::vector<std::vector<int>> gens;
    GaussRat base;
    std::vector<AlgebraicPoint> fiber;
    mpq_class clearance;
};

std::optional<MonodromyData> monodromy_once(const RatMap& a,
                                            const std::vector<AlgebraicPoint>& vals,
                                            mpfr_prec_t prec, int attempt,
                                            const Context& ctx) {
    int m = a.degree();
    bool inf_critical = false;
    std::vector<ComplexBall> avoid;
    for (const auto& v : vals) {
        if (v.is_infinity()) {
            inf_critical = true;
            continue;
        }
        avoid.push_back(v.box());
    }
    if (auto ainf = a.eval_infinity())
        avoid.push_back(ComplexBall::exact(*ainf, prec));

    // base point on a circle comfortably outside the critical values
    double bigr = 4.0;
    for (const auto& b : avoid)
        bigr = std::max(bigr, 2.5 * (std::abs(b.center_re_d()) + std::abs(b.center_im_d())) + 4.0);
    SplitMix64 rng(ctx.seed * 0x9e37u + 77u * static_cast<std::uint64_t>(attempt) + 13u);
    double theta = 2.0 * M_PI * static_cast<double>(rng.next_in(0, 127)) / 128.0 + 0.1903;
    GaussRat w0 = dyadic_of(bigr * std::cos(theta), bigr * std::sin(theta));
    Poly f0 = a.num() - a.den() * w0;
    if (f0.degree() != m || gcd(f0, f0.derivative()).degree() > 0) return std::nullopt;

    Context local = ctx;
    local.precision = prec;
    std::vector<AlgebraicPoint> fiber0 = isolate_roots(f0, local);
    if (static_cast<int>(fiber0.size()) != m) return std::nullopt;
    mpq_class tiny(1, mpz_class(1) << std::max<long>(32, prec / 3));
    for (auto& p : fiber0) p = ball_refine(p, tiny, local);
    std::vector<ComplexBall> start;
    for (const auto& p : fiber0) start.push_back(p.box());

    // clearance of the base point from the avoid set
    mpq_class clearance(-1);
    GaussRat w0q = w0;
    for (const auto& b : avoid) {
        mpq_class d2 = (w0q - b.center_q()).norm();
        if (clearance < 0 || d2 < clearance) clearance = d2;
    }

    // angle-sorted lassos around the finite critical values
    struct Finite {
        double ang;
        double dist;
        std::size_t idx;
        double re, im, rad;
    };
    std::vector<Finite> lassos;
    double w0re = bigr * std::cos(theta), w0im = bigr * std::sin(theta);
    std::vector<std::size_t> finite_idx;
    for (std::size_t i = 0; i < vals.size(); ++i)
        if (!vals[i].is_infinity()) finite_idx.push_back(i);
    for (std::size_t fi = 0; fi < finite_idx.size(); ++fi) {
        const auto& b = vals[finite_idx[fi]].box();
        double re = b.center_re_d(), im = b.center_im_d();
        double mind = 1e300;
        for (std::size_t j = 0; j < avoid.size(); ++j) {
            double dre = re - avoid[j].center_re_d(), dim = im - avoid[j].center_im_d();
            double d = std::hypot(dre, dim);
            if (d > 1e-30) mind = std::min(mind, d);
        }
        double dw = std::hypot(re - w0re, im - w0im);
        mind = std::min(mind, dw);
        double rad = std::min(mind / 3.0, dw / 4.0);
        lassos.push_back({std::atan2(im - w0im, re - w0re), dw, fi, re, im, rad});
    }
    std::sort(lassos.begin(), lassos.end(), [](const Finite& x, const Finite& y) {
        if (x.ang != y.ang) return x.ang < y.ang;
        if (x.dist != y.dist) return x.dist < y.dist;
        return x.idx < y.idx;
    });
    // near-coincident departure angles make the ordering unreliable
    for (std::size_t i = 0; i + 1 < lassos.size(); ++i)
        if (std::abs(lassos[i].ang - lassos[i + 1].ang) < 1e-6) return std::nullopt;

    const int arc = 12;
    std::vector<std::vector<int>> gens;
    for (const auto& L : lassos) {
        // straight segment to the rim, a counterclockwise circle, and back
        double ux = (w0re - L.re), uy = (w0im - L.im);
        double un = std::hypot(ux, uy);
        ux /= un;
        uy /= un;
        double phi0 = std::atan2(uy, ux);
        LoopPlan plan;
        plan.waypoints.push_back(w0);
        GaussRat rim = dyadic_of(L.re + L.rad * ux, L.im + L.rad * uy);
        plan.waypoints.push_back(rim);
        for (int j = 1; j < arc; ++j) {
            double ph = phi0 + 2.0 * M_PI * j / arc;
            plan.waypoints.push_back(
                dyadic_of(L.re + L.rad * std::cos(ph), L.im + L.rad * std::sin(ph)));
        }
        plan.waypoints.push_back(rim);
        plan.waypoints.push_back(w0);
        auto end = track::polyline(a.num(), a.den(), plan.waypoints, start, prec);
        if (!end) return std::nullopt;
        auto perm = match_perm(*end, fiber0);
        if (!perm) return std::nullopt;
        gens.push_back(std::move(*perm));
    }
    if (inf_critical) {
        // clockwise big circle: the positively-oriented loop around infinity
        LoopPlan plan;
        plan.waypoints.push_back(w0);
        for (int j = 1; j < 2 * arc; ++j) {
            double ph = theta - 2.0 * M_PI * j / (2 * arc);
            plan.waypoints.push_back(dyadic_of(bigr * std::cos(ph), bigr * std::sin(ph)));
        }
        plan.waypoints.push_back(w0);
        auto end = track::polyline(a.num(), a.den(), plan.waypoints, start, prec);
        if (!end) return std::nullopt;
        auto perm = match_perm(*end, fiber0);
        if (!perm) return std::nullopt;
        gens.push_back(std::move(*perm));
    }

    // the concatenation of all loops in listed order is nullhomotopic
    std::vector<int> prod(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) prod[static_cast<std::size_t>(i)] = i;
    for (const auto& g : gens) prod = compose_perm(prod, g);
    if (!is_identity_perm(prod)) return std::nullopt;

    MonodromyData data;
    data.gens = std::move(gens);
    data.base = w0;
    data.fiber = std::move(fiber0);
    data.clearance = clearance;
    return data;
}

} // namespace

PermGroup monodromy_group(const RatMap& a, mpfr_prec_t precision, const Context& ctx) {
    if (a.degree() < 2) throw precondition_error("monodromy requires degree >= 2");
    if (a.degree() > ctx.degree_cap) throw overflow_guard_error();
    std::vector<AlgebraicPoint> vals = critical_values(a, ctx);
    // sharpen the critical-value boxes once for the geometry
    Context local = ctx;
    local.precision = std::max<mpfr_prec_t>(precision, ctx.precision);
    for (auto& v : vals)
        if (!v.is_infinity()) v = ball_refine(v, mpq_class(1, mpz_class(1) << 48), local);

    for (int attempt = 0; attempt < 5; ++attempt) {
        auto lo = monodromy_once(a, vals, precision, attempt, ctx);
        if (!lo) continue;
        // the permutation data must be reproducible at doubled precision
        auto hi = monodromy_once(a, vals, precision * 2, attempt, ctx);
        if (!hi) continue;
        if (lo->gens != hi->gens) throw precision_cap_error("monodromy unstable");
        PermGroup g;
        g.degree = a.degree();
        g.generators = std::move(lo->gens);
        g.base_point = ComplexBall::exact(lo->base, precision);
        for (const auto& p : lo->fiber) g.fiber_labels.push_back(p.box());
        return g;
    }
    throw near_critical_error();
}

bool is_transitive(const PermGroup& g) {
    std::vector<bool> seen(static_cast<std::size_t>(g.degree), false);
    std::vector<int> stack{0};
    seen[0] = true;
    int count = 1;
    while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        for (const auto& gen : g.generators) {
            int y = gen[static_cast<std::size_t>(x)];
            if (!seen[static_cast<std::size_t>(y)]) {
                seen[static_cast<std::size_t>(y)] = true;
                ++count;
                stack.push_back(y);
            }
        }
    }
    return count == g.degree;
}

unsigned long group_order(const PermGroup& g, unsigned long cap) {
    std::set<std::vector<int>> elems;
    std::vector<int> id(static_cast<std::size_t>(g.degree));
    for (int i = 0; i < g.degree; ++i) id[static_cast<std::size_t>(i)] = i;
    elems.insert(id);
    std::vector<std::vector<int>> frontier{id};
    while (!frontier.empty()) {
        std::vector<std::vector<int>> next;
        for (const auto& e : frontier)
            for (const auto& gen : g.generators) {
                std::vector<int> f = compose_perm(e, gen);
                if (elems.insert(f).second) {
                    if (elems.size() > cap) return 0;
                    next.push_back(std::move(f));
                }
            }
        frontier = std::move(next);
    }
    return elems.size();
}

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) {
        for (int i = 0; i < n; ++i) parent[static_cast<std::size_t>(i)] = i;
    }
    int find(int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    }
    bool unite(int x, int y) {
        int rx = find(x), ry = find(y);
        if (rx == ry) return false;
        parent[static_cast<std::size_t>(rx)] = ry;
        return true;
    }
};

std::vector<std::vector<int>> cells_of(UnionFind& uf, int n) {
    std::map<int, std::vector<int>> groups;
    for (int i = 0; i < n; ++i) groups[uf.find(i)].push_back(i);
    std::vector<std::vector<int>> cells;
    for (auto& [root, cell] : groups) cells.push_back(std::move(cell));
    std::sort(cells.begin(), cells.end());
    return cells;
}

// minimal block system whose block contains {0, j}
std::vector<std::vector<int>> minimal_blocks(const std::vector<std::vector<int>>& gens,
                                             int n, int j) {
    UnionFind uf(n);
    std::vector<std::pair<int, int>> queue{{0, j}};
    uf.unite(0, j);
    while (!queue.empty()) {
        auto [x, y] = queue.back();
        queue.pop_back();
        for (const auto& g : gens) {
            int gx = g[static_cast<std::size_t>(x)], gy = g[static_cast<std::size_t>(y)];
            if (uf.unite(gx, gy)) queue.emplace_back(gx, gy);
        }
    }
    return cells_of(uf, n);
}

bool refines(const BlockSystem& fine, const BlockSystem& coarse) {
    for (const auto& cell : fine.blocks) {
        bool inside = false;
        for (const auto& big : coarse.blocks)
            if (std::includes(big.begin(), big.end(), cell.begin(), cell.end())) {
                inside = true;
                break;
            }
        if (!inside) return false;
    }
    return true;
}

void all_systems(const std::vector<std::vector<int>>& gens, int n,
                 std::set<std::vector<std::vector<int>>>& out) {
    for (int j = 1; j < n; ++j) {
        auto cells = minimal_blocks(gens, n, j);
        std::size_t size = cells[0].size();
        if (size <= 1 || static_cast<int>(size) >= n) continue;
        if (!out.insert(cells).second) continue;
        // recurse on the quotient action and lift its systems
        int q = static_cast<int>(cells.size());
        std::map<int, int> cell_of;
        for (int c = 0; c < q; ++c)
            for (int x : cells[static_cast<std::size_t>(c)]) cell_of[x] = c;
        std::vector<std::vector<int>> qgens;
        for (const auto& g : gens) {
            std::vector<int> qg(static_cast<std::size_t>(q));
            for (int c = 0; c < q; ++c)
                qg[static_cast<std::size_t>(c)] =
                    cell_of[g[static_cast<std::size_t>(cells[static_cast<std::size_t>(c)][0])]];
            qgens.push_back(std::move(qg));
        }
        std::set<std::vector<std::vector<int>>> qsys;
        all_systems(qgens, q, qsys);
        for (const auto& qs : qsys) {
            std::vector<std::vector<int>> lifted;
            for (const auto& qcell : qs) {
                std::vector<int> big;
                for (int c : qcell)
                    for (int x : cells[static_cast<std::size_t>(c)]) big.push_back(x);
                std::sort(big.begin(), big.end());
                lifted.push_back(std::move(big));
            }
            std::sort(lifted.begin(), lifted.end());
            out.insert(lifted);
        }
    }
}

} // namespace

std::vector<BlockSystem> block_systems(const PermGroup& g) {
    if (!is_transitive(g)) throw precondition_error("block systems need a transitive group");
    std::set<std::vector<std::vector<int>>> found;
    all_systems(g.generators, g.degree, found);
    std::vector<BlockSystem> out;
    for (auto& cells : found) out.push_back(BlockSystem{cells});
    std::sort(out.begin(), out.end(), [](const BlockSystem& x, const BlockSystem& y) {
        if (x.block_size() != y.block_size()) return x.block_size() < y.block_size();
        return x.blocks < y.blocks;
    });
    return out;
}

std::optional<RatMap> left_quotient(const RatMap& target, const RatMap& right,
                                    const Context& ctx) {
    (void)ctx;
    if (target.degree() % right.degree() != 0) return std::nullopt;
    int s = target.degree() / right.degree();
    // T_j = Wn^j Wd^(s-j)
    std::vector<Poly> t(static_cast<std::size_t>(s) + 1);
    for (int j = 0; j <= s; ++j)
        t[static_cast<std::size_t>(j)] =
            right.num().pow(static_cast<unsigned>(j)) *
            right.den().pow(static_cast<unsigned>(s - j));
    // rows: coefficients of F_num * sum D_j T_j - F_den * sum N_j T_j = 0
    std::vector<Poly> dcols(static_cast<std::size_t>(s) + 1),
        ncols(static_cast<std::size_t>(s) + 1);
    int maxdeg = 0;
    for (int j = 0; j <= s; ++j) {
        dcols[static_cast<std::size_t>(j)] = target.num() * t[static_cast<std::size_t>(j)];
        ncols[static_cast<std::size_t>(j)] = -(target.den() * t[static_cast<std::size_t>(j)]);
        maxdeg = std::max({maxdeg, dcols[static_cast<std::size_t>(j)].degree(),
                           ncols[static_cast<std::size_t>(j)].degree()});
    }
    std::size_t cols = 2 * static_cast<std::size_t>(s) + 2;
    std::vector<std::vector<GaussRat>> m(static_cast<std::size_t>(maxdeg) + 1,
                                         std::vector<GaussRat>(cols));
    for (int r = 0; r <= maxdeg; ++r)
        for (int j = 0; j <= s; ++j) {
            m[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)] =
                dcols[static_cast<std::size_t>(j)].coeff(r);
            m[static_cast<std::size_t>(r)][static_cast<std::size_t>(s + 1 + j)] =
                ncols[static_cast<std::size_t>(j)].coeff(r);
        }
    // exact kernel by Gaussian elimination
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
        std::size_t piv = row;
        while (piv < m.size() && m[piv][col].is_zero()) ++piv;
        if (piv == m.size()) continue;
        std::swap(m[piv], m[row]);
        GaussRat inv = m[row][col].inv();
        for (std::size_t c = col; c < cols; ++c) m[row][c] *= inv;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == row || m[i][col].is_zero()) continue;
            GaussRat f = m[i][col];
            for (std::size_t c = col; c < cols; ++c) m[i][c] -= f * m[row][c];
        }
        pivots.push_back(col);
        ++row;
    }
    std::vector<bool> is_pivot(cols, false);
    for (auto c : pivots) is_pivot[c] = true;
    for (std::size_t free_col = 0; free_col < cols; ++free_col) {
        if (is_pivot[free_col]) continue;
        std::vector<GaussRat> v(cols);
        v[free_col] = GaussRat(1);
        for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -m[i][free_col];
        std::vector<GaussRat> dc(v.begin(), v.begin() + s + 1);
        std::vector<GaussRat> nc(v.begin() + s + 1, v.end());
        try {
            RatMap u{Poly(nc), Poly(dc)};
            if (u.degree() == s && compose_maps(u, right) == target) return u;
        } catch (const degenerate_map_error&) {
        }
    }
    return std::nullopt;
}

namespace {

std::optional<GaussRat> reconstruct_windowed(const ComplexBall& v, mpfr_prec_t prec) {
    mpq_class window(1);
    for (mpfr_prec_t k = 0; k * 5 < prec * 2; ++k) window /= 2;
    return reconstruct_gaussrat(v.widened(window));
}

} // namespace

namespace {

// restore the group's fiber labelling on a freshly isolated fiber
std::optional<std::vector<ComplexBall>> relabel_fiber(std::vector<AlgebraicPoint> fresh,
                                                      const std::vector<ComplexBall>& labels,
                                                      mpfr_prec_t prec, const Context& ctx) {
    if (fresh.size() != labels.size()) return std::nullopt;
    Context local = ctx;
    local.precision = prec;
    std::vector<ComplexBall> out(fresh.size(), ComplexBall(prec));
    std::vector<bool> used(fresh.size(), false);
    for (std::size_t i = 0; i < labels.size(); ++i) {
        int hit = -1;
        for (std::size_t j = 0; j < fresh.size(); ++j) {
            if (used[j] || labels[i].disjoint(fresh[j].box())) continue;
            if (hit >= 0) return std::nullopt;
            hit = static_cast<int>(j);
        }
        if (hit < 0) return std::nullopt;
        used[static_cast<std::size_t>(hit)] = true;
        out[i] = ball_refine(fresh[static_cast<std::size_t>(hit)],
                             mpq_class(1, mpz_class(1) << (prec / 3)), local)
                     .box();
    }
    return out;
}

} // namespace

std::optional<std::pair<RatMap, RatMap>> right_factor_from_blocks(const RatMap& a,
                                                                  const PermGroup& g,
                                                                  const BlockSystem& bs,
                                                                  mpfr_prec_t precision,
                                                                  const Context& ctx) {
    int k = static_cast<int>(bs.block_size()); // degree of the right factor
    std::vector<int> home;                     // the block containing label 0
    for (const auto& cell : bs.blocks)
        if (std::find(cell.begin(), cell.end(), 0) != cell.end()) home = cell;
    if (home.empty()) throw precondition_error("block system has no cell containing 0");

    GaussRat w0 = g.base_point.center_q();
    // clearance of the sampling circle from the critical data
    std::vector<AlgebraicPoint> vals = critical_values(a, ctx);
    double w0re = g.base_point.center_re_d(), w0im = g.base_point.center_im_d();
    double mind = 1e300;
    for (const auto& v : vals) {
        if (v.is_infinity()) continue;
        mind = std::min(mind, std::hypot(w0re - v.box().center_re_d(),
                                         w0im - v.box().center_im_d()));
    }
    if (auto ainf = a.eval_infinity()) {
        ComplexBall b = ComplexBall::exact(*ainf, 64);
        mind = std::min(mind, std::hypot(w0re - b.center_re_d(), w0im - b.center_im_d()));
    }
    double r0 = std::min(mind / 4.0, 1.0 + std::hypot(w0re, w0im) / 8.0);

    int samples = 2 * k + 6;
    Poly f0 = a.num() - a.den() * w0;
    for (mpfr_prec_t prec = precision;; prec = std::min(prec * 2, ctx.precision_cap)) {
        Context local = ctx;
        local.precision = prec;
        auto start = relabel_fiber(isolate_roots(f0, local), g.fiber_labels, prec, ctx);
        if (start) {
            // one pass around a small circle, keeping every fiber snapshot
            std::vector<std::vector<ComplexBall>> snaps{*start};
            GaussRat wprev = w0;
            bool good = true;
            for (int t = 1; t <= samples && good; ++t) {
                double ph = 2.0 * M_PI * t / (samples + 1);
                GaussRat wt = GaussRat(mpq_class(w0re + r0 * (std::cos(ph) - 1.0)),
                                       mpq_class(w0im + r0 * std::sin(ph)));
                auto moved = track::polyline(a.num(), a.den(), {wprev, wt}, snaps.back(), prec);
                if (!moved) {
                    good = false;
                    break;
                }
                snaps.push_back(std::move(*moved));
                wprev = wt;
            }
            if (good) {
                for (std::size_t ej = 1; ej <= home.size(); ++ej) {
                    // samples (x_t, e_ej(home block)) and a degree-k fit
                    std::size_t cols = 2 * static_cast<std::size_t>(k) + 2;
                    std::vector<std::vector<ComplexBall>> rows;
                    for (const auto& snap : snaps) {
                        std::vector<ComplexBall> esym{ComplexBall::exact(GaussRat(1), prec)};
                        for (int idx : home) {
                            const ComplexBall& b = snap[static_cast<std::size_t>(idx)];
                            std::vector<ComplexBall> nxt(esym.size() + 1, ComplexBall(prec));
                            for (std::size_t q = 0; q < esym.size(); ++q) {
                                nxt[q] = nxt[q] + esym[q];
                                nxt[q + 1] = nxt[q + 1] + esym[q] * b;
                            }
                            esym = std::move(nxt);
                        }
                        const ComplexBall& x = snap[0];
                        const ComplexBall& y = esym[ej];
                        std::vector<ComplexBall> rowv;
                        ComplexBall p = ComplexBall::exact(GaussRat(1), prec);
                        for (int q = 0; q <= k; ++q) {
                            rowv.push_back(p);
                            p = p * x;
                        }
                        p = -y;
                        for (int q = 0; q <= k; ++q) {
                            rowv.push_back(p);
                            p = p * x;
                        }
                        rows.push_back(std::move(rowv));
                    }
                    std::vector<ComplexBall> v = nullspace_vector(std::move(rows), cols);
                    std::size_t pivot = cols;
                    mpq_class best(0);
                    for (std::size_t i = 0; i < cols; ++i) {
                        mpq_class mag = v[i].abs_lower_q();
                        if (mag > best) {
                            best = mag;
                            pivot = i;
                        }
                    }
                    if (pivot == cols) continue;
                    ComplexBall inv = v[pivot].inv();
                    std::vector<GaussRat> ncs(static_cast<std::size_t>(k) + 1),
                        dcs(static_cast<std::size_t>(k) + 1);
                    bool recon = true;
                    for (std::size_t i = 0; i < cols && recon; ++i) {
                        auto c = reconstruct_windowed(v[i] * inv, prec);
                        if (!c) {
                            recon = false;
                            break;
                        }
                        if (i <= static_cast<std::size_t>(k)) ncs[i] = *c;
                        else dcs[i - static_cast<std::size_t>(k) - 1] = *c;
                    }
                    if (!recon) continue;
                    try {
                        RatMap w{Poly(ncs), Poly(dcs)};
                        if (w.degree() != k) continue;
                        auto u = left_quotient(a, w, ctx);
                        if (u) return std::make_pair(std::move(w), std::move(*u));
                    } catch (const degenerate_map_error&) {
                    }
                }
            }
        }
        if (prec >= ctx.precision_cap) return std::nullopt;
    }
}

std::vector<Decomposition> decompositions_of_iterate(const RatMap& a, int n,
                                                     const Context& ctx) {
    if (a.degree() != 2 && a.degree() != 3)
        throw precondition_error("decompositions_of_iterate requires degree 2 or 3");
    if (n < 1) throw precondition_error("n must be >= 1");
    if (n == 1) {
        Decomposition d;
        d.factors.push_back(a);
        return {d};
    }
    RatMap f = iterate(a, n, ctx);
    PermGroup g = monodromy_group(f, std::max<mpfr_prec_t>(ctx.precision, 192), ctx);
    std::vector<BlockSystem> systems = block_systems(g);

    // maximal chains in the refinement order, finest first
    std::vector<std::vector<std::size_t>> chains;
    std::size_t count = systems.size();
    auto strictly_refines = [&](std::size_t x, std::size_t y) {
        return systems[x].block_size() < systems[y].block_size() &&
               refines(systems[x], systems[y]);
    };
    auto covers = [&](std::size_t x, std::size_t y) {
        if (!strictly_refines(x, y)) return false;
        for (std::size_t z = 0; z < count; ++z)
            if (z != x && z != y && strictly_refines(x, z) && strictly_refines(z, y))
                return false;
        return true;
    };
    std::vector<std::size_t> minimal, maximal;
    for (std::size_t i = 0; i < count; ++i) {
        bool has_below = false, has_above = false;
        for (std::size_t j = 0; j < count; ++j) {
            if (j == i) continue;
            if (strictly_refines(j, i)) has_below = true;
            if (strictly_refines(i, j)) has_above = true;
        }
        if (!has_below) minimal.push_back(i);
        if (!has_above) maximal.push_back(i);
    }
    std::vector<std::size_t> path;
    std::function<void(std::size_t)> dfs = [&](std::size_t i) {
        path.push_back(i);
        bool extended = false;
        for (std::size_t j = 0; j < count; ++j)
            if (covers(i, j)) {
                extended = true;
                dfs(j);
            }
        if (!extended) chains.push_back(path);
        path.pop_back();
    };
    for (std::size_t i : minimal) dfs(i);

    std::vector<Decomposition> classes;
    for (const auto& chain : chains) {
        std::vector<RatMap> rights;
        bool ok = true;
        for (std::size_t idx : chain) {
            auto wf = right_factor_from_blocks(f, g, systems[idx],
                                               std::max<mpfr_prec_t>(ctx.precision, 192), ctx);
            if (!wf) {
                ok = false;
                break;
            }
            rights.push_back(wf->first);
        }
        if (!ok) throw precision_cap_error("right factor reconstruction failed");
        Decomposition d;
        for (std::size_t i = 0; i < rights.size(); ++i) {
            if (i == 0) d.factors.push_back(rights[0]);
            else {
                auto u = left_quotient(rights[i], rights[i - 1], ctx);
                if (!u) throw error("chain factor does not divide");
                d.factors.push_back(std::move(*u));
            }
        }
        auto top = left_quotient(f, rights.back(), ctx);
        if (!top) throw error("outer factor does not divide");
        d.factors.push_back(std::move(*top));
        if (!(d.recompose(ctx) == f)) throw error("decomposition failed to recompose");
        // degree bound of the innermost factor (and equality at prime degree)
        if (d.factors.front().degree() > a.degree())
            throw error("innermost factor exceeds the degree bound");
        if (d.factors.front().degree() != a.degree())
            throw error("innermost factor degree must equal the prime base degree");
        bool dup = false;
        for (const auto& known : classes)
            if (equivalent(known, d, ctx)) dup = true;
        if (!dup) classes.push_back(std::move(d));
    }
    if (classes.empty()) throw error("no decomposition class found for the iterate");
    return classes;
}

namespace {

// Mobius through three exact graph samples of the putative link, verified;
// definite nullopt when the exact correspondence rules a link out
std::optional<Mobius> link_mobius(const RatMap& from, const RatMap& to) {
    std::vector<GaussRat> zs;
    for (long k : {0l, 1l, -1l, 2l, -2l, 3l, -3l, 4l, -4l, 5l, 6l, 7l, 8l, 9l}) zs.emplace_back(k);
    for (std::size_t i = 0; i + 2 < zs.size(); ++i)
        for (std::size_t j = i + 1; j + 1 < zs.size(); ++j)
            for (std::size_t k = j + 1; k < zs.size(); ++k) {
                GaussRat z[3] = {zs[i], zs[j], zs[k]};
                ProjQ src[3], dst[3];
                bool good = true;
                for (int q = 0; q < 3 && good; ++q) {
                    auto x = from.eval(z[q]);
                    auto y = to.eval(z[q]);
                    if (!x || !y) good = false;
                    else {
                        src[q] = ProjQ::at(*x);
                        dst[q] = ProjQ::at(*y);
                    }
                }
                if (!good) continue;
                if (src[0].v == src[1].v || src[1].v == src[2].v || src[0].v == src[2].v)
                    continue;
                auto mu = mobius_from_three(src, dst);
                if (!mu) return std::nullopt; // images collide: no Mobius can link
                if (compose(*mu, from) == to) return mu;
                return std::nullopt;
            }
    return std::nullopt;
}

} // namespace

std::optional<std::vector<Mobius>> equivalent(const Decomposition& d1,
                                              const Decomposition& d2, const Context& ctx) {
    (void)ctx;
    if (d1.factors.size() != d2.factors.size()) return std::nullopt;
    std::size_t r = d1.factors.size();
    if (r == 0) return std::nullopt;
    if (r == 1) {
        if (d1.factors[0] == d2.factors[0]) return std::vector<Mobius>{};
        return std::nullopt;
    }
    std::vector<Mobius> links;
    RatMap adjusted = d2.factors[0]; // \hat A_i o mu_{i-1}, built stage by stage
    for (std::size_t i = 0; i + 1 < r; ++i) {
        if (i > 0) adjusted = compose(d2.factors[i], links.back());
        auto mu = link_mobius(d1.factors[i], adjusted);
        if (!mu) return std::nullopt;
        links.push_back(*mu);
    }
    // outermost: A_r = \hat A_r o mu_{r-1}
    if (!(compose(d2.factors[r - 1], links.back()) == d1.factors[r - 1])) return std::nullopt;
    return links;
}

AuditReport audit_iterates(const RatMap& a, int n_max, const Context& ctx) {
    if (a.degree() != 2 && a.degree() != 3)
        throw precondition_error("audit requires degree 2 or 3");
    AuditReport report;
    report.map_text = a.str();
    if (a.degree() == 2) {
        report.hypothesis = "emp";
        report.hypothesis_certified =
            emp_certificate(a, ctx).verdict == CertVerdict::PASS;
    } else {
        report.hypothesis = "simple+not_lattes";
        bool simple = is_simple(a, ctx);
        report.hypothesis_certified =
            simple && cubic_lattes_test(a, ctx) == LattesVerdict::NOT_LATTES;
    }
    report.verdict = report.hypothesis_certified ? "PASS" : "HYPOTHESIS_NOT_CERTIFIED";

    for (int n = 1; n <= n_max; ++n) {
        double deg = 1;
        for (int i = 0; i < n; ++i) deg *= a.degree();
        if (deg > ctx.degree_cap) break;
        AuditEntry entry;
        entry.n = n;
        entry.degree = static_cast<long>(deg);
        auto classes = decompositions_of_iterate(a, n, ctx);
        entry.class_count = static_cast<int>(classes.size());
        Decomposition trivial;
        for (int i = 0; i < n; ++i) trivial.factors.push_back(a);
        entry.all_classes_trivial = true;
        for (const auto& cls : classes) {
            std::string s;
            for (const auto& fct : cls.factors) s += (s.empty() ? "" : " , ") + fct.str();
            entry.class_factor_strings.push_back(s);
            if (!equivalent(cls, trivial, ctx)) entry.all_classes_trivial = false;
        }
        if (!entry.all_classes_trivial) {
            entry.note = "nontrivial decomposition class found";
            if (report.hypothesis_certified) report.verdict = "VIOLATION";
        }
        report.entries.push_back(std::move(entry));
    }
    return report;
}

} // namespace ratdyn
