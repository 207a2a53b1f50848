// Test-only oracles, kept independent of the implementation paths they check.
#ifndef RATDYN_TESTS_ORACLE_HPP
#define RATDYN_TESTS_ORACLE_HPP

#include <vector>

#include "ratdyn/gaussrat.hpp"
#include "ratdyn/poly.hpp"

namespace ratdyn::oracle {

// Sylvester matrix at formal degrees (m, n): n rows of f's coefficients in
// descending order, then m rows of g's, each shifted one column per row.
inline std::vector<std::vector<GaussRat>> sylvester(const Poly& f, const Poly& g,
                                                    int m, int n) {
    int size = m + n;
    std::vector<std::vector<GaussRat>> M(static_cast<std::size_t>(size),
                                         std::vector<GaussRat>(static_cast<std::size_t>(size)));
    for (int r = 0; r < n; ++r)
        for (int k = 0; k <= m; ++k)
            M[static_cast<std::size_t>(r)][static_cast<std::size_t>(r + k)] = f.coeff(m - k);
    for (int r = 0; r < m; ++r)
        for (int k = 0; k <= n; ++k)
            M[static_cast<std::size_t>(n + r)][static_cast<std::size_t>(r + k)] = g.coeff(n - k);
    return M;
}

// exact determinant by Gaussian elimination with column pivoting
inline GaussRat det(std::vector<std::vector<GaussRat>> M) {
    std::size_t n = M.size();
    GaussRat d(1);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && M[piv][col].is_zero()) ++piv;
        if (piv == n) return GaussRat(0);
        if (piv != col) {
            std::swap(M[piv], M[col]);
            d = -d;
        }
        d *= M[col][col];
        GaussRat inv = M[col][col].inv();
        for (std::size_t r = col + 1; r < n; ++r) {
            if (M[r][col].is_zero()) continue;
            GaussRat factor = M[r][col] * inv;
            for (std::size_t c = col; c < n; ++c) M[r][c] -= factor * M[col][c];
        }
    }
    return d;
}

inline GaussRat resultant_det(const Poly& f, const Poly& g, int m, int n) {
    if (m == 0 && n == 0) return GaussRat(1);
    return det(sylvester(f, g, m, n));
}

inline Poly random_poly(SplitMix64& rng, int deg, long lo = -5, long hi = 5) {
    std::vector<GaussRat> c(static_cast<std::size_t>(deg) + 1);
    for (auto& x : c)
        x = GaussRat(mpq_class(rng.next_in(lo, hi)), mpq_class(rng.next_in(lo, hi)));
    while (c.back().is_zero()) c.back() = GaussRat(mpq_class(rng.next_in(1, hi)), 0);
    return Poly(c);
}

} // namespace ratdyn::oracle

#endif
