#pragma once

#include "pconv/poly_analysis.hpp"
#include "pconv/polynomial.hpp"
#include "pconv/sampling.hpp"
#include "pconv/subspace.hpp"

namespace pconv::testing {

struct VanishingInstance {
    Polynomial p;      // vanishes on v and is invariant along v
    Subspace v;        // random subspace
    Subspace v_perp;   // span of the construction normals
};

// P := Q(<b_1,x>,...,<b_r,x>) for random integer normals b_i and a random Q
// with zero constant term. P vanishes on V = span{b_i}^perp by construction.
inline VanishingInstance random_vanishing_polynomial(Rng& rng, int max_n = 4, int max_deg = 4) {
    while (true) {
        int n = 2 + static_cast<int>(rng.next() % (max_n - 1));
        int r = 1 + static_cast<int>(rng.next() % (n - 1));

        std::vector<std::vector<Rat>> b(r, std::vector<Rat>(n));
        std::vector<Vec> bd(r, Vec(n));
        for (int i = 0; i < r; ++i) {
            for (int j = 0; j < n; ++j) {
                long num = static_cast<long>(rng.next() % 9) - 4;
                b[i][j] = Rat(num);
                bd[i][j] = static_cast<double>(num);
            }
        }
        Subspace v_perp = Subspace::span(n, bd);
        if (v_perp.dim() != r) continue;  // degenerate draw

        Polynomial q(r);
        int terms = 3 + static_cast<int>(rng.next() % 4);
        for (int t = 0; t < terms; ++t) {
            Polynomial::Exponents e(r, 0);
            int deg = 1 + static_cast<int>(rng.next() % max_deg);
            for (int d = 0; d < deg; ++d) e[rng.next() % r] += 1;
            q.add_term(e, CoefC(Rat(static_cast<long>(rng.next() % 7) - 3),
                                Rat(static_cast<long>(rng.next() % 5) - 2)));
        }
        if (q.is_zero()) continue;

        // Transpose: variable i of q receives the linear form <b_i, x>.
        std::vector<std::vector<Rat>> forms(n, std::vector<Rat>(r));
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < r; ++i) forms[j][i] = b[i][j];
        Polynomial p = q.compose_linear(forms);
        if (p.is_zero()) continue;

        return {std::move(p), v_perp.orthogonal_complement(), std::move(v_perp)};
    }
}

}  // namespace pconv::testing
