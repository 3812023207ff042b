#include "pconv/poly_analysis.hpp"

#include "pconv/compiled_poly.hpp"
#include "pconv/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

namespace pconv {

std::vector<std::vector<Rat>> rational_kernel(std::vector<std::vector<Rat>> rows, int cols) {
    const int m = static_cast<int>(rows.size());
    std::vector<int> pivot_col;
    int r = 0;
    for (int c = 0; c < cols && r < m; ++c) {
        int sel = -1;
        for (int i = r; i < m; ++i) {
            if (rows[i][c] != 0) {
                sel = i;
                break;
            }
        }
        if (sel < 0) continue;
        std::swap(rows[r], rows[sel]);
        Rat inv = rows[r][c];
        for (int j = c; j < cols; ++j) rows[r][j] /= inv;
        for (int i = 0; i < m; ++i) {
            if (i == r || rows[i][c] == 0) continue;
            Rat f = rows[i][c];
            for (int j = c; j < cols; ++j) rows[i][j] -= f * rows[r][j];
        }
        pivot_col.push_back(c);
        ++r;
    }
    std::vector<bool> is_pivot(cols, false);
    for (int c : pivot_col) is_pivot[c] = true;
    std::vector<std::vector<Rat>> kernel;
    for (int c = 0; c < cols; ++c) {
        if (is_pivot[c]) continue;
        std::vector<Rat> v(cols, Rat(0));
        v[c] = 1;
        for (int i = 0; i < static_cast<int>(pivot_col.size()); ++i) v[pivot_col[i]] = -rows[i][c];
        kernel.push_back(std::move(v));
    }
    return kernel;
}

Subspace dependence_subspace(const Polynomial& p) {
    const int n = p.nvars();
    // Union of monomials over all partial derivatives; two real rows per
    // monomial (real and imaginary coefficient parts), columns = variables.
    std::vector<Polynomial> parts;
    parts.reserve(n);
    for (int j = 0; j < n; ++j) parts.push_back(p.partial(j));

    std::set<Polynomial::Exponents> monos;
    for (const auto& q : parts)
        for (const auto& [e, c] : q.terms()) monos.insert(e);

    std::vector<std::vector<Rat>> rows;
    for (const auto& e : monos) {
        std::vector<Rat> row_re(n, Rat(0)), row_im(n, Rat(0));
        bool any_im = false;
        for (int j = 0; j < n; ++j) {
            auto it = parts[j].terms().find(e);
            if (it != parts[j].terms().end()) {
                row_re[j] = it->second.re;
                row_im[j] = it->second.im;
                if (it->second.im != 0) any_im = true;
            }
        }
        rows.push_back(std::move(row_re));
        if (any_im) rows.push_back(std::move(row_im));
    }
    if (rows.empty()) return Subspace::trivial(n);  // constant polynomial

    auto kernel = rational_kernel(std::move(rows), n);
    std::vector<Vec> kernel_d;
    for (const auto& v : kernel) {
        Vec w(n);
        for (int i = 0; i < n; ++i) w[i] = rat_to_double(v[i]);
        kernel_d.push_back(std::move(w));
    }
    Subspace invariant = Subspace::span(n, kernel_d);
    return invariant.orthogonal_complement();
}

bool vanishes_on_subspace(const Polynomial& p, const Subspace& v) {
    if (v.ambient() != p.nvars())
        throw std::invalid_argument("vanishes_on_subspace: dimension mismatch");
    if (p.is_zero()) return true;
    if (v.is_trivial()) {
        // Restriction to {0} is the constant term.
        Polynomial::Exponents zero(p.nvars(), 0);
        auto it = p.terms().find(zero);
        return it == p.terms().end();
    }
    std::vector<std::vector<Rat>> basis;
    for (const auto& b : v.basis()) {
        std::vector<Rat> rb(b.size());
        for (std::size_t i = 0; i < b.size(); ++i) rb[i] = rat_from_double(b[i]);
        basis.push_back(std::move(rb));
    }
    Polynomial restricted = p.compose_linear(basis);
    const double tol = 1e-12 * std::max(p.coeff_scale(), 1e-300);
    for (const auto& [e, c] : restricted.terms())
        if (c.magnitude() > tol) return false;
    return true;
}

Polynomial restrict_to_subspace(const Polynomial& p, const Subspace& w) {
    if (w.ambient() != p.nvars())
        throw std::invalid_argument("restrict_to_subspace: dimension mismatch");
    if (w.is_trivial()) throw std::invalid_argument("restrict_to_subspace: trivial subspace");
    std::vector<std::vector<Rat>> basis;
    for (const auto& b : w.basis()) {
        std::vector<Rat> rb(b.size());
        for (std::size_t i = 0; i < b.size(); ++i) rb[i] = rat_from_double(b[i]);
        basis.push_back(std::move(rb));
    }
    return p.compose_linear(basis);
}

EllipticityResult is_elliptic_on(const Polynomial& p, const Subspace& w, std::uint64_t seed) {
    if (w.ambient() != p.nvars()) throw std::invalid_argument("is_elliptic_on: dimension mismatch");
    Subspace dep = dependence_subspace(p);
    if (!w.contains(dep, 1e-9))
        throw std::invalid_argument("is_elliptic_on: P does not act along W");

    EllipticityResult result;
    if (p.is_zero()) {
        result.verdict = EllipticityResult::Verdict::NotElliptic;
        Vec e(w.dim() > 0 ? w.basis()[0] : Vec(p.nvars(), 0.0));
        result.witness = e;
        return result;
    }
    Polynomial restricted = w.is_full() ? p : restrict_to_subspace(p, w);
    Polynomial top = restricted.principal_part();
    const int k = restricted.nvars();
    if (top.degree() == 0) {
        // Nonzero constant: no real zeros at all.
        result.verdict = EllipticityResult::Verdict::Elliptic;
        result.c_lower = top.coeff_scale();
        result.eps = kEllipticEpsRel * top.coeff_scale();
        return result;
    }

    CompiledPoly cp(top);
    SphereMin m = sphere_minimize_abs(cp, sphere_resolution(k), seed);
    double eps = kEllipticEpsRel * std::max(top.coeff_scale(), 1e-300);
    double val = std::sqrt(std::max(0.0, m.value));
    result.eps = eps;
    result.c_lower = val;
    if (val <= eps) {
        result.verdict = EllipticityResult::Verdict::NotElliptic;
        // Map the witness back to ambient coordinates.
        result.witness = w.is_full() ? m.argmin : w.from_coords(m.argmin);
    } else if (val <= kRefusalBand * eps) {
        result.verdict = EllipticityResult::Verdict::Unknown;
        result.witness = w.is_full() ? m.argmin : w.from_coords(m.argmin);
    } else {
        result.verdict = EllipticityResult::Verdict::Elliptic;
    }
    return result;
}

namespace {

double ipow(double x, int p) {
    double r = 1.0;
    while (p > 0) {
        if (p & 1) r *= x;
        x *= x;
        p >>= 1;
    }
    return r;
}

// Scale a unit direction u radially onto {sum_j xi_j^{p_j} = 1} (even p_j).
// g(r) = sum_j |u_j|^{p_j} r^{p_j} is strictly increasing; Newton with a
// bisection fallback bracket.
Vec to_weighted_sphere(const Vec& u, const std::vector<int>& pj) {
    const std::size_t n = u.size();
    std::vector<double> cj(n);
    for (std::size_t j = 0; j < n; ++j) cj[j] = ipow(std::abs(u[j]), pj[j]);
    auto g = [&](double r, double* dg) {
        double s = 0, d = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (cj[j] == 0.0) continue;
            double rp = ipow(r, pj[j] - 1);
            s += cj[j] * rp * r;
            d += cj[j] * pj[j] * rp;
        }
        if (dg) *dg = d;
        return s;
    };
    double lo = 0.0, hi = 1.0;
    while (g(hi, nullptr) < 1.0) hi *= 2.0;
    double r = hi;
    for (int it = 0; it < 40; ++it) {
        double dg = 0;
        double val = g(r, &dg) - 1.0;
        if (std::abs(val) < 1e-14) break;
        (val < 0 ? lo : hi) = r;
        double step = (dg > 0) ? r - val / dg : 0.5 * (lo + hi);
        r = (step > lo && step < hi) ? step : 0.5 * (lo + hi);
    }
    return scale(r, u);
}

}  // namespace

SemiEllipticity semi_elliptic_weights(const Polynomial& p, std::uint64_t seed) {
    if (p.is_zero() || p.degree() == 0)
        throw std::invalid_argument("semi_elliptic_weights: constant polynomial");
    const int n = p.nvars();
    SemiEllipticity se;
    se.weights.resize(n);
    for (int j = 0; j < n; ++j) se.weights[j] = std::max(1, p.degree_in_var(j));

    // |alpha : m| as an exact rational; split terms at the value 1.
    Polynomial weighted(n);
    bool violation = false;
    for (const auto& [e, c] : p.terms()) {
        Rat s(0);
        for (int j = 0; j < n; ++j) s += Rat(BigInt(e[j]), BigInt(se.weights[j]));
        if (s > 1) {
            violation = true;
            break;
        }
        if (s == 1) weighted.add_term(e, c);
    }
    se.weighted_principal = weighted;
    if (violation) {
        se.status = SemiEllipticity::Status::WeightViolation;
        return se;
    }
    if (weighted.is_zero()) {
        se.status = SemiEllipticity::Status::PrincipalVanishes;
        return se;
    }

    // Scan on the weighted sphere {sum xi_j^{2 mbar / m_j} = 1}.
    long mbar = 1;
    for (int j = 0; j < n; ++j) mbar = std::lcm(mbar, static_cast<long>(se.weights[j]));
    std::vector<int> pj(n);
    for (int j = 0; j < n; ++j) pj[j] = static_cast<int>(2 * mbar / se.weights[j]);

    CompiledPoly cp(weighted);
    EvalScratch ws;
    ws.fit(cp);
    auto dirs = sphere_directions_shared(n, sphere_resolution(n), seed);
    double min2 = std::numeric_limits<double>::infinity();
    Vec argmin;
    for (const auto& u : *dirs) {
        Vec x = to_weighted_sphere(u, pj);
        double f = cp.abs2(x.data(), ws.pw.data());
        if (f < min2) {
            min2 = f;
            argmin = x;
        }
    }
    // Polish candidates on the Euclidean sphere as well; any zero off the
    // origin crosses it, and the witness contract is a unit vector.
    SphereMin polished = sphere_descend_abs(cp, argmin, 80);
    SphereMin euclid = sphere_minimize_abs(cp, sphere_resolution(n), seed);
    double best2 = std::min({min2, polished.value, euclid.value});
    se.sphere_min = std::sqrt(std::max(0.0, best2));

    double eps = kEllipticEpsRel * std::max(weighted.coeff_scale(), 1e-300);
    if (se.sphere_min <= eps) {
        se.status = SemiEllipticity::Status::PrincipalVanishes;
        Vec w = (polished.value <= euclid.value) ? polished.argmin : euclid.argmin;
        se.witness = w;
        se.witness_value = std::sqrt(std::max(0.0, cp.abs2(w.data(), ws.pw.data())));
    } else if (se.sphere_min <= kRefusalBand * eps) {
        se.status = SemiEllipticity::Status::Unknown;
    } else {
        se.status = SemiEllipticity::Status::Accepted;
    }
    return se;
}

ZeroSetReport zero_set_structure(const Polynomial& q, std::uint64_t seed) {
    if (!q.is_homogeneous())
        throw std::invalid_argument("zero_set_structure: input must be homogeneous");
    const int n = q.nvars();
    ZeroSetReport report;
    if (q.is_zero()) {
        report.kind = ZeroSetReport::Kind::SubspaceZeroSet;
        report.zero_set = Subspace::full(n);
        report.note = "zero polynomial";
        return report;
    }
    if (q.degree() == 0) {
        report.kind = ZeroSetReport::Kind::TrivialZeroSet;
        report.note = "nonzero constant";
        return report;
    }

    CompiledPoly cp(q);
    EvalScratch ws;
    ws.fit(cp);
    const double eps = kEllipticEpsRel * std::max(q.coeff_scale(), 1e-300);
    const double eps_zero = kRefusalBand * eps;

    auto dirs_ptr = sphere_directions_shared(n, sphere_resolution(n), seed);
    const auto& dirs = *dirs_ptr;
    std::vector<std::pair<double, std::size_t>> scan(dirs.size());
    double min2 = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < dirs.size(); ++i) {
        double f = cp.abs2(dirs[i].data(), ws.pw.data());
        scan[i] = {f, i};
        min2 = std::min(min2, f);
    }
    // Descent starts: the lowest scan values, deduplicated by angle so every
    // local zero cluster gets a representative.
    std::sort(scan.begin(), scan.end());
    std::vector<Vec> starts;
    const double cos_sep = std::cos(0.2);
    for (const auto& [f, i] : scan) {
        bool close = false;
        for (const auto& s : starts) {
            if (std::abs(dot(s, dirs[i])) > cos_sep) {
                close = true;
                break;
            }
        }
        if (!close) starts.push_back(dirs[i]);
        if (starts.size() >= 64) break;
    }

    std::vector<Vec> zeros;
    for (const auto& u : starts) {
        SphereMin m = sphere_descend_abs(cp, u, 80);
        min2 = std::min(min2, m.value);
        if (std::sqrt(std::max(0.0, m.value)) > eps_zero) continue;
        bool dup = false;
        for (const auto& z : zeros) {
            if (std::abs(dot(z, m.argmin)) > 1.0 - 1e-6) {
                dup = true;
                break;
            }
        }
        if (!dup) zeros.push_back(m.argmin);
    }
    double sphere_min = std::sqrt(std::max(0.0, min2));
    report.sphere_min = sphere_min;

    if (zeros.empty()) {
        if (sphere_min > kRefusalBand * eps) {
            report.kind = ZeroSetReport::Kind::TrivialZeroSet;
        } else {
            report.kind = ZeroSetReport::Kind::Unknown;
            report.note = "sphere minimum in refusal band";
        }
        return report;
    }

    // Candidate subspace from the Gram matrix of the zero cluster.
    std::vector<std::vector<double>> gram(n, std::vector<double>(n, 0.0));
    for (const auto& z : zeros)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) gram[i][j] += z[i] * z[j];
    // Jacobi eigendecomposition (n is small).
    std::vector<std::vector<double>> v(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i) v[i][i] = 1.0;
    auto& a = gram;
    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) off += a[i][j] * a[i][j];
        if (off < 1e-24) break;
        for (int p_ = 0; p_ < n; ++p_) {
            for (int q_ = p_ + 1; q_ < n; ++q_) {
                if (std::abs(a[p_][q_]) < 1e-30) continue;
                double phi = 0.5 * std::atan2(2 * a[p_][q_], a[q_][q_] - a[p_][p_]);
                double c = std::cos(phi), s = std::sin(phi);
                for (int i = 0; i < n; ++i) {
                    double ap = a[i][p_], aq = a[i][q_];
                    a[i][p_] = c * ap - s * aq;
                    a[i][q_] = s * ap + c * aq;
                }
                for (int i = 0; i < n; ++i) {
                    double ap = a[p_][i], aq = a[q_][i];
                    a[p_][i] = c * ap - s * aq;
                    a[q_][i] = s * ap + c * aq;
                }
                for (int i = 0; i < n; ++i) {
                    double vp = v[i][p_], vq = v[i][q_];
                    v[i][p_] = c * vp - s * vq;
                    v[i][q_] = s * vp + c * vq;
                }
            }
        }
    }
    std::vector<std::pair<double, int>> eig;
    for (int i = 0; i < n; ++i) eig.emplace_back(a[i][i], i);
    std::sort(eig.rbegin(), eig.rend());

    auto column = [&](int j) {
        Vec col(n);
        for (int i = 0; i < n; ++i) col[i] = v[i][j];
        return col;
    };

    double lead = std::max(eig.front().first, 1e-300);
    int fit_dim = 0;
    for (int i = 0; i < n; ++i)
        if (eig[i].first > 1e-6 * lead) ++fit_dim;

    auto try_confirm = [&](int k) -> std::optional<Subspace> {
        if (k < 1 || k >= n + 1) return std::nullopt;
        std::vector<Vec> bs;
        for (int i = 0; i < k; ++i) bs.push_back(column(eig[i].second));
        Subspace cand = Subspace::span(n, bs);
        if (cand.dim() != k) return std::nullopt;
        if (!vanishes_on_subspace(q, cand)) return std::nullopt;
        // All polished zeros must lie inside the candidate.
        for (const auto& z : zeros)
            if (cand.distance(z) > 1e-4) return std::nullopt;
        if (k < n) {
            // Restriction to the complement must be elliptic there. A
            // restriction that is zero up to float noise means the candidate
            // was too small, not that the complement is clean.
            Subspace comp = cand.orthogonal_complement();
            Polynomial rq = restrict_to_subspace(q, comp);
            if (rq.coeff_scale() <= 1e-10 * q.coeff_scale()) return std::nullopt;
            CompiledPoly rcp(rq);
            SphereMin rm = sphere_minimize_abs(rcp, sphere_resolution(comp.dim()), seed);
            double reps = kEllipticEpsRel * std::max(rq.coeff_scale(), 1e-300);
            if (std::sqrt(std::max(0.0, rm.value)) <= kRefusalBand * reps) return std::nullopt;
        }
        return cand;
    };

    for (int k = fit_dim; k >= 1; --k) {
        if (auto cand = try_confirm(k)) {
            report.kind = ZeroSetReport::Kind::SubspaceZeroSet;
            report.zero_set = *cand;
            return report;
        }
    }

    // Look for a pair of zeros whose span contains a non-zero of Q.
    for (std::size_t i = 0; i < zeros.size(); ++i) {
        for (std::size_t j = i + 1; j < zeros.size(); ++j) {
            if (std::abs(dot(zeros[i], zeros[j])) > 1.0 - 1e-9) continue;
            double best = 0;
            Vec bestdir;
            for (int t = 1; t < 16; ++t) {
                double phi = M_PI * t / 16.0;
                Vec u = axpy(std::sin(phi), zeros[j], scale(std::cos(phi), zeros[i]));
                double nu = norm(u);
                if (nu < 1e-9) continue;
                u = scale(1.0 / nu, u);
                double fv = std::sqrt(std::max(0.0, cp.abs2(u.data(), ws.pw.data())));
                if (fv > best) {
                    best = fv;
                    bestdir = u;
                }
            }
            if (best > kRefusalBand * eps) {
                report.kind = ZeroSetReport::Kind::NotSubspace;
                report.witness_pair = {zeros[i], zeros[j]};
                report.nonvanishing_direction = bestdir;
                return report;
            }
        }
    }
    report.kind = ZeroSetReport::Kind::Unknown;
    report.note = "zero cluster did not confirm as a subspace";
    return report;
}

}  // namespace pconv
