#include "pconv/sigma.hpp"

#include "pconv/compiled_poly.hpp"
#include "pconv/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace pconv {

void SigmaParams::validate() const {
    for (double t : t_grid)
        if (t < 1.0) throw std::invalid_argument("SigmaParams: t_grid entries must be >= 1");
    if (t_grid.empty()) throw std::invalid_argument("SigmaParams: empty t_grid");
    if (radius_schedule.empty()) throw std::invalid_argument("SigmaParams: empty radius_schedule");
    for (std::size_t i = 1; i < radius_schedule.size(); ++i)
        if (radius_schedule[i] <= radius_schedule[i - 1])
            throw std::invalid_argument("SigmaParams: radius_schedule must increase strictly");
    if (n_directions < 1 || ball_samples < 1 || descent_iters < 1)
        throw std::invalid_argument("SigmaParams: counts must be positive");
}

double p_tilde_sub(const Polynomial& p, const Subspace& v, const Vec& xi, double t,
                   const SigmaParams& params) {
    if (v.ambient() != p.nvars() || static_cast<int>(xi.size()) != p.nvars())
        throw std::invalid_argument("p_tilde_sub: dimension mismatch");
    if (t < 0) throw std::invalid_argument("p_tilde_sub: negative t");
    CompiledPoly cp(p);
    return ball_sup_abs(cp, xi, v, t, params.ball_samples, 5, params.descent_iters, params.seed);
}

namespace {

struct Budget {
    int samples;
    int starts;
    int iters;
};

// Numerator and denominator share every sample through max(): the V-ball is
// contained in the full ball, so den >= num holds by construction and all
// recorded ratios stay in [0,1].
class RatioEngine {
public:
    RatioEngine(const Polynomial& p, const Subspace& v, const SigmaParams& par)
        : cp_(p), v_(v), full_(Subspace::full(p.nvars())), par_(par), v_full_(v.is_full()) {
        light_ = {std::clamp(par.ball_samples / 4, 32, par.ball_samples), 2,
                  std::max(10, par.descent_iters / 2)};
        full_budget_ = {par.ball_samples, 5, par.descent_iters};
    }

    double ratio(const Vec& xi, double t, bool full_quality) const {
        const Budget& b = full_quality ? full_budget_ : light_;
        double num = ball_sup_abs(cp_, xi, v_, t, b.samples, b.starts, b.iters, par_.seed);
        if (v_full_) return 1.0;  // identical quantity in numerator and denominator
        double den = ball_sup_abs(cp_, xi, full_, t, b.samples, b.starts, b.iters, par_.seed);
        den = std::max(den, num);
        if (den <= 1e-300) return 1.0;  // P vanishes on the whole ball: undefined cell
        return num / den;
    }

    int nvars() const { return cp_.nvars(); }

private:
    CompiledPoly cp_;
    Subspace v_;
    Subspace full_;
    SigmaParams par_;
    bool v_full_;
    Budget light_{}, full_budget_{};
};

// Sweep directions: coordinate axes, V basis, then a seeded quasi-uniform fill.
std::vector<Vec> sweep_directions(int n, const Subspace& v, const SigmaParams& par) {
    std::vector<Vec> dirs;
    auto push_unit = [&](Vec u) {
        double nm = norm(u);
        if (nm < 1e-12) return;
        u = scale(1.0 / nm, u);
        for (const auto& d : dirs)
            if (std::abs(dot(d, u)) > 1.0 - 1e-12) return;
        dirs.push_back(std::move(u));
    };
    for (int i = 0; i < n; ++i) {
        Vec e(n, 0.0);
        e[i] = 1.0;
        push_unit(e);
        e[i] = -1.0;
        push_unit(e);
    }
    for (const auto& b : v.basis()) {
        push_unit(b);
        push_unit(scale(-1.0, b));
    }
    Rng rng(par.seed ^ 0x9E3779B9u);
    while (static_cast<int>(dirs.size()) < par.n_directions) dirs.push_back(rng.unit_vector(n));
    return dirs;
}

SigmaEstimate sigma_common(const Polynomial& p, const Subspace& v, const SigmaParams& params,
                           bool infimum_over_all_radii) {
    params.validate();
    if (p.is_zero()) throw std::invalid_argument("sigma: zero polynomial (ratio undefined)");
    if (v.ambient() != p.nvars()) throw std::invalid_argument("sigma: dimension mismatch");
    const int n = p.nvars();

    RatioEngine engine(p, v, params);
    auto dirs = sweep_directions(n, v, params);

    std::vector<double> radii = params.radius_schedule;
    if (infimum_over_all_radii) {
        std::set<double> rset(radii.begin(), radii.end());
        rset.insert(0.0);
        for (double t : params.t_grid) rset.insert(t);
        rset.insert(0.5 * params.t_grid.front());
        radii.assign(rset.begin(), rset.end());
    }
    const double r_last = params.radius_schedule.back();
    const double r_prev = params.radius_schedule.size() > 1
                              ? params.radius_schedule[params.radius_schedule.size() - 2]
                              : r_last;

    SigmaEstimate est;
    est.value = 1.0;
    bool converged = true;

    for (double t : params.t_grid) {
        auto& row = est.trace[t];
        std::map<double, Vec> best_dir;
        for (double r : radii) {
            double best = 1.0;
            Vec arg = dirs.front();
            if (r == 0.0) {
                Vec origin(n, 0.0);
                best = engine.ratio(origin, t, false);
                arg = origin;
            } else {
                for (const auto& u : dirs) {
                    double val = engine.ratio(scale(r, u), t, false);
                    if (val < best) {
                        best = val;
                        arg = u;
                    }
                }
            }
            row[r] = best;
            best_dir[r] = arg;
        }

        // Local refinement on the direction sphere at the radii that decide
        // the estimate, then a full-budget confirmation of the best point.
        std::vector<double> refine_radii;
        if (infimum_over_all_radii) {
            std::vector<std::pair<double, double>> vals;
            for (auto& [r, val] : row)
                if (r > 0) vals.emplace_back(val, r);
            std::sort(vals.begin(), vals.end());
            for (std::size_t i = 0; i < vals.size() && i < 2; ++i)
                refine_radii.push_back(vals[i].second);
        } else {
            refine_radii.push_back(r_last);
            if (r_prev != r_last) refine_radii.push_back(r_prev);
        }
        for (double r : refine_radii) {
            Vec start = best_dir[r];
            auto objective = [&](const Vec& u) { return engine.ratio(scale(r, u), t, false); };
            Vec refined = sphere_pattern_search(objective, start, 0.3, 1e-6, 60);
            double light = objective(refined);
            if (light < row[r]) {
                row[r] = light;
                best_dir[r] = refined;
            }
            double confirmed = engine.ratio(scale(r, best_dir[r]), t, true);
            row[r] = std::min(row[r], confirmed);
        }

        double per_t;
        if (infimum_over_all_radii) {
            per_t = 1.0;
            for (auto& [r, val] : row) per_t = std::min(per_t, val);
            // Convergence: did the largest radius change the running infimum?
            double without_last = 1.0, with_last = 1.0;
            for (auto& [r, val] : row) {
                with_last = std::min(with_last, val);
                if (r < r_last) without_last = std::min(without_last, val);
            }
            if (with_last < without_last * 0.9) converged = false;
        } else {
            per_t = row[r_last];
            double prev = row.count(r_prev) ? row[r_prev] : per_t;
            if (std::abs(per_t - prev) > 0.1 * std::max({per_t, prev, 1e-12})) converged = false;
        }
        est.per_t[t] = per_t;
        est.value = std::min(est.value, per_t);
    }
    est.converged = converged;
    return est;
}

}  // namespace

SigmaEstimate sigma_estimate(const Polynomial& p, const Subspace& v, const SigmaParams& params) {
    return sigma_common(p, v, params, false);
}

SigmaEstimate sigma0_estimate(const Polynomial& p, const Subspace& v, const SigmaParams& params) {
    return sigma_common(p, v, params, true);
}

std::optional<Subspace> sigma_zero_subspace_exact(const Polynomial& p, std::uint64_t seed) {
    if (p.is_zero()) return std::nullopt;
    const int n = p.nvars();

    Subspace dep = dependence_subspace(p);
    if (dep.is_trivial()) return Subspace::trivial(n);  // constant: no zero directions
    EllipticityResult ell = is_elliptic_on(p, dep, seed);
    if (ell.elliptic()) return dep.orthogonal_complement();

    // Augmented semi-elliptic route: P = Q+ with Q semi-elliptic.
    if (auto q = p.drop_last_variable()) {
        if (!q->is_zero() && q->degree() > 0) {
            SemiEllipticity se = semi_elliptic_weights(*q, seed);
            if (se.accepted()) {
                ZeroSetReport zr = zero_set_structure(q->principal_part(), seed);
                if (zr.kind == ZeroSetReport::Kind::SubspaceZeroSet)
                    return zr.zero_set->cross_line();
                if (zr.kind == ZeroSetReport::Kind::TrivialZeroSet)
                    return Subspace::trivial(n - 1).cross_line();
            }
        }
    }
    return std::nullopt;
}

}  // namespace pconv
