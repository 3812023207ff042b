#include "pconv/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>

namespace pconv {

double Rng::gaussian() {
    double u1 = uniform();
    double u2 = uniform();
    while (u1 <= 1e-300) u1 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

Vec Rng::unit_vector(int n) {
    Vec v(n);
    double s = 0;
    do {
        for (auto& x : v) x = gaussian();
        s = norm(v);
    } while (s < 1e-12);
    return scale(1.0 / s, v);
}

double sphere_resolution(int k) { return k <= 4 ? 0.01 : 0.05; }

std::size_t sphere_cap(int k) {
    if (k <= 3) return 2'000'000;  // full resolution fits well below this
    if (k == 4) return 4'000'000;  // effective resolution ~0.017 rad
    return 2'000'000;
}

std::shared_ptr<const std::vector<Vec>> sphere_directions_shared(int k, double delta,
                                                                 std::uint64_t seed) {
    static std::map<std::tuple<int, double, std::uint64_t>, std::shared_ptr<const std::vector<Vec>>>
        cache;
    auto key = std::make_tuple(k, delta, seed);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto dirs = std::make_shared<const std::vector<Vec>>(
        sphere_directions(k, delta, seed, {}, sphere_cap(k)));
    if (cache.size() < 64) cache.emplace(key, dirs);
    return dirs;
}

namespace {

double sphere_area(int km1) {
    // Surface area of S^{km1} in R^{km1+1}.
    // A_{d} = 2 pi^{(d+1)/2} / Gamma((d+1)/2)
    double d = km1;
    return 2.0 * std::pow(M_PI, (d + 1.0) / 2.0) / std::tgamma((d + 1.0) / 2.0);
}

}  // namespace

std::vector<Vec> sphere_directions(int k, double delta, std::uint64_t seed,
                                   const std::vector<Vec>& extra, std::size_t cap) {
    std::vector<Vec> out;
    if (k < 1) throw std::invalid_argument("sphere_directions: k must be >= 1");
    for (int i = 0; i < k; ++i) {
        Vec e(k, 0.0);
        e[i] = 1.0;
        out.push_back(e);
        e[i] = -1.0;
        out.push_back(e);
    }
    for (const auto& v : extra) {
        double n = norm(v);
        if (n > 1e-12 && static_cast<int>(v.size()) == k) out.push_back(scale(1.0 / n, v));
    }
    if (k == 1) return out;

    std::size_t n;
    if (k == 2) {
        n = static_cast<std::size_t>(std::ceil(2.0 * M_PI / delta));
        n = std::min(n, cap);
        for (std::size_t j = 0; j < n; ++j) {
            double a = 2.0 * M_PI * (static_cast<double>(j) + 0.5) / static_cast<double>(n);
            out.push_back({std::cos(a), std::sin(a)});
        }
        return out;
    }
    // Count so that the mean nearest-neighbor spacing is ~delta.
    double area = sphere_area(k - 1);
    double want = area / std::pow(delta, k - 1);
    n = static_cast<std::size_t>(std::min<double>(want, static_cast<double>(cap)));
    if (k == 3) {
        // Fibonacci sphere.
        const double ga = M_PI * (3.0 - std::sqrt(5.0));
        for (std::size_t j = 0; j < n; ++j) {
            double z = 1.0 - 2.0 * (static_cast<double>(j) + 0.5) / static_cast<double>(n);
            double r = std::sqrt(std::max(0.0, 1.0 - z * z));
            double a = ga * static_cast<double>(j);
            out.push_back({r * std::cos(a), r * std::sin(a), z});
        }
        return out;
    }
    Rng rng(seed ^ 0x5bd1e995u);
    for (std::size_t j = 0; j < n; ++j) out.push_back(rng.unit_vector(k));
    return out;
}

std::vector<Vec> ball_points(int k, int count, std::uint64_t seed) {
    std::vector<Vec> out;
    out.push_back(Vec(k, 0.0));
    for (int i = 0; i < k; ++i) {
        Vec e(k, 0.0);
        e[i] = 1.0;
        out.push_back(e);
        e[i] = -1.0;
        out.push_back(e);
    }
    Rng rng(seed ^ 0x2545F491u);
    while (static_cast<int>(out.size()) < count) {
        Vec u = rng.unit_vector(k);
        // Half the fill on the boundary sphere, half in the interior.
        double r = (out.size() % 2 == 0) ? 1.0 : std::pow(rng.uniform(), 1.0 / k);
        out.push_back(scale(r, u));
    }
    return out;
}

SphereMin sphere_descend_abs(const CompiledPoly& cp, Vec start, int iters) {
    EvalScratch ws;
    ws.fit(cp);
    const int n = cp.nvars();
    double nv = norm(start);
    if (nv < 1e-100) return {0.0, start};
    Vec u = scale(1.0 / nv, start);
    double f = cp.abs2(u.data(), ws.pw.data());
    double step = 0.1;
    for (int it = 0; it < iters; ++it) {
        double f0 = cp.abs2_grad(u.data(), ws.pw.data(), ws.grad.data());
        // Tangential component.
        Vec g(ws.grad.begin(), ws.grad.begin() + n);
        double gu = dot(g, u);
        for (int i = 0; i < n; ++i) g[i] -= gu * u[i];
        double gn = norm(g);
        if (gn < 1e-18) break;
        bool moved = false;
        double s = step;
        for (int tries = 0; tries < 30; ++tries) {
            Vec cand = axpy(-s / gn, g, u);
            double cn = norm(cand);
            if (cn > 1e-100) {
                cand = scale(1.0 / cn, cand);
                double fc = cp.abs2(cand.data(), ws.pw.data());
                if (fc < f0) {
                    u = cand;
                    f = fc;
                    step = std::min(0.5, s * 2.0);
                    moved = true;
                    break;
                }
            }
            s *= 0.5;
        }
        if (!moved) break;
    }
    f = std::min(f, cp.abs2(u.data(), ws.pw.data()));
    return {f, u};
}

SphereMin sphere_minimize_abs(const CompiledPoly& cp, double delta, std::uint64_t seed,
                              int polish_starts, int iters, const std::vector<Vec>& extra_seeds) {
    const int k = cp.nvars();
    auto base = sphere_directions_shared(k, delta, seed);
    EvalScratch ws;
    ws.fit(cp);

    std::vector<const Vec*> extras;
    std::vector<Vec> extra_store;
    for (const auto& v : extra_seeds) {
        double n = norm(v);
        if (n > 1e-12 && static_cast<int>(v.size()) == k)
            extra_store.push_back(scale(1.0 / n, v));
    }
    for (const auto& v : extra_store) extras.push_back(&v);

    // Track the best polish_starts scan points.
    std::vector<std::pair<double, const Vec*>> best;
    double scan_min = std::numeric_limits<double>::infinity();
    const Vec* scan_arg = nullptr;
    auto visit = [&](const Vec& u) {
        double f = cp.abs2(u.data(), ws.pw.data());
        if (f < scan_min) {
            scan_min = f;
            scan_arg = &u;
        }
        best.emplace_back(f, &u);
        if (best.size() > 4096) {
            std::nth_element(best.begin(), best.begin() + polish_starts, best.end());
            best.resize(polish_starts);
        }
    };
    for (const Vec* v : extras) visit(*v);
    for (const Vec& u : *base) visit(u);

    std::sort(best.begin(), best.end());
    if (static_cast<int>(best.size()) > polish_starts) best.resize(polish_starts);

    SphereMin result{scan_min, scan_arg ? *scan_arg : Vec(k, 0.0)};
    for (const auto& [f, u] : best) {
        SphereMin m = sphere_descend_abs(cp, *u, iters);
        if (m.value < result.value) result = m;
    }
    return result;
}

double ball_sup_abs(const CompiledPoly& cp, const Vec& xi, const Subspace& V, double t,
                    int sample_count, int polish_starts, int iters, std::uint64_t seed) {
    if (t < 0) throw std::invalid_argument("ball_sup_abs: negative radius");
    EvalScratch ws;
    ws.fit(cp);
    const int n = cp.nvars();
    const int k = V.dim();
    if (k == 0 || t == 0.0) {
        double f = cp.abs2(xi.data(), ws.pw.data());
        return std::sqrt(std::max(0.0, f));
    }

    auto point_at = [&](const Vec& theta) {
        Vec x = xi;
        for (int j = 0; j < k; ++j)
            for (int i = 0; i < n; ++i) x[i] += t * theta[j] * V.basis()[j][i];
        return x;
    };

    auto pts = ball_points(k, sample_count, seed);
    std::vector<std::pair<double, std::size_t>> best;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        Vec x = point_at(pts[i]);
        double f = cp.abs2(x.data(), ws.pw.data());
        best.emplace_back(f, i);
    }
    std::sort(best.begin(), best.end(), [](auto& a, auto& b) { return a.first > b.first; });
    double sup2 = best.empty() ? 0.0 : best.front().first;

    int starts = std::min<int>(polish_starts, static_cast<int>(best.size()));
    for (int s = 0; s < starts; ++s) {
        Vec theta = pts[best[s].second];
        double step = 0.25;
        Vec x = point_at(theta);
        double f = cp.abs2(x.data(), ws.pw.data());
        for (int it = 0; it < iters; ++it) {
            x = point_at(theta);
            double f0 = cp.abs2_grad(x.data(), ws.pw.data(), ws.grad.data());
            // Chain rule: d/dtheta_j = t * <grad_x, b_j>.
            Vec g(k);
            double gn = 0;
            for (int j = 0; j < k; ++j) {
                g[j] = t * dot(ws.grad, V.basis()[j]);
                gn += g[j] * g[j];
            }
            gn = std::sqrt(gn);
            if (gn < 1e-18 * std::max(1.0, f0)) break;
            bool moved = false;
            double su = step;
            for (int tries = 0; tries < 25; ++tries) {
                Vec cand = axpy(su / gn, g, theta);
                double cn = norm(cand);
                if (cn > 1.0) cand = scale(1.0 / cn, cand);
                Vec cx = point_at(cand);
                double fc = cp.abs2(cx.data(), ws.pw.data());
                if (fc > f0 * (1.0 + 1e-14) || (fc > f0 && su < 1e-10)) {
                    theta = cand;
                    f = fc;
                    step = std::min(1.0, su * 2.0);
                    moved = true;
                    break;
                }
                su *= 0.5;
            }
            if (!moved) break;
        }
        sup2 = std::max(sup2, f);
    }
    return std::sqrt(std::max(0.0, sup2));
}

Vec sphere_pattern_search(const std::function<double(const Vec&)>& f, Vec start,
                          double init_step, double min_step, int max_iters) {
    const int n = static_cast<int>(start.size());
    double nv = norm(start);
    Vec u = (nv > 1e-12) ? scale(1.0 / nv, start) : start;
    double fu = f(u);
    double step = init_step;
    for (int it = 0; it < max_iters && step >= min_step; ++it) {
        bool improved = false;
        for (int i = 0; i < n && !improved; ++i) {
            for (double sgn : {+1.0, -1.0}) {
                Vec cand = u;
                cand[i] += sgn * step;
                double cn = norm(cand);
                if (cn < 1e-12) continue;
                cand = scale(1.0 / cn, cand);
                double fc = f(cand);
                if (fc < fu * (1.0 - 1e-12) || fc < fu - 1e-300) {
                    u = cand;
                    fu = fc;
                    improved = true;
                    break;
                }
            }
        }
        if (!improved) step *= 0.5;
    }
    return u;
}

}  // namespace pconv
