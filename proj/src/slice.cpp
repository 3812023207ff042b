#include "pconv/slice.hpp"

#include "pconv/poly_analysis.hpp"
#include "pconv/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <set>
#include <sstream>

namespace pconv {

SliceGrid SliceGrid::build(const Domain& x, const Vec& origin, const Subspace& w, double h,
                           double extent, std::string label) {
    if (w.dim() < 1 || w.dim() > 3)
        throw std::invalid_argument("SliceGrid: slice dimension must be 1, 2, or 3");
    if (w.ambient() != x.ambient() || static_cast<int>(origin.size()) != x.ambient())
        throw std::invalid_argument("SliceGrid: dimension mismatch");
    if (h <= 0) throw std::invalid_argument("SliceGrid: spacing must be positive");
    if (extent <= 0) throw std::invalid_argument("SliceGrid: degenerate extent");

    SliceGrid g;
    g.spec_ = SliceSpec{origin, w, h, extent, std::move(label)};
    g.ilo_ = static_cast<int>(std::ceil(-extent / h - 1e-9));
    g.ihi_ = static_cast<int>(std::floor(extent / h + 1e-9));
    const int k = w.dim();
    std::size_t total = 1;
    for (int d = 0; d < k; ++d) total *= static_cast<std::size_t>(g.side());
    if (total > (std::size_t(1) << 24))
        throw std::invalid_argument("SliceGrid: window too fine (cell cap exceeded)");
    g.in_x_.assign(total, 0);
    g.d_.assign(total, 0.0);

    std::vector<int> idx(k, g.ilo_);
    for (std::size_t f = 0; f < total; ++f) {
        Vec c = g.center(idx);
        if (x.contains(c)) {
            g.in_x_[f] = 1;
            g.d_[f] = x.boundary_distance(c);
        }
        for (int d = k - 1; d >= 0; --d) {
            if (++idx[d] <= g.ihi_) break;
            idx[d] = g.ilo_;
        }
    }
    return g;
}

std::size_t SliceGrid::flat(const std::vector<int>& idx) const {
    std::size_t f = 0;
    for (int d = 0; d < dim(); ++d) f = f * side() + (idx[d] - ilo_);
    return f;
}

std::vector<int> SliceGrid::unflat(std::size_t f) const {
    std::vector<int> idx(dim());
    for (int d = dim() - 1; d >= 0; --d) {
        idx[d] = static_cast<int>(f % side()) + ilo_;
        f /= side();
    }
    return idx;
}

Vec SliceGrid::center(const std::vector<int>& idx) const {
    Vec c = spec_.origin;
    for (int j = 0; j < dim(); ++j)
        for (int i = 0; i < spec_.basis.ambient(); ++i)
            c[i] += idx[j] * spec_.h * spec_.basis.basis()[j][i];
    return c;
}

Vec SliceGrid::w_coords(const std::vector<int>& idx) const {
    Vec c(dim());
    for (int j = 0; j < dim(); ++j) c[j] = idx[j] * spec_.h;
    return c;
}

bool SliceGrid::on_frontier(const std::vector<int>& idx) const {
    for (int d = 0; d < dim(); ++d)
        if (idx[d] == ilo_ || idx[d] == ihi_) return true;
    return false;
}

std::size_t SliceGrid::count_in_cells() const {
    std::size_t c = 0;
    for (auto v : in_x_) c += v;
    return c;
}

void SliceGrid::neighbors(std::size_t f, std::vector<std::size_t>& out) const {
    out.clear();
    std::vector<int> idx = unflat(f);
    for (int d = 0; d < dim(); ++d) {
        for (int s : {-1, +1}) {
            int v = idx[d] + s;
            if (v < ilo_ || v > ihi_) continue;
            std::vector<int> nd = idx;
            nd[d] = v;
            out.push_back(flat(nd));
        }
    }
}

namespace {

struct Component {
    std::vector<std::size_t> cells;
    bool frontier = false;
    bool near_boundary = false;
    double interior_min = kInf;
    std::size_t argmin = 0;
    double ring_min = kInf;
    bool ring_in_x = true;
};

struct Detection {
    double level;
    double interior_min;
    double ring_min;
    std::size_t argmin;
    std::vector<std::size_t> cells;
};

FailCertificate make_certificate(const SliceGrid& g, const std::vector<std::size_t>& cells,
                                 std::size_t argmin, double interior_min, double boundary_min) {
    FailCertificate cert;
    cert.slice = g.spec();
    cert.cells.reserve(cells.size());
    for (auto f : cells) cert.cells.push_back(g.unflat(f));
    cert.argmin = g.unflat(argmin);
    cert.interior_min = interior_min;
    cert.boundary_min = boundary_min;
    cert.margin = 2.0 * g.spec().h;
    return cert;
}

// Compact candidate around the argmin: in-cells within slice distance
// 2*interior_min. Valid when it stays off the frontier and the near-boundary
// band, every ring neighbor is in X, and the Lipschitz margin holds.
std::optional<FailCertificate> canonical_ball_certificate(const SliceGrid& g, std::size_t argmin) {
    const double h = g.spec().h;
    const double r = 2.0 * g.d(argmin);
    Vec c0 = g.w_coords(g.unflat(argmin));
    std::vector<std::uint8_t> in_k(g.cell_count(), 0);
    std::vector<std::size_t> cells, stack{argmin}, nbrs;
    in_k[argmin] = 1;
    double interior_min = kInf;
    bool valid = true;
    while (!stack.empty() && valid) {
        std::size_t f = stack.back();
        stack.pop_back();
        cells.push_back(f);
        interior_min = std::min(interior_min, g.d(f));
        if (g.d(f) < 2.0 * h) valid = false;
        if (g.on_frontier(g.unflat(f))) valid = false;
        g.neighbors(f, nbrs);
        for (auto nb : nbrs) {
            if (in_k[nb] || !g.in_x(nb)) continue;
            Vec wc = g.w_coords(g.unflat(nb));
            double dist = 0;
            for (std::size_t j = 0; j < wc.size(); ++j) {
                double dd = wc[j] - c0[j];
                dist += dd * dd;
            }
            if (std::sqrt(dist) <= r * (1 + 1e-12)) {
                in_k[nb] = 1;
                stack.push_back(nb);
            }
        }
    }
    if (!valid) return std::nullopt;
    double ring_min = kInf;
    for (auto f : cells) {
        g.neighbors(f, nbrs);
        std::vector<int> idx = g.unflat(f);
        for (auto nb : nbrs) {
            if (in_k[nb]) continue;
            if (!g.in_x(nb)) return std::nullopt;  // K would touch the complement
            ring_min = std::min(ring_min, g.d(nb));
        }
    }
    if (!(ring_min < kInf)) return std::nullopt;
    double interior = interior_min;
    if (!(interior + 2.0 * h < ring_min)) return std::nullopt;
    return make_certificate(g, cells, argmin, interior, ring_min);
}

}  // namespace

MinPrincipleReport min_principle_slice(const SliceGrid& g) {
    MinPrincipleReport rep;
    rep.h = g.spec().h;
    rep.extent = g.spec().extent;
    rep.slices_checked = 1;

    const double h = g.spec().h;
    double dmin = kInf, dmax = 0;
    for (std::size_t f = 0; f < g.cell_count(); ++f) {
        if (!g.in_x(f)) continue;
        double v = g.d(f);
        if (!std::isfinite(v)) continue;
        dmin = std::min(dmin, v);
        dmax = std::max(dmax, v);
    }
    if (!(dmin < kInf) || dmax <= dmin * (1 + 1e-12)) {
        rep.status = MinPrincipleReport::Status::Holds;  // empty, flat, or all-infinite slice
        return rep;
    }

    const int n_levels = 32;
    std::vector<double> levels(n_levels);
    for (int i = 0; i < n_levels; ++i)
        levels[i] = dmin * std::pow(dmax / dmin, (i + 1.0) / n_levels);

    std::vector<Detection> detections;
    bool window_clipped = false;

    std::vector<std::uint32_t> label(g.cell_count());
    std::vector<std::size_t> stack, nbrs;
    for (double c : levels) {
        std::fill(label.begin(), label.end(), 0u);
        std::uint32_t next = 0;
        for (std::size_t s = 0; s < g.cell_count(); ++s) {
            if (!g.in_x(s) || !(g.d(s) < c) || label[s]) continue;
            ++next;
            Component comp;
            stack.assign(1, s);
            label[s] = next;
            while (!stack.empty()) {
                std::size_t f = stack.back();
                stack.pop_back();
                comp.cells.push_back(f);
                double dv = g.d(f);
                if (dv < comp.interior_min) {
                    comp.interior_min = dv;
                    comp.argmin = f;
                }
                if (dv < 2 * h) comp.near_boundary = true;
                if (g.on_frontier(g.unflat(f))) comp.frontier = true;
                g.neighbors(f, nbrs);
                for (auto nb : nbrs) {
                    if (!g.in_x(nb)) continue;
                    if (g.d(nb) < c) {
                        if (!label[nb]) {
                            label[nb] = next;
                            stack.push_back(nb);
                        }
                    } else {
                        comp.ring_min = std::min(comp.ring_min, g.d(nb));
                    }
                }
            }
            if (comp.near_boundary) continue;  // escapes toward the boundary of X
            if (comp.frontier) {
                window_clipped = true;  // the window cannot settle this component
                continue;
            }
            if (comp.interior_min + 2 * h < comp.ring_min)
                detections.push_back(Detection{c, comp.interior_min, comp.ring_min, comp.argmin,
                                               std::move(comp.cells)});
        }
    }

    if (!detections.empty()) {
        rep.status = MinPrincipleReport::Status::Fails;
        // Prefer the compact ball candidate around the deepest detected basin.
        if (auto ball = canonical_ball_certificate(g, detections.front().argmin)) {
            rep.certificates.push_back(std::move(*ball));
        } else {
            const Detection* best = &detections.front();
            for (const auto& det : detections)
                if (det.ring_min - det.interior_min > best->ring_min - best->interior_min)
                    best = &det;
            rep.certificates.push_back(
                make_certificate(g, best->cells, best->argmin, best->interior_min, best->ring_min));
        }
        return rep;
    }
    if (window_clipped) {
        rep.status = MinPrincipleReport::Status::Inconclusive;
        rep.reason = "a sublevel component escapes through the window frontier";
        return rep;
    }
    rep.status = MinPrincipleReport::Status::Holds;
    return rep;
}

std::vector<Vec> family_offsets(const Domain& x, const Subspace& w, const GeomParams& geom) {
    Subspace comp = w.orthogonal_complement();
    std::vector<Vec> pts;
    Vec zero(x.ambient(), 0.0);
    pts.push_back(zero);
    if (comp.is_trivial()) return pts;
    for (double o : geom.offsets) {
        if (o == 0.0) continue;
        for (const auto& u : comp.basis()) pts.push_back(scale(o, u));
    }
    Rng rng(geom.seed ^ 0x0FF5E75u);
    while (static_cast<int>(pts.size()) < geom.n_offsets) {
        Vec coeffs(comp.dim());
        for (auto& v : coeffs) v = rng.uniform_sym() * geom.extent * 0.75;
        pts.push_back(comp.from_coords(coeffs));
    }
    if (geom.n_offsets > 0 && static_cast<int>(pts.size()) > geom.n_offsets)
        pts.resize(geom.n_offsets);
    return pts;
}

MinPrincipleReport min_principle_family(const Domain& x, const Subspace& w,
                                        const std::vector<Vec>& offsets, const GeomParams& geom) {
    MinPrincipleReport rep;
    rep.h = geom.h;
    rep.extent = geom.extent;
    if (w.dim() < 1) throw std::invalid_argument("min_principle_family: trivial subspace");
    if (w.dim() > 3) {
        rep.status = MinPrincipleReport::Status::Inconclusive;
        rep.reason = "slice dimension above the grid cap; no conclusive check available";
        return rep;
    }
    bool inconclusive = false;
    std::string why;
    for (std::size_t i = 0; i < offsets.size(); ++i) {
        std::ostringstream label;
        label << "slice " << i << " @ offset (";
        for (std::size_t j = 0; j < offsets[i].size(); ++j)
            label << (j ? "," : "") << offsets[i][j];
        label << ")";
        SliceGrid g = SliceGrid::build(x, offsets[i], w, geom.h, geom.extent, label.str());
        MinPrincipleReport one = min_principle_slice(g);
        ++rep.slices_checked;
        if (one.fails()) {
            rep.status = MinPrincipleReport::Status::Fails;
            for (auto& c : one.certificates) rep.certificates.push_back(std::move(c));
        } else if (one.status == MinPrincipleReport::Status::Inconclusive && !rep.fails()) {
            inconclusive = true;
            why = one.reason;
        }
    }
    if (rep.fails()) return rep;
    if (inconclusive) {
        rep.status = MinPrincipleReport::Status::Inconclusive;
        rep.reason = why;
        return rep;
    }
    rep.status = MinPrincipleReport::Status::Holds;
    return rep;
}

std::optional<std::vector<std::vector<int>>> escape_path(
    const SliceGrid& g, const std::vector<int>& start,
    const std::vector<std::vector<int>>& k_cells) {
    std::size_t s = g.flat(start);
    if (!g.in_x(s)) throw std::invalid_argument("escape_path: start not in X");
    std::set<std::size_t> blocked;
    for (const auto& c : k_cells) blocked.insert(g.flat(c));
    if (blocked.count(s)) throw std::invalid_argument("escape_path: start lies in K");

    const double h = g.spec().h;
    std::vector<std::size_t> parent(g.cell_count(), SIZE_MAX);
    std::queue<std::size_t> q;
    std::vector<std::uint8_t> seen(g.cell_count(), 0);
    q.push(s);
    seen[s] = 1;
    std::vector<std::size_t> nbrs;
    while (!q.empty()) {
        std::size_t f = q.front();
        q.pop();
        bool is_escape = g.d(f) < 2 * h || g.on_frontier(g.unflat(f));
        if (is_escape) {
            std::vector<std::vector<int>> path;
            for (std::size_t cur = f; cur != SIZE_MAX; cur = parent[cur]) {
                path.push_back(g.unflat(cur));
                if (cur == s) break;
            }
            std::reverse(path.begin(), path.end());
            return path;
        }
        g.neighbors(f, nbrs);
        for (auto nb : nbrs) {
            if (seen[nb] || !g.in_x(nb) || blocked.count(nb)) continue;
            seen[nb] = 1;
            parent[nb] = f;
            q.push(nb);
        }
    }
    return std::nullopt;
}

std::vector<Vec> characteristic_directions(const Polynomial& p, std::uint64_t seed) {
    ZeroSetReport zr = zero_set_structure(p.principal_part(), seed);
    if (zr.kind == ZeroSetReport::Kind::TrivialZeroSet) return {};
    if (zr.kind != ZeroSetReport::Kind::SubspaceZeroSet)
        throw std::invalid_argument(
            "characteristic_directions: principal zero set is not a subspace");
    std::vector<Vec> out;
    for (const auto& b : zr.zero_set->basis()) {
        out.push_back(b);
        out.push_back(scale(-1.0, b));
    }
    return out;
}

ReplayResult replay_certificate(const Domain& x, const FailCertificate& cert) {
    ReplayResult res;
    const double h2 = cert.slice.h / 2.0;
    res.h = h2;
    SliceGrid fine = SliceGrid::build(x, cert.slice.origin, cert.slice.basis, h2,
                                      cert.slice.extent, cert.slice.label + " (replay)");
    // The certificate region in fine cells: |g_j - 2 i_j| <= 1 for some coarse
    // K cell i (fine centers inside the union of closed coarse cells).
    std::set<std::size_t> k_fine;
    const int k = fine.dim();
    std::vector<int> g(k);
    for (const auto& cell : cert.cells) {
        std::vector<int> base(k);
        for (int d = 0; d < k; ++d) base[d] = 2 * cell[d];
        int combos = 1;
        for (int d = 0; d < k; ++d) combos *= 3;
        for (int m = 0; m < combos; ++m) {
            int rem = m;
            bool ok = true;
            for (int d = 0; d < k; ++d) {
                g[d] = base[d] + (rem % 3) - 1;
                rem /= 3;
                if (g[d] < fine.lo() || g[d] > fine.hi()) ok = false;
            }
            if (ok) k_fine.insert(fine.flat(g));
        }
    }
    if (k_fine.empty()) return res;

    double interior = kInf, ring = kInf;
    std::vector<std::size_t> nbrs;
    for (auto f : k_fine) {
        if (!fine.in_x(f)) return res;  // region must stay inside X
        interior = std::min(interior, fine.d(f));
        fine.neighbors(f, nbrs);
        for (auto nb : nbrs) {
            if (k_fine.count(nb)) continue;
            if (!fine.in_x(nb)) return res;
            ring = std::min(ring, fine.d(nb));
        }
    }
    res.interior_min = interior;
    res.boundary_min = ring;
    res.ok = (ring < kInf) && (interior + 2 * h2 < ring);
    return res;
}

}  // namespace pconv
