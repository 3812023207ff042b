#include "pconv/domain.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace pconv {

std::size_t GridData::index(const std::vector<int>& idx) const {
    std::size_t r = 0;
    for (std::size_t d = 0; d < dims.size(); ++d) r = r * dims[d] + idx[d];
    return r;
}

bool GridData::cell_of(const Vec& x, std::vector<int>& idx) const {
    idx.resize(dims.size());
    for (std::size_t d = 0; d < dims.size(); ++d) {
        double f = (x[d] - lo[d]) / spacing;
        int i = static_cast<int>(std::floor(f));
        if (i < 0 || i >= dims[d]) return false;
        idx[d] = i;
    }
    return true;
}

namespace {

// 1-D squared distance transform (Felzenszwalb-Huttenlocher).
void edt_1d(const std::vector<double>& f, std::vector<double>& out) {
    const int n = static_cast<int>(f.size());
    out.assign(n, 0.0);
    std::vector<int> v(n);
    std::vector<double> z(n + 1);
    int k = 0;
    v[0] = 0;
    z[0] = -kInf;
    z[1] = kInf;
    for (int q = 1; q < n; ++q) {
        double s;
        while (true) {
            s = ((f[q] + q * q) - (f[v[k]] + v[k] * v[k])) / (2.0 * q - 2.0 * v[k]);
            if (s <= z[k]) {
                --k;
            } else {
                break;
            }
        }
        ++k;
        v[k] = q;
        z[k] = s;
        z[k + 1] = kInf;
    }
    k = 0;
    for (int q = 0; q < n; ++q) {
        while (z[k + 1] < q) ++k;
        out[q] = (q - v[k]) * (q - v[k]) + f[v[k]];
    }
}

void compute_grid_distance(GridData& g) {
    const int nd = static_cast<int>(g.dims.size());
    std::size_t total = 1;
    for (int d : g.dims) total *= d;
    // Squared distance in cell units; complement cells are sources.
    std::vector<double> sq(total);
    for (std::size_t i = 0; i < total; ++i) sq[i] = g.inside[i] ? 1e18 : 0.0;

    // Sweep each axis with the 1-D transform.
    std::vector<int> stride(nd, 1);
    for (int d = nd - 2; d >= 0; --d) stride[d] = stride[d + 1] * g.dims[d + 1];
    for (int axis = 0; axis < nd; ++axis) {
        const int len = g.dims[axis];
        std::vector<double> line(len), out(len);
        std::size_t lines = total / len;
        for (std::size_t li = 0; li < lines; ++li) {
            // Decompose li into indices of the other axes.
            std::size_t rem = li, base = 0;
            for (int d = nd - 1; d >= 0; --d) {
                if (d == axis) continue;
                std::size_t i = rem % g.dims[d];
                rem /= g.dims[d];
                base += i * stride[d];
            }
            for (int i = 0; i < len; ++i) line[i] = sq[base + i * stride[axis]];
            edt_1d(line, out);
            for (int i = 0; i < len; ++i) sq[base + i * stride[axis]] = out[i];
        }
    }
    g.dist.resize(total);
    for (std::size_t i = 0; i < total; ++i) g.dist[i] = std::sqrt(sq[i]) * g.spacing;
}

}  // namespace

Domain Domain::full_space(int n) {
    if (n < 1) throw std::invalid_argument("full_space: dimension must be positive");
    return Domain(Kind::FullSpace, n);
}

Domain Domain::ball(Vec center, double radius) {
    if (radius <= 0) throw std::invalid_argument("ball: radius must be positive");
    Domain d(Kind::OpenBall, static_cast<int>(center.size()));
    d.center_ = std::move(center);
    d.radius_ = radius;
    return d;
}

Domain Domain::box(Vec lo, Vec hi) {
    if (lo.size() != hi.size() || lo.empty()) throw std::invalid_argument("box: bad bounds");
    for (std::size_t i = 0; i < lo.size(); ++i)
        if (!(lo[i] < hi[i])) throw std::invalid_argument("box: lo must be < hi componentwise");
    Domain d(Kind::OpenBox, static_cast<int>(lo.size()));
    d.lo_ = std::move(lo);
    d.hi_ = std::move(hi);
    return d;
}

Domain Domain::half_space(Vec normal, double offset) {
    double n = norm(normal);
    if (n <= 0) throw std::invalid_argument("half_space: zero normal");
    Domain d(Kind::HalfSpace, static_cast<int>(normal.size()));
    d.normal_ = scale(1.0 / n, normal);
    d.offset_ = offset / n;
    return d;
}

Domain Domain::complement_of_affine(Vec point, Subspace directions) {
    if (static_cast<int>(point.size()) != directions.ambient())
        throw std::invalid_argument("complement_of_affine: dimension mismatch");
    if (directions.dim() >= directions.ambient())
        throw std::invalid_argument("complement_of_affine: affine set must be proper");
    Domain d(Kind::ComplementOfAffine, static_cast<int>(point.size()));
    d.center_ = std::move(point);
    d.affine_ = std::make_shared<Subspace>(std::move(directions));
    return d;
}

Domain Domain::intersection(std::vector<Domain> members) {
    if (members.empty()) throw std::invalid_argument("intersection: no members");
    int n = members.front().ambient();
    for (const auto& m : members)
        if (m.ambient() != n) throw std::invalid_argument("intersection: mixed ambient dimensions");
    Domain d(Kind::FiniteIntersection, n);
    d.members_ = std::move(members);
    return d;
}

Domain Domain::grid(GridData data) {
    if (data.spacing <= 0) throw std::invalid_argument("grid: spacing must be positive");
    if (data.dims.empty() || data.dims.size() > 3)
        throw std::invalid_argument("grid: 1 to 3 dimensions supported");
    std::size_t total = 1;
    for (int d : data.dims) {
        if (d < 1) throw std::invalid_argument("grid: empty axis");
        total *= d;
    }
    if (data.inside.size() != total) throw std::invalid_argument("grid: membership size mismatch");
    if (data.lo.size() != data.dims.size() || data.hi.size() != data.dims.size())
        throw std::invalid_argument("grid: bounds dimension mismatch");
    compute_grid_distance(data);
    Domain d(Kind::GridDomain, static_cast<int>(data.dims.size()));
    d.grid_ = std::make_shared<GridData>(std::move(data));
    return d;
}

Domain Domain::product(Domain base) {
    Domain d(Kind::Product, base.ambient() + 1);
    d.members_.push_back(std::move(base));
    return d;
}

Domain product_lift(const Domain& x) { return Domain::product(x); }

bool Domain::contains(const Vec& x) const {
    if (static_cast<int>(x.size()) != ambient_)
        throw std::invalid_argument("Domain::contains: dimension mismatch");
    switch (kind_) {
        case Kind::FullSpace:
            return true;
        case Kind::OpenBall: {
            Vec d = x;
            for (int i = 0; i < ambient_; ++i) d[i] -= center_[i];
            return norm(d) < radius_;
        }
        case Kind::OpenBox:
            for (int i = 0; i < ambient_; ++i)
                if (!(lo_[i] < x[i] && x[i] < hi_[i])) return false;
            return true;
        case Kind::HalfSpace:
            return dot(normal_, x) < offset_;
        case Kind::ComplementOfAffine: {
            Vec rel = x;
            for (int i = 0; i < ambient_; ++i) rel[i] -= center_[i];
            return affine_->distance(rel) > 0;
        }
        case Kind::FiniteIntersection:
            for (const auto& m : members_)
                if (!m.contains(x)) return false;
            return true;
        case Kind::GridDomain: {
            std::vector<int> idx;
            if (!grid_->cell_of(x, idx)) return false;
            return grid_->inside[grid_->index(idx)] != 0;
        }
        case Kind::Product: {
            Vec proj(x.begin(), x.end() - 1);
            return members_.front().contains(proj);
        }
    }
    return false;
}

double Domain::boundary_distance(const Vec& x) const {
    if (!contains(x)) throw std::domain_error("boundary_distance: point not in the domain");
    switch (kind_) {
        case Kind::FullSpace:
            return kInf;
        case Kind::OpenBall: {
            Vec d = x;
            for (int i = 0; i < ambient_; ++i) d[i] -= center_[i];
            return radius_ - norm(d);
        }
        case Kind::OpenBox: {
            double m = kInf;
            for (int i = 0; i < ambient_; ++i) m = std::min({m, x[i] - lo_[i], hi_[i] - x[i]});
            return m;
        }
        case Kind::HalfSpace:
            return offset_ - dot(normal_, x);
        case Kind::ComplementOfAffine: {
            Vec rel = x;
            for (int i = 0; i < ambient_; ++i) rel[i] -= center_[i];
            return affine_->distance(rel);
        }
        case Kind::FiniteIntersection: {
            // Complement of an intersection is the union of complements.
            double m = kInf;
            for (const auto& d : members_) m = std::min(m, d.boundary_distance(x));
            return m;
        }
        case Kind::GridDomain: {
            std::vector<int> idx;
            grid_->cell_of(x, idx);
            double dval = grid_->dist[grid_->index(idx)];
            // The outside of the bounding box is complement too.
            for (std::size_t i = 0; i < idx.size(); ++i) {
                dval = std::min(dval, x[i] - grid_->lo[i]);
                dval = std::min(dval, grid_->hi[i] - x[i]);
            }
            return std::max(dval, 0.0);
        }
        case Kind::Product: {
            Vec proj(x.begin(), x.end() - 1);
            return members_.front().boundary_distance(proj);
        }
    }
    return 0;
}

bool Domain::distance_is_approximate() const {
    switch (kind_) {
        case Kind::GridDomain:
            return true;
        case Kind::FiniteIntersection:
            for (const auto& m : members_)
                if (m.distance_is_approximate()) return true;
            return false;
        case Kind::Product:
            return members_.front().distance_is_approximate();
        default:
            return false;
    }
}

bool Domain::is_bounded() const {
    switch (kind_) {
        case Kind::OpenBall:
        case Kind::OpenBox:
        case Kind::GridDomain:
            return true;
        case Kind::FiniteIntersection:
            for (const auto& m : members_)
                if (m.is_bounded()) return true;
            return false;
        default:
            return false;
    }
}

bool Domain::is_convex_structural() const {
    switch (kind_) {
        case Kind::FullSpace:
        case Kind::OpenBall:
        case Kind::OpenBox:
        case Kind::HalfSpace:
            return true;
        case Kind::FiniteIntersection:
            for (const auto& m : members_)
                if (!m.is_convex_structural()) return false;
            return true;
        case Kind::Product:
            return members_.front().is_convex_structural();
        default:
            return false;
    }
}

std::string Domain::describe() const {
    std::ostringstream os;
    auto vec = [&](const Vec& v) {
        os << "(";
        for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
        os << ")";
    };
    switch (kind_) {
        case Kind::FullSpace:
            os << "R^" << ambient_;
            break;
        case Kind::OpenBall:
            os << "ball ";
            vec(center_);
            os << " r=" << radius_;
            break;
        case Kind::OpenBox:
            os << "box ";
            vec(lo_);
            os << "..";
            vec(hi_);
            break;
        case Kind::HalfSpace:
            os << "halfspace <n,x> < " << offset_ << ", n=";
            vec(normal_);
            break;
        case Kind::ComplementOfAffine:
            os << "complement of affine set through ";
            vec(center_);
            os << " dim " << affine_->dim();
            break;
        case Kind::FiniteIntersection:
            os << "intersection of " << members_.size() << " domains";
            break;
        case Kind::GridDomain:
            os << "grid domain " << grid_->dims.size() << "-d, spacing " << grid_->spacing;
            break;
        case Kind::Product:
            os << members_.front().describe() << " x R";
            break;
    }
    return os.str();
}

}  // namespace pconv
