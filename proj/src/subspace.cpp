#include "pconv/subspace.hpp"

#include <cmath>
#include <sstream>

namespace pconv {

double dot(const Vec& a, const Vec& b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm(const Vec& a) { return std::sqrt(dot(a, a)); }

Vec axpy(double a, const Vec& x, const Vec& y) {
    Vec r(y);
    for (std::size_t i = 0; i < x.size(); ++i) r[i] += a * x[i];
    return r;
}

Vec scale(double a, const Vec& x) {
    Vec r(x);
    for (auto& v : r) v *= a;
    return r;
}

Subspace Subspace::span(int ambient, const std::vector<Vec>& vectors) {
    Subspace s(ambient);
    for (const auto& v : vectors) {
        if (static_cast<int>(v.size()) != ambient)
            throw std::invalid_argument("Subspace::span: vector length mismatch");
        Vec w = v;
        // Two MGS passes for numerical orthogonality.
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& b : s.basis_) w = axpy(-dot(w, b), b, w);
        double n = norm(w);
        if (n > 1e-10) s.basis_.push_back(scale(1.0 / n, w));
    }
    return s;
}

Subspace Subspace::full(int ambient) {
    std::vector<int> idx(ambient);
    for (int i = 0; i < ambient; ++i) idx[i] = i;
    return axes(ambient, idx);
}

Subspace Subspace::axes(int ambient, const std::vector<int>& idx) {
    Subspace s(ambient);
    for (int i : idx) {
        if (i < 0 || i >= ambient) throw std::invalid_argument("Subspace::axes: index out of range");
        Vec e(ambient, 0.0);
        e[i] = 1.0;
        s.basis_.push_back(std::move(e));
    }
    return s;
}

Subspace Subspace::orthogonal_complement() const {
    Subspace s(ambient_);
    for (int i = 0; i < ambient_ && s.dim() < ambient_ - dim(); ++i) {
        Vec e(ambient_, 0.0);
        e[i] = 1.0;
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& b : basis_) e = axpy(-dot(e, b), b, e);
            for (const auto& b : s.basis_) e = axpy(-dot(e, b), b, e);
        }
        double n = norm(e);
        if (n > 1e-10) s.basis_.push_back(scale(1.0 / n, e));
    }
    return s;
}

Vec Subspace::project(const Vec& x) const {
    Vec r(ambient_, 0.0);
    for (const auto& b : basis_) r = axpy(dot(x, b), b, r);
    return r;
}

double Subspace::distance(const Vec& x) const {
    Vec p = project(x);
    double s = 0;
    for (int i = 0; i < ambient_; ++i) {
        double d = x[i] - p[i];
        s += d * d;
    }
    return std::sqrt(s);
}

bool Subspace::contains_vector(const Vec& x, double tol) const {
    double n = norm(x);
    if (n == 0) return true;
    return distance(x) <= tol * std::max(1.0, n);
}

bool Subspace::contains(const Subspace& other, double tol) const {
    for (const auto& b : other.basis_)
        if (!contains_vector(b, tol)) return false;
    return true;
}

Subspace Subspace::cross_zero() const {
    Subspace s(ambient_ + 1);
    for (const auto& b : basis_) {
        Vec v = b;
        v.push_back(0.0);
        s.basis_.push_back(std::move(v));
    }
    return s;
}

Subspace Subspace::cross_line() const {
    Subspace s = cross_zero();
    Vec e(ambient_ + 1, 0.0);
    e.back() = 1.0;
    s.basis_.push_back(std::move(e));
    return s;
}

Vec Subspace::from_coords(const Vec& coeffs) const {
    if (static_cast<int>(coeffs.size()) != dim())
        throw std::invalid_argument("from_coords: coefficient length mismatch");
    Vec r(ambient_, 0.0);
    for (int j = 0; j < dim(); ++j) r = axpy(coeffs[j], basis_[j], r);
    return r;
}

Vec Subspace::coords_of(const Vec& x) const {
    Vec r(dim());
    for (int j = 0; j < dim(); ++j) r[j] = dot(x, basis_[j]);
    return r;
}

std::string Subspace::to_string() const {
    std::ostringstream os;
    os << "span{";
    for (int j = 0; j < dim(); ++j) {
        if (j) os << "; ";
        os << "(";
        for (int i = 0; i < ambient_; ++i) {
            if (i) os << ",";
            os << basis_[j][i];
        }
        os << ")";
    }
    os << "} in R^" << ambient_;
    return os.str();
}

}  // namespace pconv
