#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace pconv {

using Vec = std::vector<double>;

double dot(const Vec& a, const Vec& b);
double norm(const Vec& a);
Vec axpy(double a, const Vec& x, const Vec& y);  // a*x + y
Vec scale(double a, const Vec& x);

// Subspace of R^n held as an orthonormal basis. k = 0 is the trivial subspace.
class Subspace {
public:
    explicit Subspace(int ambient) : ambient_(ambient) {
        if (ambient < 1) throw std::invalid_argument("Subspace: ambient must be positive");
    }

    // Orthonormalizes (modified Gram-Schmidt), dropping dependent vectors.
    static Subspace span(int ambient, const std::vector<Vec>& vectors);
    static Subspace full(int ambient);
    static Subspace trivial(int ambient) { return Subspace(ambient); }
    static Subspace axes(int ambient, const std::vector<int>& idx);  // 0-based

    int ambient() const { return ambient_; }
    int dim() const { return static_cast<int>(basis_.size()); }
    bool is_trivial() const { return basis_.empty(); }
    bool is_full() const { return dim() == ambient_; }
    const std::vector<Vec>& basis() const { return basis_; }

    Subspace orthogonal_complement() const;

    // Component of x inside / distance from the subspace.
    Vec project(const Vec& x) const;
    double distance(const Vec& x) const;
    bool contains_vector(const Vec& x, double tol = 1e-9) const;
    bool contains(const Subspace& other, double tol = 1e-9) const;

    // Embeds into R^{ambient+1} with last coordinate 0 (V x {0}).
    Subspace cross_zero() const;
    // V x R: embeds and adjoins the new last axis.
    Subspace cross_line() const;

    // Point in ambient coordinates from coefficients in this basis.
    Vec from_coords(const Vec& coeffs) const;
    Vec coords_of(const Vec& x) const;

    std::string to_string() const;

private:
    int ambient_;
    std::vector<Vec> basis_;
};

}  // namespace pconv
