#pragma once

#include "pconv/subspace.hpp"

#include <cstdint>
#include <limits>
#include <memory>
#include <string>
#include <vector>

namespace pconv {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Membership grid with a precomputed distance transform (approximate d).
struct GridData {
    Vec lo, hi;
    double spacing = 0;
    std::vector<int> dims;            // cells per axis
    std::vector<std::uint8_t> inside; // row-major, last axis fastest
    std::vector<double> dist;         // distance to the complement, cell centers

    std::size_t index(const std::vector<int>& idx) const;
    bool cell_of(const Vec& x, std::vector<int>& idx) const;
};

// Open subsets of R^n with exact boundary distance per variant.
class Domain {
public:
    enum class Kind {
        FullSpace,
        OpenBall,
        OpenBox,
        HalfSpace,
        ComplementOfAffine,
        FiniteIntersection,
        GridDomain,
        Product,
    };

    static Domain full_space(int n);
    static Domain ball(Vec center, double radius);
    static Domain box(Vec lo, Vec hi);
    // {x : <normal, x> < offset}
    static Domain half_space(Vec normal, double offset);
    // Complement of the affine set point + span(directions).
    static Domain complement_of_affine(Vec point, Subspace directions);
    static Domain intersection(std::vector<Domain> members);
    // Takes ownership of the raw membership grid; computes the distance field.
    static Domain grid(GridData data);
    static Domain product(Domain base);  // X x R

    Kind kind() const { return kind_; }
    int ambient() const { return ambient_; }

    bool contains(const Vec& x) const;
    // dist(x, complement). Throws std::domain_error when x is not in X.
    double boundary_distance(const Vec& x) const;
    // True when the distance value is approximate (GridDomain path involved).
    bool distance_is_approximate() const;

    bool is_bounded() const;
    bool is_convex_structural() const;

    const Vec& center() const { return center_; }
    double radius() const { return radius_; }
    const Vec& lo() const { return lo_; }
    const Vec& hi() const { return hi_; }
    const Vec& normal() const { return normal_; }
    double offset() const { return offset_; }
    const Vec& affine_point() const { return center_; }
    const Subspace& affine_directions() const { return *affine_; }
    const std::vector<Domain>& members() const { return members_; }
    const Domain& base() const { return members_.front(); }
    const GridData& grid_data() const { return *grid_; }

    std::string describe() const;

private:
    explicit Domain(Kind k, int ambient) : kind_(k), ambient_(ambient) {}

    Kind kind_;
    int ambient_;
    Vec center_, lo_, hi_, normal_;
    double radius_ = 0, offset_ = 0;
    std::shared_ptr<const Subspace> affine_;
    std::vector<Domain> members_;
    std::shared_ptr<const GridData> grid_;
};

// X x R with d((x,s)) = d_X(x).
Domain product_lift(const Domain& x);

}  // namespace pconv
