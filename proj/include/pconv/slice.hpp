#pragma once

#include "pconv/domain.hpp"
#include "pconv/polynomial.hpp"
#include "pconv/subspace.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace pconv {

struct GeomParams {
    double h = 0.05;
    double extent = 2.0;               // slice window halfwidth per W-direction
    std::vector<double> offsets{0, 0.25, -0.25, 0.5, -0.5, 1, -1};
    int n_offsets = 0;                 // when > 0, pad with seeded random offsets
    std::uint64_t seed = 0xC0FFEE;
};

struct SliceSpec {
    Vec origin;
    Subspace basis;  // dim k in {1,2,3}
    double h = 0;
    double extent = 0;
    std::string label;
};

// Discretization of (origin + W) within the window, with membership and d_X
// at cell centers. Cell index i maps to origin + sum_j (i_j * h) b_j.
class SliceGrid {
public:
    static SliceGrid build(const Domain& x, const Vec& origin, const Subspace& w, double h,
                           double extent, std::string label = {});

    const SliceSpec& spec() const { return spec_; }
    int dim() const { return spec_.basis.dim(); }
    int lo() const { return ilo_; }
    int hi() const { return ihi_; }
    int side() const { return ihi_ - ilo_ + 1; }
    std::size_t cell_count() const { return in_x_.size(); }

    std::size_t flat(const std::vector<int>& idx) const;
    std::vector<int> unflat(std::size_t f) const;
    bool in_x(std::size_t f) const { return in_x_[f] != 0; }
    double d(std::size_t f) const { return d_[f]; }
    Vec center(const std::vector<int>& idx) const;
    Vec w_coords(const std::vector<int>& idx) const;
    bool on_frontier(const std::vector<int>& idx) const;

    std::size_t count_in_cells() const;
    // 2k-neighborhood; returns flat indices of valid neighbors.
    void neighbors(std::size_t f, std::vector<std::size_t>& out) const;

private:
    SliceSpec spec_;
    int ilo_ = 0, ihi_ = -1;
    std::vector<std::uint8_t> in_x_;
    std::vector<double> d_;
};

struct FailCertificate {
    SliceSpec slice;
    std::vector<std::vector<int>> cells;  // the compact region K, cell indices
    std::vector<int> argmin;              // interior point x0
    double interior_min = 0;
    double boundary_min = 0;
    double margin = 0;  // Lipschitz safety: 2h
};

struct MinPrincipleReport {
    enum class Status { Holds, Fails, Inconclusive };
    Status status = Status::Holds;
    double h = 0;
    double extent = 0;
    int slices_checked = 0;
    std::vector<FailCertificate> certificates;  // one per failing slice
    std::string reason;

    bool holds() const { return status == Status::Holds; }
    bool fails() const { return status == Status::Fails; }
};

// Level-set scan for a minimum-principle counterexample on one slice.
MinPrincipleReport min_principle_slice(const SliceGrid& slice);

// Aggregates slices at the given translate points. Any failure dominates;
// inconclusive propagates; otherwise holds with the count of slices checked.
MinPrincipleReport min_principle_family(const Domain& x, const Subspace& w,
                                        const std::vector<Vec>& offsets, const GeomParams& geom);

// Translate points spanning the orthogonal complement of W: an axis ladder
// from geom.offsets plus seeded random fill up to geom.n_offsets.
std::vector<Vec> family_offsets(const Domain& x, const Subspace& w, const GeomParams& geom);

// Discrete W-regular escape: BFS through in-cells avoiding K, ending at a
// cell with d < 2h or on the window frontier.
std::optional<std::vector<std::vector<int>>> escape_path(const SliceGrid& slice,
                                                         const std::vector<int>& start,
                                                         const std::vector<std::vector<int>>& k_cells);

// +- basis of the real zero set of the principal part; empty when trivial.
// Throws when the zero set is not a subspace (or unknown).
std::vector<Vec> characteristic_directions(const Polynomial& p, std::uint64_t seed = 0xC0FFEE);

struct ReplayResult {
    bool ok = false;
    double interior_min = 0;
    double boundary_min = 0;
    double h = 0;
};

// Re-evaluates the certificate region at spacing h/2.
ReplayResult replay_certificate(const Domain& x, const FailCertificate& cert);

}  // namespace pconv
