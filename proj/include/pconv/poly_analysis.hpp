#pragma once

#include "pconv/polynomial.hpp"
#include "pconv/subspace.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace pconv {

// Relative ellipticity threshold: eps = kEllipticEps * coefficient scale.
inline constexpr double kEllipticEpsRel = 1e-7;
// Refusal band: minima in (eps, kRefusalBand*eps] give Unknown, not a verdict.
inline constexpr double kRefusalBand = 10.0;

// Nullspace of a rational matrix (rows x cols), exact Gauss-Jordan.
std::vector<std::vector<Rat>> rational_kernel(std::vector<std::vector<Rat>> rows, int cols);

// Smallest subspace W with P(x + xi) = P(x) for all xi orthogonal to W.
Subspace dependence_subspace(const Polynomial& p);

// True iff the exact restriction of P to span(V) vanishes (coefficients below
// 1e-12 * coefficient scale; exact when the basis entries are dyadic).
bool vanishes_on_subspace(const Polynomial& p, const Subspace& v);

// Polynomial in dim(W) variables realizing P on W: y -> P(sum y_j b_j).
Polynomial restrict_to_subspace(const Polynomial& p, const Subspace& w);

struct EllipticityResult {
    enum class Verdict { Elliptic, NotElliptic, Unknown };
    Verdict verdict = Verdict::Unknown;
    // Measured min of |principal part of the restriction| on the unit sphere.
    double c_lower = 0.0;
    std::optional<Vec> witness;  // unit direction with |P_m| below threshold
    double eps = 0.0;            // threshold used
    bool elliptic() const { return verdict == Verdict::Elliptic; }
};

// Requires dependence_subspace(P) contained in W; throws otherwise.
EllipticityResult is_elliptic_on(const Polynomial& p, const Subspace& w,
                                 std::uint64_t seed = 0xC0FFEE);

struct SemiEllipticity {
    enum class Status { Accepted, WeightViolation, PrincipalVanishes, Unknown };
    Status status = Status::Unknown;
    std::vector<int> weights;        // canonical candidate m_j = deg_{x_j} P (>=1)
    Polynomial weighted_principal;   // terms with |alpha : m| == 1
    std::optional<Vec> witness;      // unit vector where the weighted principal ~ 0
    double witness_value = 0.0;      // |weighted_principal(witness)|
    double sphere_min = 0.0;         // min |weighted principal| on the weighted sphere
    bool accepted() const { return status == Status::Accepted; }
};

// Tests the canonical weight candidate only (no coordinate search).
SemiEllipticity semi_elliptic_weights(const Polynomial& p, std::uint64_t seed = 0xC0FFEE);

struct ZeroSetReport {
    enum class Kind { SubspaceZeroSet, NotSubspace, TrivialZeroSet, Unknown };
    Kind kind = Kind::Unknown;
    std::optional<Subspace> zero_set;               // SubspaceZeroSet
    std::optional<std::pair<Vec, Vec>> witness_pair;  // NotSubspace: two unit zeros
    std::optional<Vec> nonvanishing_direction;        // in their span, |Q| large
    double sphere_min = 0.0;
    std::string note;
};

// Structure of {x : Q(x) = 0} for homogeneous Q. Semi-decision: SubspaceZeroSet
// and TrivialZeroSet are confirmed; NotSubspace carries an evaluable witness.
ZeroSetReport zero_set_structure(const Polynomial& q, std::uint64_t seed = 0xC0FFEE);

}  // namespace pconv
