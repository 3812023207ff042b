#pragma once

#include "pconv/poly_analysis.hpp"
#include "pconv/polynomial.hpp"
#include "pconv/subspace.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace pconv {

struct SigmaParams {
    std::vector<double> t_grid{1, 2, 4, 8};
    std::vector<double> radius_schedule{10, 100, 1000, 10000};
    int n_directions = 200;
    int ball_samples = 500;
    int descent_iters = 50;
    std::uint64_t seed = 0xC0FFEE;

    void validate() const;
};

struct SigmaEstimate {
    double value = 1.0;                        // min over per_t
    std::map<double, double> per_t;            // t -> liminf/inf estimate
    std::map<double, std::map<double, double>> trace;  // t -> radius -> min ratio
    bool converged = false;                    // last two radii agree within 10%
};

// sup_{x in V, |x| <= t} |P(x + xi)|, estimated by quasi-uniform ball sampling
// plus multistart projected gradient ascent. V trivial gives |P(xi)| exactly.
double p_tilde_sub(const Polynomial& p, const Subspace& v, const Vec& xi, double t,
                   const SigmaParams& params = {});

// Ratio localization functional: inf_t of the large-|xi| behaviour of
// p_tilde_sub(P,V)/p_tilde_sub(P,R^n). Heuristic estimator, never used to
// assert exact zero values in verdicts.
SigmaEstimate sigma_estimate(const Polynomial& p, const Subspace& v, const SigmaParams& params = {});

// Same machinery with the infimum over all xi (small radii and 0 included).
SigmaEstimate sigma0_estimate(const Polynomial& p, const Subspace& v,
                              const SigmaParams& params = {});

// Exact rule table for {x : sigma_P(x) = 0} on the settled operator classes:
//  (a) P acts along W and is elliptic on W          -> W^perp
//  (b) P = Q+ for semi-elliptic Q with zero set Z   -> Z x R
// nullopt when P matches neither; callers fall back to the estimator.
std::optional<Subspace> sigma_zero_subspace_exact(const Polynomial& p,
                                                  std::uint64_t seed = 0xC0FFEE);

}  // namespace pconv
