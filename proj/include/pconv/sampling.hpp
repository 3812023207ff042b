#pragma once

#include "pconv/compiled_poly.hpp"
#include "pconv/subspace.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

namespace pconv {

inline constexpr std::uint64_t kDefaultSeed = 0xC0FFEE;

// splitmix64: tiny, portable, deterministic.
struct Rng {
    std::uint64_t state;
    explicit Rng(std::uint64_t seed = kDefaultSeed) : state(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }
    double uniform() { return (next() >> 11) * 0x1.0p-53; }  // [0,1)
    double uniform_sym() { return 2.0 * uniform() - 1.0; }
    // Box-Muller; one value per call (second discarded for simplicity).
    double gaussian();
    Vec unit_vector(int n);
};

// Quasi-uniform unit directions on S^{k-1}. Always starts with +-e_j, then
// `extra` vectors to seed (normalized), then fills up deterministically:
// evenly spaced angles for k=2, Fibonacci sphere for k=3, seeded gaussian
// directions above. Angular resolution delta decides the count, capped.
std::vector<Vec> sphere_directions(int k, double delta, std::uint64_t seed,
                                   const std::vector<Vec>& extra = {},
                                   std::size_t cap = 2'000'000);

// Cached variant for the hot scan paths; no extras, shared across calls.
std::shared_ptr<const std::vector<Vec>> sphere_directions_shared(int k, double delta,
                                                                 std::uint64_t seed);

// Resolution used by ellipticity-style scans: 0.01 rad for k <= 4, 0.05 above.
double sphere_resolution(int k);
// Direction-count cap per dimension (full resolution through dim 3).
std::size_t sphere_cap(int k);

// Deterministic points in the closed unit ball of R^k (center + boundary axes
// + seeded interior/boundary points).
std::vector<Vec> ball_points(int k, int count, std::uint64_t seed);

// Result of a sphere scan plus local polish.
struct SphereMin {
    double value = 0.0;  // min |P|^2 found (not squared-rooted)
    Vec argmin;
};

// Minimize |P|^2 over the unit sphere: dense scan + projected gradient
// descent from the best starts. Deterministic.
SphereMin sphere_minimize_abs(const CompiledPoly& cp, double delta, std::uint64_t seed,
                              int polish_starts = 5, int iters = 60,
                              const std::vector<Vec>& extra_seeds = {});

// Projected gradient descent of |P|^2 restricted to the unit sphere from a
// given start. Returns the polished point (unit norm).
SphereMin sphere_descend_abs(const CompiledPoly& cp, Vec start, int iters = 60);

// Maximize |P(xi + B*theta)| over {|theta| <= t} where B has columns =
// basis vectors of V. sample_count quasi-random starts + ascent from the best
// `polish_starts`. Returns sup estimate of |P| (not squared).
double ball_sup_abs(const CompiledPoly& cp, const Vec& xi, const Subspace& V, double t,
                    int sample_count, int polish_starts, int iters, std::uint64_t seed);

// Pattern-search minimization of a function on the unit sphere of R^n.
// Deterministic; used to refine direction sweeps.
Vec sphere_pattern_search(const std::function<double(const Vec&)>& f, Vec start,
                          double init_step, double min_step, int max_iters);

}  // namespace pconv
