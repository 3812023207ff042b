#include "doctest.h"

#include "pconv/sampling.hpp"
#include "pconv/sigma.hpp"
#include "support/oracles.hpp"

using namespace pconv;

namespace {

Polynomial heat2() { return parse_polynomial("i*x1 - x2^2"); }
Polynomial lap3sub() { return parse_polynomial("x1^2 + x2^2", 3); }

SigmaParams fast_params() {
    SigmaParams par;
    par.ball_samples = 200;
    par.n_directions = 120;
    return par;
}

}  // namespace

TEST_CASE("p_tilde_sub: frozen small cases") {
    Polynomial x1 = parse_polynomial("x1");
    CHECK(p_tilde_sub(x1, Subspace::full(1), {0.0}, 1.0) == doctest::Approx(1.0).epsilon(1e-6));

    Polynomial lap2 = parse_polynomial("x1^2 + x2^2");
    double v = p_tilde_sub(lap2, Subspace::axes(2, {1}), {10.0, 0.0}, 1.0);
    CHECK(v == doctest::Approx(101.0).epsilon(1e-6));

    // V trivial: |P(xi)| exactly; t = 0 likewise.
    CHECK(p_tilde_sub(lap2, Subspace::trivial(2), {3.0, 4.0}, 2.0) == doctest::Approx(25.0));
    CHECK(p_tilde_sub(lap2, Subspace::full(2), {3.0, 4.0}, 0.0) == doctest::Approx(25.0));

    CHECK_THROWS_AS(p_tilde_sub(lap2, Subspace::full(2), {0.0, 0.0}, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(p_tilde_sub(lap2, Subspace::full(3), {0.0, 0.0, 0.0}, 1.0),
                    std::invalid_argument);
}

TEST_CASE("p_tilde_sub agrees with the dense-grid oracle") {
    double est = p_tilde_sub(heat2(), Subspace::full(2), {3.0, 2.0}, 2.0);
    double oracle = pconv::testing::brute_force_ball_sup(heat2(), Subspace::full(2), {3.0, 2.0}, 2.0);
    CHECK(std::abs(est - oracle) <= 0.01 * oracle);

    Rng rng(kDefaultSeed);
    std::vector<Polynomial> polys{heat2(), parse_polynomial("x1^2+x2^2"),
                                  parse_polynomial("(x1+x2)^2"), parse_polynomial("x1^2 - x2^2")};
    for (int c = 0; c < 12; ++c) {
        const Polynomial& p = polys[c % polys.size()];
        Vec xi{rng.uniform_sym() * 8, rng.uniform_sym() * 8};
        double t = 0.5 + 3 * rng.uniform();
        double e = p_tilde_sub(p, Subspace::full(2), xi, t);
        double o = pconv::testing::brute_force_ball_sup(p, Subspace::full(2), xi, t);
        CHECK(std::abs(e - o) <= 0.01 * std::max(o, 1e-12));
    }
}

TEST_CASE("p_tilde_sub: monotone in t and V") {
    Rng rng(1234);
    Polynomial p = heat2();
    Subspace v1 = Subspace::axes(2, {0});
    Subspace v2 = Subspace::full(2);
    for (int c = 0; c < 30; ++c) {
        Vec xi{rng.uniform_sym() * 5, rng.uniform_sym() * 5};
        double t = 0.5 + 2 * rng.uniform();
        double small = p_tilde_sub(p, v2, xi, t);
        double big = p_tilde_sub(p, v2, xi, t * 1.5);
        CHECK(small <= big * (1 + 1e-9) + 1e-12);
        double sub = p_tilde_sub(p, v1, xi, t);
        double full = p_tilde_sub(p, v2, xi, t);
        CHECK(sub <= full * (1 + 1e-6) + 1e-12);
    }
}

TEST_CASE("sigma_estimate: full subspace gives exactly 1") {
    SigmaEstimate est = sigma_estimate(heat2(), Subspace::full(2), fast_params());
    CHECK(est.value == 1.0);
    for (auto& [t, v] : est.per_t) CHECK(v == 1.0);
    CHECK(est.converged);
}

TEST_CASE("sigma_estimate: elliptic-on-subspace separation in R^3") {
    SigmaEstimate low = sigma_estimate(lap3sub(), Subspace::axes(3, {2}), fast_params());
    CHECK(low.value <= 0.05);

    // Hand analysis: the worst ratio for span{e1} is 1/2, attained with the
    // shift split between e2 and e3 at |xi'| = t.
    SigmaEstimate high = sigma_estimate(lap3sub(), Subspace::axes(3, {0}), fast_params());
    CHECK(high.value >= 0.2);

    // Recorded ratios live in [0,1]; value is the min over per_t.
    double min_pt = 1.0;
    for (auto& [t, v] : high.per_t) min_pt = std::min(min_pt, v);
    CHECK(high.value == doctest::Approx(min_pt));
    for (auto& [t, row] : high.trace)
        for (auto& [r, val] : row) {
            CHECK(val >= 0.0);
            CHECK(val <= 1.0);
        }
}

TEST_CASE("sigma0_estimate: zero at the origin for heat, one on the full space") {
    SigmaEstimate z = sigma0_estimate(heat2(), Subspace::trivial(2), fast_params());
    CHECK(z.value == doctest::Approx(0.0).epsilon(1e-9));
    SigmaEstimate one = sigma0_estimate(heat2(), Subspace::full(2), fast_params());
    CHECK(one.value == 1.0);
    CHECK_THROWS_AS(sigma0_estimate(parse_polynomial("x1-x1"), Subspace::full(1), fast_params()),
                    std::invalid_argument);
}

TEST_CASE("sigma monotone in V (estimator slack)") {
    SigmaParams par = fast_params();
    Subspace v1 = Subspace::span(3, {{1, 0, 0}});
    Subspace v2 = Subspace::span(3, {{1, 0, 0}, {0, 1, 0}});
    SigmaEstimate e1 = sigma_estimate(lap3sub(), v1, par);
    SigmaEstimate e2 = sigma_estimate(lap3sub(), v2, par);
    CHECK(e1.value <= e2.value + 0.05);
}

TEST_CASE("sigma zero-subspace rule table") {
    auto full_elliptic = sigma_zero_subspace_exact(parse_polynomial("x1^2+x2^2+x3^2"));
    REQUIRE(full_elliptic.has_value());
    CHECK(full_elliptic->is_trivial());

    auto sub = sigma_zero_subspace_exact(lap3sub());
    REQUIRE(sub.has_value());
    CHECK(sub->dim() == 1);
    CHECK(sub->contains_vector({0, 0, 1}));

    auto heatplus = sigma_zero_subspace_exact(heat2().augmented());
    REQUIRE(heatplus.has_value());
    CHECK(heatplus->dim() == 2);
    CHECK(heatplus->contains_vector({1, 0, 0}));
    CHECK(heatplus->contains_vector({0, 0, 1}));
    CHECK_FALSE(heatplus->contains_vector({0, 1, 0}));

    CHECK_FALSE(sigma_zero_subspace_exact(parse_polynomial("x1^2 - x2^2")).has_value());
}

TEST_CASE("augmented ratio lemma: smoke check on one line") {
    SigmaParams par = fast_params();
    Rng rng(kDefaultSeed);
    Vec u = rng.unit_vector(2);
    Subspace vline = Subspace::span(2, {u});
    Polynomial hp = heat2().augmented();
    SigmaEstimate a = sigma_estimate(hp, vline.cross_zero(), par);
    SigmaEstimate b = sigma0_estimate(heat2(), vline, par);
    CHECK(std::abs(a.value - b.value) <= 0.1);
}
