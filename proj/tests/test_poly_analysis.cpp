#include "doctest.h"

#include "pconv/poly_analysis.hpp"
#include "pconv/sampling.hpp"
#include "support/test_corpus.hpp"

#include <cmath>

using namespace pconv;

namespace {

Polynomial heat2() { return parse_polynomial("i*x1 - x2^2"); }
Polynomial lap2() { return parse_polynomial("x1^2 + x2^2"); }
Polynomial lap3sub() { return parse_polynomial("x1^2 + x2^2", 3); }
Polynomial wave2() { return parse_polynomial("x1^2 - x2^2"); }

}  // namespace

TEST_CASE("dependence subspace: axis-aligned and rotated") {
    Subspace w1 = dependence_subspace(lap3sub());
    CHECK(w1.dim() == 2);
    CHECK(w1.contains(Subspace::axes(3, {0, 1})));

    // Hand-computed: kernel of the derivative coefficient matrix of (x1+x2)^2
    // is span{(1,-1)}, so the dependence subspace is span{(1,1)}/sqrt2.
    Subspace w2 = dependence_subspace(parse_polynomial("(x1+x2)^2"));
    CHECK(w2.dim() == 1);
    CHECK(std::abs(std::abs(dot(w2.basis()[0], {1 / std::sqrt(2.0), 1 / std::sqrt(2.0)})) - 1.0) <
          1e-12);

    Subspace w3 = dependence_subspace(heat2());
    CHECK(w3.dim() == 2);

    Subspace w4 = dependence_subspace(parse_polynomial("3", 2));
    CHECK(w4.is_trivial());
}

TEST_CASE("dependence subspace: translation invariance property") {
    Rng rng(kDefaultSeed);
    std::vector<Polynomial> polys{heat2(), lap3sub(), parse_polynomial("(x1+x2)^2"),
                                  parse_polynomial("x1*x2 + x3", 4)};
    for (const auto& p : polys) {
        Subspace w = dependence_subspace(p);
        Subspace perp = w.orthogonal_complement();
        if (perp.is_trivial()) continue;
        double scale_p = std::max(1.0, p.coeff_scale());
        for (int i = 0; i < 200; ++i) {
            Vec x(p.nvars()), coeffs(perp.dim());
            for (auto& v : x) v = rng.uniform_sym() * 3;
            for (auto& v : coeffs) v = rng.uniform_sym() * 5;
            Vec xi = perp.from_coords(coeffs);
            std::vector<double> xpxi(p.nvars());
            for (int j = 0; j < p.nvars(); ++j) xpxi[j] = x[j] + xi[j];
            auto v0 = evaluate(p, std::span<const double>(x));
            auto v1 = evaluate(p, std::span<const double>(xpxi));
            CHECK(std::abs(v0 - v1) <= 1e-9 * scale_p * (1.0 + std::abs(v0)));
        }
    }
}

TEST_CASE("vanishes_on_subspace") {
    Polynomial pm = heat2().principal_part();  // -x2^2
    CHECK(vanishes_on_subspace(pm, Subspace::axes(2, {0})));
    CHECK_FALSE(vanishes_on_subspace(lap2(), Subspace::axes(2, {0})));
    // Direct substitution: (x1+x2)^2 vanishes on span{(1,-1)}.
    CHECK(vanishes_on_subspace(parse_polynomial("(x1+x2)^2"), Subspace::span(2, {{1, -1}})));
    CHECK_THROWS_AS(vanishes_on_subspace(lap2(), Subspace::axes(3, {0})), std::invalid_argument);
}

TEST_CASE("restrict_to_subspace") {
    Polynomial r1 = restrict_to_subspace(lap3sub(), Subspace::axes(3, {0, 1}));
    CHECK(r1 == parse_polynomial("x1^2 + x2^2"));

    // Hand substitution: x1^2 on span{(1,1)/sqrt2} is y^2/2.
    Polynomial r2 = restrict_to_subspace(parse_polynomial("x1^2", 2), Subspace::span(2, {{1, 1}}));
    CHECK(r2.nvars() == 1);
    REQUIRE(r2.term_count() == 1);
    CHECK(rat_to_double(r2.terms().begin()->second.re) == doctest::Approx(0.5).epsilon(1e-12));

    Polynomial c5 = parse_polynomial("5", 3);
    Polynomial r3 = restrict_to_subspace(c5, Subspace::span(3, {{0, 1, 0}}));
    CHECK(r3 == parse_polynomial("5", 1));

    CHECK_THROWS_AS(restrict_to_subspace(lap2(), Subspace::trivial(2)), std::invalid_argument);
}

TEST_CASE("is_elliptic_on") {
    auto full2 = Subspace::full(2);
    EllipticityResult e1 = is_elliptic_on(lap2(), full2);
    CHECK(e1.elliptic());
    CHECK(e1.c_lower == doctest::Approx(1.0).epsilon(1e-3));

    EllipticityResult e2 = is_elliptic_on(wave2(), full2);
    CHECK(e2.verdict == EllipticityResult::Verdict::NotElliptic);
    REQUIRE(e2.witness.has_value());
    double c = std::abs(dot(*e2.witness, {1 / std::sqrt(2.0), 1 / std::sqrt(2.0)}));
    double c2 = std::abs(dot(*e2.witness, {1 / std::sqrt(2.0), -1 / std::sqrt(2.0)}));
    CHECK(std::max(c, c2) == doctest::Approx(1.0).epsilon(1e-6));

    EllipticityResult e3 = is_elliptic_on(lap3sub(), Subspace::axes(3, {0, 1}));
    CHECK(e3.elliptic());

    // heat2 does not act along span{e1}.
    CHECK_THROWS_AS(is_elliptic_on(heat2(), Subspace::axes(2, {0})), std::invalid_argument);
}

TEST_CASE("semi_elliptic_weights: heat family accepted with (1,2,...,2)") {
    for (int n = 2; n <= 4; ++n) {
        std::string txt = "i*x1";
        for (int j = 2; j <= n; ++j) txt += " - x" + std::to_string(j) + "^2";
        SemiEllipticity se = semi_elliptic_weights(parse_polynomial(txt));
        CHECK(se.accepted());
        REQUIRE(static_cast<int>(se.weights.size()) == n);
        CHECK(se.weights[0] == 1);
        for (int j = 1; j < n; ++j) CHECK(se.weights[j] == 2);
    }
}

TEST_CASE("semi_elliptic_weights: laplacian gets equal weights") {
    SemiEllipticity se = semi_elliptic_weights(lap2());
    CHECK(se.accepted());
    CHECK(se.weights == std::vector<int>{2, 2});
}

TEST_CASE("semi_elliptic_weights: wave refused with vanishing witness") {
    SemiEllipticity se = semi_elliptic_weights(wave2());
    CHECK(se.status == SemiEllipticity::Status::PrincipalVanishes);
    REQUIRE(se.witness.has_value());
    CHECK(se.witness_value < 1e-7);
    double c = std::abs(std::abs((*se.witness)[0]) - 1 / std::sqrt(2.0));
    CHECK(c < 1e-4);
}

TEST_CASE("semi_elliptic_weights: weight violation and constant input") {
    SemiEllipticity se = semi_elliptic_weights(parse_polynomial("x1*x2"));
    CHECK(se.status == SemiEllipticity::Status::WeightViolation);
    CHECK_THROWS_AS(semi_elliptic_weights(parse_polynomial("7", 2)), std::invalid_argument);
}

TEST_CASE("zero_set_structure: subspace, trivial, not-a-subspace") {
    ZeroSetReport r1 = zero_set_structure(heat2().principal_part());
    CHECK(r1.kind == ZeroSetReport::Kind::SubspaceZeroSet);
    REQUIRE(r1.zero_set.has_value());
    CHECK(r1.zero_set->dim() == 1);
    CHECK(r1.zero_set->contains_vector({1, 0}));

    ZeroSetReport r2 = zero_set_structure(parse_polynomial("x1^2+x2^2+x3^2"));
    CHECK(r2.kind == ZeroSetReport::Kind::TrivialZeroSet);

    ZeroSetReport r3 = zero_set_structure(wave2());
    CHECK(r3.kind == ZeroSetReport::Kind::NotSubspace);
    REQUIRE(r3.witness_pair.has_value());
    REQUIRE(r3.nonvanishing_direction.has_value());
    // The two witnesses evaluate to ~0, the midpoint direction does not.
    CompiledPoly cp(wave2());
    EvalScratch ws;
    ws.fit(cp);
    CHECK(std::sqrt(cp.abs2(r3.witness_pair->first.data(), ws.pw.data())) < 1e-6);
    CHECK(std::sqrt(cp.abs2(r3.witness_pair->second.data(), ws.pw.data())) < 1e-6);
    CHECK(std::sqrt(cp.abs2(r3.nonvanishing_direction->data(), ws.pw.data())) > 0.1);

    CHECK_THROWS_AS(zero_set_structure(parse_polynomial("x1^2+x2")), std::invalid_argument);
}

TEST_CASE("zero_set_structure: rotated line of zeros") {
    ZeroSetReport r = zero_set_structure(parse_polynomial("(x1+x2)^2"));
    CHECK(r.kind == ZeroSetReport::Kind::SubspaceZeroSet);
    REQUIRE(r.zero_set.has_value());
    CHECK(r.zero_set->dim() == 1);
    CHECK(r.zero_set->contains_vector({1, -1}, 1e-6));
}

TEST_CASE("zero_set_structure: plane of zeros in R^3") {
    // x3^2*(something elliptic would be deg 4); take Q = x3^2 itself: zeros = span{e1,e2}.
    ZeroSetReport r = zero_set_structure(parse_polynomial("x3^2"));
    CHECK(r.kind == ZeroSetReport::Kind::SubspaceZeroSet);
    REQUIRE(r.zero_set.has_value());
    CHECK(r.zero_set->dim() == 2);
    CHECK(r.zero_set->contains(Subspace::axes(3, {0, 1}), 1e-6));
}

TEST_CASE("zero set of principal part of semi-elliptic presets is never NotSubspace") {
    std::vector<Polynomial> corpus{heat2(), parse_polynomial("i*x1 - x2^2 - x3^2"), lap2(),
                                   parse_polynomial("x1^2+x2^2+x3^2"),
                                   parse_polynomial("x1 + x2^2 + x3^2")};
    for (const auto& p : corpus) {
        SemiEllipticity se = semi_elliptic_weights(p);
        if (!se.accepted()) continue;
        ZeroSetReport r = zero_set_structure(p.principal_part());
        CHECK(r.kind != ZeroSetReport::Kind::NotSubspace);
    }
}

TEST_CASE("vanishing on V implies dependence orthogonal to V (random construction)") {
    Rng rng(kDefaultSeed);
    int checked = 0;
    for (int trial = 0; trial < 25; ++trial) {
        auto inst = pconv::testing::random_vanishing_polynomial(rng);
        if (inst.v.is_trivial()) continue;
        ++checked;
        CHECK(vanishes_on_subspace(inst.p, inst.v));
        Subspace dep = dependence_subspace(inst.p);
        for (const auto& db : dep.basis())
            for (const auto& vb : inst.v.basis()) CHECK(std::abs(dot(db, vb)) < 1e-9);
    }
    CHECK(checked > 5);
}
