#include "doctest.h"

#include "pconv/polynomial.hpp"
#include "pconv/sampling.hpp"

#include <complex>

using namespace pconv;
using cplx = std::complex<double>;

namespace {

Polynomial heat2() { return parse_polynomial("i*x1 - x2^2"); }

}  // namespace

TEST_CASE("parse: basic symbols") {
    Polynomial lap = parse_polynomial("x1^2 + x2^2");
    CHECK(lap.nvars() == 2);
    CHECK(lap.degree() == 2);
    CHECK(lap.term_count() == 2);

    Polynomial h = parse_polynomial("i*x1 - x2^2 - x3^2");
    CHECK(h.nvars() == 3);
    CHECK(h.degree() == 2);
    CHECK(h.term_count() == 3);

    Polynomial sq = parse_polynomial("(x1+x2)^2");
    CHECK(sq.term_count() == 3);
    Polynomial::Exponents e20{2, 0}, e11{1, 1}, e02{0, 2};
    CHECK(sq.terms().at(e20) == CoefC(Rat(1)));
    CHECK(sq.terms().at(e11) == CoefC(Rat(2)));
    CHECK(sq.terms().at(e02) == CoefC(Rat(1)));
}

TEST_CASE("parse: rationals, precedence, unary minus") {
    Polynomial p = parse_polynomial("1/2*x1 - 3*x1");
    Polynomial::Exponents e1{1};
    CHECK(p.terms().at(e1) == CoefC(Rat(-5, 2)));

    Polynomial q = parse_polynomial("-x1^2");
    Polynomial::Exponents e2{2};
    CHECK(q.terms().at(e2) == CoefC(Rat(-1)));

    Polynomial r = parse_polynomial("2*x1*x2 + x1*x2");
    Polynomial::Exponents e11{1, 1};
    CHECK(r.terms().at(e11) == CoefC(Rat(3)));

    // Exact cancellation produces the zero polynomial.
    Polynomial z = parse_polynomial("x1 - x1");
    CHECK(z.is_zero());
    CHECK(z.degree() == 0);
}

TEST_CASE("parse: errors carry positions") {
    CHECK_THROWS_AS(parse_polynomial("x1 + "), ParseError);
    CHECK_THROWS_AS(parse_polynomial("x0"), ParseError);
    CHECK_THROWS_AS(parse_polynomial("x1 ^ 70000"), ParseError);
    CHECK_THROWS_AS(parse_polynomial("(x1"), ParseError);
    CHECK_THROWS_AS(parse_polynomial("x1 $ x2"), ParseError);
    try {
        parse_polynomial("x1 + @");
    } catch (const ParseError& e) {
        CHECK(e.position == 5);
    }
}

TEST_CASE("evaluate: frozen values") {
    std::vector<cplx> p11{cplx(1, 0), cplx(1, 0)};
    cplx h = evaluate(heat2(), p11);
    CHECK(h.real() == doctest::Approx(-1.0));
    CHECK(h.imag() == doctest::Approx(1.0));

    Polynomial lap = parse_polynomial("x1^2+x2^2");
    std::vector<cplx> p34{cplx(3, 0), cplx(4, 0)};
    CHECK(evaluate(lap, p34).real() == doctest::Approx(25.0));

    Polynomial sq = parse_polynomial("(x1+x2)^2");
    std::vector<cplx> pm{cplx(1, 0), cplx(-1, 0)};
    CHECK(std::abs(evaluate(sq, pm)) == doctest::Approx(0.0));

    std::vector<cplx> wrong{cplx(1, 0)};
    CHECK_THROWS_AS(evaluate(lap, wrong), std::invalid_argument);
}

TEST_CASE("principal part") {
    Polynomial h = heat2();
    Polynomial pm = h.principal_part();
    CHECK(pm.term_count() == 1);
    Polynomial::Exponents e02{0, 2};
    CHECK(pm.terms().at(e02) == CoefC(Rat(-1)));

    Polynomial p = parse_polynomial("x1*x2 + x1");
    CHECK(p.principal_part() == parse_polynomial("x1*x2"));

    Polynomial lap3 = parse_polynomial("x1^2+x2^2+x3^2");
    CHECK(lap3.principal_part() == lap3);

    CHECK_THROWS_AS(parse_polynomial("x1-x1").principal_part(), std::invalid_argument);
}

TEST_CASE("principal part: homogeneous, remainder lower degree") {
    Rng rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        Polynomial p(3);
        for (int t = 0; t < 8; ++t) {
            Polynomial::Exponents e{static_cast<std::uint32_t>(rng.next() % 3),
                                    static_cast<std::uint32_t>(rng.next() % 3),
                                    static_cast<std::uint32_t>(rng.next() % 2)};
            p.add_term(e, CoefC(Rat(static_cast<long>(rng.next() % 7) - 3)));
        }
        if (p.is_zero()) continue;
        Polynomial top = p.principal_part();
        CHECK(top.is_homogeneous());
        CHECK(top.degree() == p.degree());
        Polynomial rest = p - top;
        if (!rest.is_zero()) CHECK(rest.degree() < p.degree());
    }
}

TEST_CASE("augment: values independent of the appended variable") {
    Polynomial h = heat2();
    Polynomial hp = h.augmented();
    CHECK(hp.nvars() == 3);
    Rng rng(kDefaultSeed);
    for (int i = 0; i < 100; ++i) {
        cplx a(rng.uniform_sym() * 5, 0), b(rng.uniform_sym() * 5, 0), c(rng.uniform_sym() * 100, 0);
        std::vector<cplx> base{a, b}, lifted{a, b, c};
        cplx v0 = evaluate(h, base);
        cplx v1 = evaluate(hp, lifted);
        CHECK(std::abs(v0 - v1) <= 1e-12 * (1.0 + std::abs(v0)));
    }

    Polynomial z = parse_polynomial("x1-x1");
    CHECK(z.augmented().is_zero());
    CHECK(z.augmented().nvars() == 2);

    // Twice augmented: independent of the last two coordinates.
    Polynomial hpp = hp.augmented();
    for (int i = 0; i < 100; ++i) {
        cplx a(rng.uniform_sym() * 3, 0), b(rng.uniform_sym() * 3, 0);
        cplx s(rng.uniform_sym() * 50, 0), t(rng.uniform_sym() * 50, 0);
        std::vector<cplx> base{a, b}, lifted{a, b, s, t};
        CHECK(std::abs(evaluate(h, base) - evaluate(hpp, lifted)) <= 1e-12);
    }
}

TEST_CASE("drop_last_variable inverts augment") {
    Polynomial h = heat2();
    auto back = h.augmented().drop_last_variable();
    REQUIRE(back.has_value());
    CHECK(*back == h);
    CHECK_FALSE(h.drop_last_variable().has_value());  // x2 is used
}

TEST_CASE("exact evaluation and coefficient scale") {
    Polynomial p = parse_polynomial("1/3*x1^2 - 2*x2");
    CoefC v = p.eval_exact({Rat(3), Rat(1, 2)});
    CHECK(v.re == Rat(2));
    CHECK(v.im == 0);
    CHECK(p.coeff_scale() == doctest::Approx(2.0));
}

TEST_CASE("compose_linear: substitution is exact for dyadic bases") {
    // x1^2 under x1 = (y1+y2)/2: expect (y1+y2)^2/4.
    Polynomial p = parse_polynomial("x1^2", 2);
    std::vector<std::vector<Rat>> basis{{Rat(1, 2), Rat(0)}, {Rat(1, 2), Rat(0)}};
    Polynomial r = p.compose_linear(basis);
    CHECK(r == parse_polynomial("1/4*(x1+x2)^2"));
}
