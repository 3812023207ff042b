#include "doctest.h"

#include "pconv/sampling.hpp"
#include "pconv/subspace.hpp"

using namespace pconv;

TEST_CASE("span orthonormalizes and drops dependent vectors") {
    Subspace s = Subspace::span(3, {{1, 1, 0}, {2, 2, 0}, {0, 0, 3}});
    CHECK(s.dim() == 2);
    for (int i = 0; i < s.dim(); ++i) {
        CHECK(norm(s.basis()[i]) == doctest::Approx(1.0).epsilon(1e-12));
        for (int j = i + 1; j < s.dim(); ++j)
            CHECK(std::abs(dot(s.basis()[i], s.basis()[j])) < 1e-12);
    }
}

TEST_CASE("orthogonal complement") {
    Subspace s = Subspace::axes(3, {0, 1});
    Subspace c = s.orthogonal_complement();
    CHECK(c.dim() == 1);
    CHECK(std::abs(std::abs(c.basis()[0][2]) - 1.0) < 1e-12);

    Subspace t = Subspace::trivial(4);
    CHECK(t.orthogonal_complement().dim() == 4);
    CHECK(Subspace::full(4).orthogonal_complement().dim() == 0);

    Subspace diag = Subspace::span(2, {{1, 1}});
    Subspace dc = diag.orthogonal_complement();
    CHECK(dc.dim() == 1);
    CHECK(std::abs(dot(dc.basis()[0], {1, 1})) < 1e-12);
}

TEST_CASE("containment, projection, distance") {
    Subspace w = Subspace::axes(3, {0, 1});
    CHECK(w.contains_vector({3, -2, 0}));
    CHECK_FALSE(w.contains_vector({0, 0, 1}));
    CHECK(w.contains(Subspace::span(3, {{1, 1, 0}})));
    CHECK_FALSE(w.contains(Subspace::span(3, {{1, 0, 1}})));
    CHECK(w.distance({0, 0, 5}) == doctest::Approx(5.0));
    Vec p = w.project({1, 2, 3});
    CHECK(p[0] == doctest::Approx(1.0));
    CHECK(p[2] == doctest::Approx(0.0));
}

TEST_CASE("cross_zero and cross_line") {
    Subspace v = Subspace::span(2, {{0, 1}});
    Subspace vz = v.cross_zero();
    CHECK(vz.ambient() == 3);
    CHECK(vz.dim() == 1);
    CHECK(vz.basis()[0][2] == 0.0);
    Subspace vl = v.cross_line();
    CHECK(vl.dim() == 2);
    CHECK(vl.contains_vector({0, 0, 1}));
}

TEST_CASE("random subspaces: complement really is orthogonal") {
    Rng rng(42);
    for (int trial = 0; trial < 50; ++trial) {
        int n = 2 + static_cast<int>(rng.next() % 4);
        int k = 1 + static_cast<int>(rng.next() % n);
        std::vector<Vec> vecs;
        for (int i = 0; i < k; ++i) vecs.push_back(rng.unit_vector(n));
        Subspace s = Subspace::span(n, vecs);
        Subspace c = s.orthogonal_complement();
        CHECK(s.dim() + c.dim() == n);
        for (const auto& a : s.basis())
            for (const auto& b : c.basis()) CHECK(std::abs(dot(a, b)) < 1e-10);
    }
}

TEST_CASE("sphere directions: axes first, unit norm, deterministic") {
    auto d1 = sphere_directions(3, 0.2, 123);
    auto d2 = sphere_directions(3, 0.2, 123);
    REQUIRE(d1.size() == d2.size());
    for (std::size_t i = 0; i < d1.size(); ++i)
        for (int j = 0; j < 3; ++j) CHECK(d1[i][j] == d2[i][j]);
    CHECK(d1[0][0] == 1.0);
    CHECK(d1[1][0] == -1.0);
    for (const auto& u : d1) CHECK(norm(u) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("ball points stay in the closed unit ball") {
    auto pts = ball_points(3, 200, 99);
    CHECK(pts.size() >= 200);
    for (const auto& p : pts) CHECK(norm(p) <= 1.0 + 1e-12);
}
