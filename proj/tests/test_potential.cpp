#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qdwell/errors.hpp"
#include "qdwell/potential.hpp"

using namespace qdwell;

TEST_CASE("symmetric well: value at origin and at the minima") {
    PotentialParams p{1.4, 0.0};
    CHECK(evaluate(p, 0.0) == 0.0);
    const double qmin = std::sqrt(8.0 * 1.4);  // stationary points of the quartic
    CHECK(evaluate(p, qmin) == doctest::Approx(-1.4).epsilon(1e-12));
    CHECK(evaluate(p, -qmin) == doctest::Approx(-1.4).epsilon(1e-12));
}

TEST_CASE("asymmetry tilts the right well below the left") {
    PotentialParams p{1.4, 0.27};
    PotentialGeometry g = geometry(p);
    CHECK(evaluate(p, g.q_right_min) < evaluate(p, g.q_left_min));
}

TEST_CASE("geometry of the symmetric well is analytic") {
    PotentialParams p{1.4, 0.0};
    PotentialGeometry g = geometry(p);
    const double qm = std::sqrt(8.0 * 1.4);
    CHECK(g.q_left_min == doctest::Approx(-qm).epsilon(1e-12));
    CHECK(g.q_barrier == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(std::abs(g.q_barrier) < 1e-12);
    CHECK(g.q_right_min == doctest::Approx(qm).epsilon(1e-12));
    // level set V = V(barrier) = 0 on the outer right branch: q = sqrt(16 dU)
    CHECK(g.q_outer == doctest::Approx(std::sqrt(16.0 * 1.4)).epsilon(1e-10));
    CHECK(g.v_left_min == doctest::Approx(-1.4).epsilon(1e-12));
    CHECK(g.v_right_min == doctest::Approx(-1.4).epsilon(1e-12));
    CHECK(g.v_barrier == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("asymmetry moves the barrier toward the metastable well") {
    PotentialGeometry g = geometry({1.4, 0.27});
    CHECK(g.q_barrier < 0.0);
    CHECK(g.q_left_min < g.q_barrier);
    CHECK(g.q_barrier < g.q_right_min);
    CHECK(g.v_right_min <= g.v_left_min);
    CHECK(g.v_left_min < g.v_barrier);
    CHECK(g.q_exit > g.q_barrier);
    CHECK(g.q_outer > g.q_right_min);
}

TEST_CASE("frozen config-1 geometry") {
    PotentialGeometry g = geometry({1.4, 0.27});
    CHECK(g.q_left_min == doctest::Approx(-3.03426536283).epsilon(1e-10));
    CHECK(g.q_barrier == doctest::Approx(-0.555287469266).epsilon(1e-10));
    CHECK(g.q_right_min == doctest::Approx(3.5895528321).epsilon(1e-10));
    CHECK(g.q_outer == doctest::Approx(5.22254701347).epsilon(1e-9));
    CHECK(g.q_exit == doctest::Approx(std::sqrt(8.0 * 1.4 / 3.0)).epsilon(1e-12));
}

TEST_CASE("stationary points satisfy V' = 0 to 1e-10") {
    for (double eps : {0.0, 0.1, 0.27, 0.35}) {
        PotentialParams p{1.4, eps};
        if (!has_two_minima(p)) continue;
        PotentialGeometry g = geometry(p);
        CHECK(std::abs(derivative(p, g.q_left_min)) < 1e-10);
        CHECK(std::abs(derivative(p, g.q_barrier)) < 1e-10);
        CHECK(std::abs(derivative(p, g.q_right_min)) < 1e-10);
    }
}

TEST_CASE("curvature at the symmetric minima equals one (finite difference)") {
    PotentialParams p{1.4, 0.0};
    PotentialGeometry g = geometry(p);
    const double h = 1e-4;
    for (double q : {g.q_left_min, g.q_right_min}) {
        const double second =
            (evaluate(p, q + h) - 2.0 * evaluate(p, q) + evaluate(p, q - h)) / (h * h);
        CHECK(second == doctest::Approx(1.0).epsilon(1e-6));
    }
}

TEST_CASE("overlarge asymmetry degenerates the double well") {
    PotentialParams p{1.4, 5.0};
    CHECK(!has_two_minima(p));
    CHECK_THROWS_AS(geometry(p), DegeneratePotential);
}

TEST_CASE("parameter validation") {
    CHECK_THROWS(PotentialParams{-1.0, 0.0}.validate());
    CHECK_THROWS(PotentialParams{1.4, -0.1}.validate());
    CHECK_NOTHROW(PotentialParams{1.4, 0.27}.validate());
}
