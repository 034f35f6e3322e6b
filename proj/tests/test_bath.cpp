#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qdwell/bath.hpp"
#include "qdwell/errors.hpp"

using namespace qdwell;

TEST_CASE("spectral density: linear at the origin with exponential cutoff") {
    BathParams p{1.0, 0.352, 50.0};
    CHECK(spectral_density(p, 0.0) == 0.0);
    CHECK(spectral_density(p, 1.0) == doctest::Approx(std::exp(-0.02)).epsilon(1e-12));
    // J(w)/w -> gamma as w -> 0
    CHECK(spectral_density(p, 1e-8) / 1e-8 == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("parameter validation") {
    CHECK_THROWS(BathParams{-1.0, 0.352, 50.0}.validate());
    CHECK_THROWS(BathParams{1.0, 0.0, 50.0}.validate());
    CHECK_THROWS(BathParams{1.0, 0.352, 5.0}.validate());
    CHECK_NOTHROW(BathParams{1.0, 0.352, 20.0}.validate());
}

TEST_CASE("Q vanishes at t = 0") {
    BathCorrelation corr(BathParams{1.0, 0.352, 50.0});
    CHECK(corr.real_part(0.0) == 0.0);
    CHECK(corr.imag_part(0.0) == 0.0);
    CHECK(std::abs(correlation(BathParams{1.0, 0.352, 50.0}, 0.0)) == 0.0);
}

TEST_CASE("frozen Q' values (series evaluator)") {
    // reference values from an independent digamma-representation evaluation
    BathCorrelation a(BathParams{1.0, 0.352, 50.0});
    CHECK(a.real_part(0.1) == doctest::Approx(0.519184059401).epsilon(1e-10));
    CHECK(a.real_part(1.0) == doctest::Approx(1.30712031668).epsilon(1e-10));
    CHECK(a.real_part(5.0) == doctest::Approx(2.74735103606).epsilon(1e-10));
    CHECK(a.real_part(20.0) == doctest::Approx(8.02126080151).epsilon(1e-10));
    CHECK(a.real_part(60.0) == doctest::Approx(22.0963437517).epsilon(1e-10));

    BathCorrelation b(BathParams{1.0, 0.352, 20.0});
    CHECK(b.real_part(0.1) == doctest::Approx(0.256782212008).epsilon(1e-10));
    CHECK(b.real_part(1.0) == doctest::Approx(1.0149111089).epsilon(1e-10));
    CHECK(b.real_part(20.0) == doctest::Approx(7.71271948314).epsilon(1e-10));

    BathCorrelation c(BathParams{0.7, 0.15, 20.0});
    CHECK(c.real_part(0.5) == doctest::Approx(0.516199073544).epsilon(1e-10));
    CHECK(c.real_part(7.0) == doctest::Approx(1.41304019162).epsilon(1e-10));
    CHECK(c.real_part(120.0) == doctest::Approx(13.2691302885).epsilon(1e-10));
}

TEST_CASE("series agrees with the adaptive-quadrature route") {
    BathParams p{1.0, 0.352, 50.0};
    BathCorrelation corr(p);
    for (double t : {0.05, 0.3, 1.0, 4.0, 15.0, 60.0})
        CHECK(real_part_quadrature(p, t) == doctest::Approx(corr.real_part(t)).epsilon(5e-9));
}

TEST_CASE("closed-form Q'' agrees with quadrature to 1e-8") {
    BathParams p{1.0, 0.352, 50.0};
    BathCorrelation corr(p);
    for (double t : {0.02, 0.2, 1.0, 5.0, 25.0}) {
        CHECK(std::abs(imag_part_quadrature(p, t) - corr.imag_part(t)) < 1e-8);
    }
}

TEST_CASE("Q'' saturates at gamma/2") {
    BathCorrelation corr(BathParams{1.0, 0.352, 50.0});
    CHECK(corr.imag_part(1e9) == doctest::Approx(0.5).epsilon(1e-8));
}

TEST_CASE("Q' is nonnegative and nondecreasing on a log time grid") {
    BathCorrelation corr(BathParams{0.8, 0.25, 20.0});
    double prev = 0.0;
    for (int k = 0; k <= 60; ++k) {
        const double t = 1e-3 * std::pow(1e6, k / 60.0);
        const double q = corr.real_part(t);
        CHECK(q >= prev);
        prev = q;
    }
}

TEST_CASE("long-time limit: slope gamma*T, linear to second differences") {
    const double gamma = 1.0, T = 0.352;
    BathCorrelation corr(BathParams{gamma, T, 50.0});
    const double slope =
        (corr.real_part(60.0) - corr.real_part(50.0)) / 10.0;
    CHECK(slope == doctest::Approx(gamma * T).epsilon(0.01));

    // second finite differences over t in [10/T, 20/T]
    const double t0 = 10.0 / T, t1 = 20.0 / T;
    for (double t = t0; t + 2.0 <= t1; t += 1.0) {
        const double d2 = corr.real_part(t + 2.0) - 2.0 * corr.real_part(t + 1.0) +
                          corr.real_part(t);
        CHECK(std::abs(d2) < 1e-4 * gamma * T);
    }
}

TEST_CASE("Q' grows with temperature at every sampled time") {
    BathCorrelation cold(BathParams{1.0, 0.2, 20.0});
    BathCorrelation warm(BathParams{1.0, 0.45, 20.0});
    for (double t : {0.01, 0.1, 1.0, 10.0, 100.0})
        CHECK(warm.real_part(t) >= cold.real_part(t));
}

TEST_CASE("quadrature failure surfaces when the budget is tiny") {
    BathParams p{1.0, 0.352, 50.0};
    CHECK_THROWS_AS(real_part_quadrature(p, 10.0, 1e-10, 100), QuadratureFailure);
}

TEST_CASE("sampling a grid equals pointwise evaluation") {
    BathCorrelation corr(BathParams{1.0, 0.352, 20.0});
    std::vector<double> ts{0.0, 0.1, 1.0, 10.0};
    auto s = corr.sample(ts);
    for (std::size_t i = 0; i < ts.size(); ++i) {
        CHECK(s.qp[i] == corr.real_part(ts[i]));
        CHECK(s.qpp[i] == corr.imag_part(ts[i]));
    }
}
