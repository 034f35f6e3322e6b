#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qdwell/errors.hpp"
#include "qdwell/sweep.hpp"

using namespace qdwell;

namespace {

SweepConfig tiny_config() {
    SweepConfig c = preset("paper-fig2");
    c.gammas = {1.0};
    c.temperatures = {0.352};
    return c;
}

std::vector<SweepRecord> synthetic_curve(const std::vector<double>& gammas,
                                         const std::vector<double>& taus) {
    std::vector<SweepRecord> recs;
    for (std::size_t i = 0; i < gammas.size(); ++i) {
        SweepRecord r;
        r.gamma = gammas[i];
        r.temperature = 0.3;
        if (!std::isnan(taus[i])) r.tau = taus[i];
        recs.push_back(r);
    }
    return recs;
}

} // namespace

TEST_CASE("degenerate 1x1 sweep equals a direct escape computation") {
    SweepConfig c = tiny_config();
    auto recs = run_sweep(c);
    REQUIRE(recs.size() == 1);
    REQUIRE(recs[0].error.empty());
    REQUIRE(recs[0].tau.has_value());

    PotentialGeometry geom = geometry(c.potential);
    EigenSolution sol = solve_spectrum(c.potential, default_grid(geom), c.n_levels);
    DvrBasis dvr = build_dvr(sol, c.m_levels, geom);
    BathCorrelation corr(BathParams{1.0, 0.352, c.omega_c});
    RateMatrix rm = build_rate_matrix(dvr, corr);
    Eigen::VectorXd rho0 = Eigen::VectorXd::Zero(dvr.size());
    rho0(c.initial_state - 1) = 1.0;
    EscapeOptions eopt;
    eopt.metastable_count = dvr.metastable_count;
    EscapeResult direct = escape_time(rm, rho0, dvr.partition, c.threshold, eopt);

    CHECK(*recs[0].tau == doctest::Approx(*direct.escape_time).epsilon(1e-12));
    CHECK(recs[0].tau_relax == doctest::Approx(direct.relaxation_time).epsilon(1e-12));
}

TEST_CASE("worker count does not change the records") {
    SweepConfig c = tiny_config();
    c.gammas = {0.6, 0.9, 1.3};
    c.temperatures = {0.3, 0.352};
    auto seq = run_sweep(c);
    c.workers = 4;
    auto par = run_sweep(c);
    REQUIRE(seq.size() == par.size());
    CHECK(to_csv(seq) == to_csv(par));
}

TEST_CASE("determinism: identical CSV bytes across runs") {
    SweepConfig c = tiny_config();
    c.gammas = {0.8, 1.1};
    auto a = run_sweep(c);
    auto b = run_sweep(c);
    CHECK(to_csv(a) == to_csv(b));
}

TEST_CASE("CSV format: header, NOT_REACHED literal, empty list") {
    CHECK(to_csv({}) ==
          "gamma,temperature,tau,tau_relax,metastable_peak,stationary_pright,flags\n");

    SweepRecord r;
    r.gamma = 0.5;
    r.temperature = 0.45;
    r.tau_relax = 12.5;
    r.metastable_peak = 0.001;
    r.stationary_pright = 0.93;
    std::string csv = to_csv({r});
    CHECK(csv.find("NOT_REACHED") != std::string::npos);
    CHECK(csv.find("0.5,0.45,NOT_REACHED,12.5,0.001,0.93,") != std::string::npos);
}

TEST_CASE("CSV round-trips bit-exactly through parse") {
    SweepRecord a;
    a.gamma = 0.30000000000000004;  // deliberately awkward decimals
    a.temperature = 1.0 / 3.0;
    a.tau = 123.45600000000002;
    a.tau_relax = 7e-3;
    a.metastable_peak = 0.1;
    a.stationary_pright = 0.9993;
    a.flags = "negative_rate(1,6)";
    SweepRecord b;
    b.gamma = 2.5;
    b.temperature = 0.6;
    b.tau_relax = 1e9;
    std::string csv = to_csv({a, b});
    auto parsed = parse_csv(csv);
    CHECK(to_csv(parsed) == csv);
    REQUIRE(parsed.size() == 2);
    CHECK(parsed[0].gamma == a.gamma);
    CHECK(*parsed[0].tau == *a.tau);
    CHECK(!parsed[1].tau.has_value());
}

TEST_CASE("feature detection: monotone series has no interior extrema") {
    std::vector<double> g{0.2, 0.4, 0.6, 0.8, 1.0, 1.2};
    std::vector<double> tau{1.0, 2.0, 3.0, 4.0, 5.0, 6.0};
    auto rep = detect_features(synthetic_curve(g, tau), SweepAxis::gamma);
    CHECK(!rep.interior_maximum);
    CHECK(!rep.falloff_found);
    REQUIRE(rep.segments.size() == 1);
    CHECK(rep.segments[0].direction == 1);
}

TEST_CASE("feature detection: peak, cliff and trough") {
    std::vector<double> g{0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
    std::vector<double> tau{10, 40, 90, 100, 30, 12, 14, 18, 25};
    auto rep = detect_features(synthetic_curve(g, tau), SweepAxis::gamma);
    CHECK(rep.falloff_found);
    CHECK(rep.peak_location == doctest::Approx(0.5));
    CHECK(rep.drop_from == doctest::Approx(0.5));
    CHECK(rep.drop_to == doctest::Approx(0.6));
    CHECK(rep.gamma_c == doctest::Approx(0.7));  // end of the decreasing run
    CHECK(rep.interior_maximum);
}

TEST_CASE("NOT_REACHED holes are skipped, finite points analyzed") {
    const double nan = std::nan("");
    std::vector<double> g{0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8};
    std::vector<double> tau{5, 4, 3, 4, 6, nan, nan};
    auto rep = detect_features(synthetic_curve(g, tau), SweepAxis::gamma);
    CHECK(rep.n_not_reached == 2);
    CHECK(rep.interior_minimum);
    CHECK(rep.argmin == doctest::Approx(0.4));
}

TEST_CASE("resolution guard fires off the cliff") {
    std::vector<double> g{0.2, 0.3, 0.4, 0.5, 0.6, 0.7};
    std::vector<double> tau{1.0, 30.0, 32.0, 33.0, 34.0, 35.0};  // 30x jump, no peak
    CHECK_THROWS_AS(detect_features(synthetic_curve(g, tau), SweepAxis::gamma),
                    InsufficientResolution);
}

TEST_CASE("the detected cliff itself is exempt from the resolution guard") {
    std::vector<double> g{0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8};
    std::vector<double> tau{10, 60, 100, 8, 9, 11, 14};  // 12.5x fall at the cliff
    auto rep = detect_features(synthetic_curve(g, tau), SweepAxis::gamma);
    CHECK(rep.falloff_found);
    CHECK(rep.gamma_c == doctest::Approx(0.5));
}

TEST_CASE("too few points is an input error") {
    std::vector<double> g{0.2, 0.3, 0.4};
    std::vector<double> tau{1, 2, 3};
    CHECK_THROWS(detect_features(synthetic_curve(g, tau), SweepAxis::gamma));
}

TEST_CASE("preset sanity") {
    for (const auto& name : preset_names()) {
        SweepConfig c = preset(name);
        CHECK_NOTHROW(c.validate());
        CHECK(c.gammas.size() > 40);
    }
    CHECK_THROWS(preset("fig-unknown"));
    CHECK(preset("paper-fig2").initial_state == 3);
    CHECK(preset("paper-fig3").initial_state == 4);
    CHECK(preset("paper-fig3").n_levels == 8);
}

TEST_CASE("per-point failures are recorded, not fatal") {
    SweepConfig c = tiny_config();
    c.temperatures = {0.352};
    c.gammas = {1.0};
    // sub-validity cutoff is rejected per point, sweep survives
    c.omega_c = 5.0;
    auto recs = run_sweep(c);
    REQUIRE(recs.size() == 1);
    CHECK(!recs[0].error.empty());
    CHECK(!recs[0].tau.has_value());
}

TEST_CASE("plot script references the CSV and both layout blocks") {
    std::string script = plot_script("sweep.csv");
    CHECK(script.find("sweep.csv") != std::string::npos);
    CHECK(script.find("multiplot") != std::string::npos);
    CHECK(script.find("inset") != std::string::npos);
}
