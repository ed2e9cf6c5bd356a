#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <stdexcept>

#include "hypmet/hypmet.hpp"

using Catch::Approx;
using namespace hypmet;

TEST_CASE("family construction and codes", "[metrics]") {
    CHECK(Family::go().kind == MetricKind::GO);
    CHECK(Family::na().kind == MetricKind::NA);
    CHECK(Family::ibr().kind == MetricKind::IBR);
    CHECK(Family::dhv(2.0).c == 2.0);
    CHECK_THROWS_AS(Family::dhv(0.0), std::domain_error);
    CHECK_THROWS_AS(Family::dhv(-1.0), std::domain_error);
    CHECK_THROWS_AS(Family::dhv(std::numeric_limits<double>::infinity()),
                    std::domain_error);

    CHECK(std::string(family_code(MetricKind::GO)) == "go");
    CHECK(std::string(family_code(MetricKind::DHV)) == "dhv");
    CHECK(std::string(family_code(MetricKind::NA)) == "na");
    CHECK(std::string(family_code(MetricKind::IBR)) == "ibr");

    CHECK(metricity_certified(Family::go()));
    CHECK(metricity_certified(Family::na()));
    CHECK(metricity_certified(Family::ibr()));
    CHECK(metricity_certified(Family::dhv(2.0)));
    CHECK(metricity_certified(Family::dhv(5.0)));
    CHECK_FALSE(metricity_certified(Family::dhv(1.99)));
    CHECK_FALSE(metricity_certified(Family::dhv(1.0)));
}

TEST_CASE("rho closed-form values", "[metrics]") {
    // Hand-reduced: each evaluates to a logarithm of a small rational.
    CHECK(rho(Family::go(), 1.0, 1.0, 2.0) ==
          Approx(0.5493061443340549).margin(1e-12));  // (1/2) log 3
    CHECK(rho(Family::dhv(2.0), 3.0, 1.0, 4.0) ==
          Approx(1.3862943611198906).margin(1e-12));  // log 4
    CHECK(rho(Family::na(), 2.0, 1.0, 3.0) ==
          Approx(1.0986122886681098).margin(1e-12));  // log 3
    CHECK(rho(Family::ibr(), 1.0, 1.0, 2.0) ==
          Approx(1.5040773967762742).margin(1e-12));  // log (9/2)
}

TEST_CASE("rho vanishes at coincident points", "[metrics]") {
    for (const Family& f :
         {Family::go(), Family::dhv(0.7), Family::dhv(2.0), Family::na(),
          Family::ibr()}) {
        CHECK(rho(f, 0.0, 1.0, 1.0) == 0.0);
        CHECK(rho(f, 0.0, 0.37, 0.37) == 0.0);
    }
    // At distance zero but unequal weights the NA and IBR values keep the
    // weight-gap term; identity on a space holds because x == y forces
    // equal weights.
    CHECK(rho(Family::na(), 0.0, 1.0, 4.0) > 0.0);
    CHECK(rho(Family::ibr(), 0.0, 1.0, 4.0) > 0.0);
    CHECK(rho(Family::go(), 0.0, 1.0, 4.0) == 0.0);
    CHECK(rho(Family::dhv(2.0), 0.0, 1.0, 4.0) == 0.0);
}

TEST_CASE("rho is bitwise symmetric in the weights", "[metrics]") {
    const double ds[] = {1e-12, 0.25, 1.0, 7.5, 1e6};
    const double ws[] = {0.001, 0.3333333333333333, 1.0, 2.718281828459045, 900.0};
    for (const Family& f :
         {Family::go(), Family::dhv(0.5), Family::dhv(2.0), Family::na(),
          Family::ibr()})
        for (double d : ds)
            for (double a : ws)
                for (double b : ws) {
                    // Exact equality on purpose: the evaluation order is
                    // arranged so swapping the weights is a no-op.
                    REQUIRE(rho(f, d, a, b) == rho(f, d, b, a));
                }
}

TEST_CASE("rho increases with distance", "[metrics]") {
    for (const Family& f :
         {Family::go(), Family::dhv(2.0), Family::na(), Family::ibr()}) {
        double prev = -1.0;
        for (double d : {0.0, 0.1, 0.5, 2.0, 50.0}) {
            const double v = rho(f, d, 2.0, 0.7);
            CHECK(v > prev);
            prev = v;
        }
    }
}

TEST_CASE("rho rejects bad inputs", "[metrics]") {
    const Family f = Family::go();
    CHECK_THROWS_AS(rho(f, -1.0, 1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(rho(f, std::nan(""), 1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(rho(f, std::numeric_limits<double>::infinity(), 1.0, 1.0),
                    std::domain_error);
    CHECK_THROWS_AS(rho(f, 1.0, 0.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(rho(f, 1.0, 1.0, -2.0), std::domain_error);
    CHECK_THROWS_AS(rho(f, 1.0, std::nan(""), 1.0), std::domain_error);
}

TEST_CASE("comparison functionals", "[metrics]") {
    CHECK(comparison_functional(Family::na(), 2.0, 1.0, 3.0) == 6.0);
    CHECK(comparison_functional(Family::dhv(2.0), 3.0, 1.0, 4.0) == 8.0);
    CHECK(comparison_functional(Family::ibr(), 1.0, 1.0, 2.0) == 3.0);
    CHECK_THROWS_AS(comparison_functional(Family::go(), 1.0, 1.0, 1.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(comparison_functional(Family::na(), 1.0, 0.0, 1.0),
                    std::domain_error);
}

TEST_CASE("multiplicative factors", "[metrics]") {
    CHECK(multiplicative_factor(Family::dhv(2.0)) == Approx(6.25).margin(1e-15));
    CHECK(multiplicative_factor(Family::dhv(1.0)) == Approx(9.0).margin(1e-15));
    CHECK(multiplicative_factor(Family::na()) == 9.0);
    CHECK(multiplicative_factor(Family::ibr()) == 4.0);
    CHECK_THROWS_AS(multiplicative_factor(Family::go()), std::invalid_argument);
}

TEST_CASE("certified hyperbolicity constants", "[metrics]") {
    CHECK(certified_delta_bound(Family::go()) ==
          Approx(0.7945134575869864).margin(1e-15));  // (1/4) log 24
    CHECK(certified_delta_bound(Family::dhv(2.0)) ==
          Approx(0.9162907318741551).margin(1e-15));  // log 2.5
    CHECK(certified_delta_bound(Family::dhv(1.0)) ==
          Approx(1.0986122886681098).margin(1e-15));  // log 3
    CHECK(certified_delta_bound(Family::na()) ==
          Approx(2.1972245773362196).margin(1e-15));  // log 9
    CHECK(certified_delta_bound(Family::ibr()) ==
          Approx(1.3862943611198906).margin(1e-15));  // log 4
    // The DHV constant shrinks as c grows and is log 3 at the metricity
    // threshold's far side too: monotone in c.
    CHECK(certified_delta_bound(Family::dhv(5.0)) <
          certified_delta_bound(Family::dhv(2.0)));
}

TEST_CASE("go additivity probe on a separating triple", "[metrics]") {
    // Heights 4, 1 with midpoint weight 2: collinear distances 3 = 2 + 1.
    const GoEqualityProbe p = go_equality_probe(3.0, 2.0, 1.0, 4.0, 1.0, 2.0);
    CHECK(p.additivity_defect ==
          Approx(0.12565721414045317).margin(1e-12));  // (1/2) log (9/7)
    CHECK(p.conditions[0]);
    CHECK_FALSE(p.conditions[1]);
    CHECK(p.conditions[2]);
    CHECK_FALSE(p.all_conditions());
}

TEST_CASE("go additivity probe when every condition holds", "[metrics]") {
    // d_xy = d_xz + d_zy and F(z) = F(x) + d_xz = F(y) + d_zy.
    const GoEqualityProbe p = go_equality_probe(2.0, 1.0, 1.0, 1.0, 1.0, 2.0);
    CHECK(p.all_conditions());
    CHECK(std::abs(p.additivity_defect) <= 1e-12);
}

TEST_CASE("go additivity probe validates inputs", "[metrics]") {
    CHECK_THROWS_AS(go_equality_probe(1.0, 1.0, 1.0, 0.0, 1.0, 1.0),
                    std::domain_error);
    CHECK_THROWS_AS(go_equality_probe(-1.0, 1.0, 1.0, 1.0, 1.0, 1.0),
                    std::domain_error);
}
