#include <doctest.h>

#include <random>
#include <stdexcept>
#include <vector>

#include "icnopt/benchmarks.hpp"

using namespace icnopt;

TEST_CASE("known optima evaluate to zero") {
    for (const auto& name : ProblemSpec::known_names()) {
        for (std::size_t d : {2, 3, 10}) {
            const auto p = ProblemSpec::make(name, d);
            const auto x = optimum_point(p);
            CHECK(evaluate(p, x) == doctest::Approx(0.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("ellipsoid hand value") {
    const auto p = ProblemSpec::make("Ellipsoid", 3);
    const std::vector<double> x = {0.5, 0.5, 0.5};
    CHECK(evaluate(p, x) == doctest::Approx(1.5)); // 0.25 * (1 + 2 + 3)
}

TEST_CASE("rastrigin hand value") {
    const auto p = ProblemSpec::make("Rastrigin", 2);
    const std::vector<double> x = {0.5, 0.5};
    CHECK(evaluate(p, x) == doctest::Approx(40.5)); // 20 + 2*(0.25 - 10*cos(pi))
}

TEST_CASE("rosenbrock variants agree at the optimum and differ elsewhere") {
    const auto canonical = ProblemSpec::make("Rosenbrock", 4);
    const auto unsquared =
        ProblemSpec::make("Rosenbrock", 4, RosenbrockVariant::Unsquared);

    const std::vector<double> ones(4, 1.0);
    CHECK(evaluate(canonical, ones) == doctest::Approx(0.0));
    CHECK(evaluate(unsquared, ones) == doctest::Approx(0.0));

    const std::vector<double> x = {0.2, 0.7, 0.4, 0.9};
    CHECK(evaluate(canonical, x) != evaluate(unsquared, x));
}

TEST_CASE("nonnegativity of the default forms on random points") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (const auto& name : ProblemSpec::known_names()) {
        const auto p = ProblemSpec::make(name, 6);
        for (int trial = 0; trial < 200; ++trial) {
            std::vector<double> x(6);
            for (auto& v : x) v = unit(rng);
            CHECK(evaluate(p, x) >= 0.0);
        }
    }
}

TEST_CASE("evaluation is pure and deterministic") {
    const auto p = ProblemSpec::make("Ackley", 5);
    const std::vector<double> x = {0.1, 0.9, 0.5, 0.3, 0.7};
    CHECK(evaluate(p, x) == evaluate(p, x));
}

TEST_CASE("contract violations") {
    const auto p = ProblemSpec::make("Ellipsoid", 3);
    CHECK_THROWS_AS(evaluate(p, std::vector<double>{0.5, 0.5}), std::invalid_argument);
    CHECK_THROWS_AS(evaluate(p, std::vector<double>{0.5, 0.5, 1.5}), std::invalid_argument);
    CHECK_THROWS_AS(evaluate(p, std::vector<double>{0.5, -0.1, 0.5}), std::invalid_argument);
    CHECK_THROWS_AS(ProblemSpec::make("Sphere", 3), std::invalid_argument);
    CHECK_THROWS_AS(ProblemSpec::make("Ellipsoid", 0), std::invalid_argument);
}
