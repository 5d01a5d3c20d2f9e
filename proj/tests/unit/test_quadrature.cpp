#include "doctest.h"

#include "isomean/quadrature.hpp"

#include <cmath>
#include <limits>
#include <numbers>

using namespace isomean;

TEST_CASE("smooth integrals") {
    CHECK(integrate([](double x) { return x * x; }, 0, 1).value == doctest::Approx(1.0 / 3).epsilon(1e-14));
    CHECK(integrate([](double x) { return std::sin(x); }, 0, std::numbers::pi).value ==
          doctest::Approx(2.0).epsilon(1e-13));
    const QuadResult r = integrate([](double x) { return std::exp(x); }, -1, 2);
    CHECK(r.converged);
    CHECK(std::abs(r.value - (std::exp(2.0) - std::exp(-1.0))) <= 1e-12);
    CHECK(r.error <= 1e-10 * std::abs(r.value));
}

TEST_CASE("endpoint singularities") {
    CHECK(std::abs(integrate([](double x) { return 1 / std::sqrt(x); }, 0, 1).value - 2.0) <= 1e-9);
    CHECK(std::abs(integrate([](double x) { return std::log(x); }, 0, 1).value + 1.0) <= 1e-10);
    CHECK(std::abs(integrate([](double x) { return std::log(std::sin(x)); }, 0, std::numbers::pi).value +
                   std::numbers::pi * std::log(2.0)) <= 1e-9);
}

TEST_CASE("infinite limits") {
    constexpr double inf = std::numeric_limits<double>::infinity();
    CHECK(std::abs(integrate([](double x) { return std::exp(-x); }, 0, inf).value - 1.0) <= 1e-10);
    CHECK(std::abs(integrate([](double x) { return std::exp(x); }, -inf, 0).value - 1.0) <= 1e-10);
    CHECK(std::abs(integrate([](double x) { return std::exp(-x * x); }, -inf, inf).value -
                   std::sqrt(std::numbers::pi)) <= 1e-10);
}

TEST_CASE("orientation and determinism") {
    const auto f = [](double x) { return std::cos(3 * x) + x; };
    const double forward = integrate(f, 0.2, 1.7).value;
    const double backward = integrate(f, 1.7, 0.2).value;
    CHECK(forward == -backward);
    CHECK(integrate(f, 0.2, 1.7).value == forward);
    CHECK(integrate(f, 1.0, 1.0).value == 0.0);
}

TEST_CASE("subdivision cap") {
    QuadOptions opt;
    opt.max_subdivisions = 2;
    const QuadResult r = integrate([](double x) { return std::sin(1 / x); }, 1e-3, 1, opt);
    CHECK(r.subdivisions <= 2);
    CHECK(!r.converged);
}
