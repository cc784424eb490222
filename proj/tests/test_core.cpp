#include <doctest.h>

#include <cmath>
#include <limits>

#include "conespline/core.hpp"

using namespace conespline;

TEST_CASE("interval rejects empty, reversed and infinite bounds")
{
    CHECK_THROWS_AS(Interval(1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(Interval(2.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(Interval(0.0, std::numeric_limits<double>::infinity()), std::invalid_argument);
    CHECK_THROWS_AS(Interval(std::nan(""), 1.0), std::invalid_argument);

    const Interval iv(-1.0, 3.0);
    CHECK(iv.width() == 4.0);
    CHECK(iv.contains(-1.0));
    CHECK(iv.contains(3.0));
    CHECK_FALSE(iv.contains(3.0000001));
}

TEST_CASE("cone parameters need n_init >= 5 and c0 >= 1")
{
    CHECK_THROWS_AS(ConeParams(4, 10.0), std::invalid_argument);
    CHECK_THROWS_AS(ConeParams(20, 0.99), std::invalid_argument);
    CHECK_THROWS_AS(ConeParams(20, std::nan("")), std::invalid_argument);
    CHECK_NOTHROW(ConeParams(5, 1.0));
}

TEST_CASE("critical width and inflation factor")
{
    const Interval iv(-1.0, 1.0);
    const ConeParams params(20, 10.0);
    const double hc = 3.0 * 2.0 / 19.0;
    CHECK(critical_width(params, iv) == doctest::Approx(hc).epsilon(1e-15));

    // c0 hc / (hc - h): twice c0 at half the critical width.
    CHECK(inflation_factor(hc / 2.0, params, iv) == doctest::Approx(20.0).epsilon(1e-14));
    CHECK(inflation_factor(0.3, params, iv) == doctest::Approx(10.0 * hc / (hc - 0.3)).epsilon(1e-14));
    CHECK_THROWS_AS(inflation_factor(0.0, params, iv), std::domain_error);
    CHECK_THROWS_AS(inflation_factor(hc, params, iv), std::domain_error);
    CHECK_THROWS_AS(inflation_factor(-0.1, params, iv), std::domain_error);
}

TEST_CASE("divided difference is half the second derivative on quadratics")
{
    // f = 3x^2 - x + 2 on [0.2, 0.7]: f'' = 6, so D = 3.
    auto f = [](double x) { return 3.0 * x * x - x + 2.0; };
    CHECK(divided_difference(f(0.2), f(0.45), f(0.7), 0.5) == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(divided_difference(1.0, 2.0, 3.0, 1.0) == 0.0);
    CHECK_THROWS_AS(divided_difference(0.0, 0.0, 0.0, 0.0), std::domain_error);
}

TEST_CASE("local error indicator for x^2 at the initial spacing")
{
    // h = 0.1, inflation(0.3) = 200, second difference 2 h^2 = 0.02 -> 0.5.
    const Interval iv(-1.0, 1.0);
    const ConeParams params(20, 10.0);
    const double h = 0.1;
    auto f = [](double x) { return x * x; };
    const double err = local_error_indicator(f(0.3 - h), f(0.3), f(0.3 + h), h, params, iv);
    CHECK(err == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(local_error_indicator(1.0, 2.0, 3.0, h, params, iv) == 0.0);
}

TEST_CASE("evaluate_checked reports the offending abscissa")
{
    const Function f = [](double x) { return 1.0 / (x - 0.25) - 1.0 / (x - 0.25); };
    CHECK(evaluate_checked(f, 0.5) == 0.0);
    try {
        evaluate_checked(f, 0.25);
        FAIL("expected EvaluationError");
    } catch (const EvaluationError& e) {
        CHECK(e.where() == 0.25);
    }
}
