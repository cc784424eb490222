#include <doctest.h>

#include <cmath>

#include "conespline/dyadic_partition.hpp"
#include "conespline/linear_spline.hpp"

using namespace conespline;

namespace {

struct Counter
{
    int calls = 0;
    Function wrap(Function f)
    {
        return [this, f = std::move(f)](double x) {
            ++calls;
            return f(x);
        };
    }
};

} // namespace

TEST_CASE("dyadic points are canonical and ordered by position")
{
    CHECK(DyadicPoint::make(3, 4) == DyadicPoint::make(1, 1));
    CHECK(DyadicPoint::make(5, 0) == DyadicPoint::make(0, 0));
    CHECK(DyadicPoint::make(2, 12).level() == 0);
    CHECK(DyadicPoint::make(2, 12).index() == 3);

    CHECK(DyadicPoint::make(1, 1) < DyadicPoint::make(0, 1));
    CHECK(DyadicPoint::make(2, 3) < DyadicPoint::make(1, 3));
    CHECK(DyadicPoint::make(2, 5) > DyadicPoint::make(1, 2));

    const auto mid = dyadic_midpoint(DyadicPoint::make(0, 3), DyadicPoint::make(0, 4));
    REQUIRE(mid);
    CHECK(*mid == DyadicPoint::make(1, 7));
    const auto deeper = dyadic_midpoint(DyadicPoint::make(1, 7), DyadicPoint::make(0, 4));
    REQUIRE(deeper);
    CHECK(*deeper == DyadicPoint::make(2, 15));
    CHECK_FALSE(dyadic_midpoint(DyadicPoint::make(DyadicPoint::max_level, 1), DyadicPoint::make(0, 1)));
}

TEST_CASE("uniform partition coordinates and evaluations")
{
    Counter counter;
    const DyadicPartition p(Interval(-1.0, 1.0), ConeParams(20, 10.0), counter.wrap([](double x) { return x * x; }));
    REQUIRE(p.size() == 21);
    CHECK(counter.calls == 21);
    CHECK(p.evaluations() == 21);
    CHECK(p.global_level() == 0);
    CHECK(p.spacing() == doctest::Approx(0.1).epsilon(1e-15));
    CHECK(p.spacing(3) == doctest::Approx(0.0125).epsilon(1e-15));
    CHECK(p[0].x == -1.0);
    CHECK(p[20].x == 1.0);
    for (std::size_t i = 0; i < p.size(); ++i) {
        CHECK(p[i].x == doctest::Approx(-1.0 + 0.1 * static_cast<double>(i)).epsilon(1e-15));
        CHECK(p[i].value == p[i].x * p[i].x);
        CHECK(p.position(p[i].point) == i);
    }
    // The right endpoint of a width that is not exactly representable.
    const DyadicPartition q(Interval(0.1, 0.7), ConeParams(7, 1.0), [](double) { return 0.0; });
    CHECK(q[7].x == 0.7);
    CHECK(q[0].x == 0.1);
}

TEST_CASE("refinement evaluates each new point once")
{
    Counter counter;
    const Function f = counter.wrap([](double x) { return std::sin(x); });
    DyadicPartition p(Interval(0.0, 1.0), ConeParams(5, 1.0), f);
    REQUIRE(counter.calls == 6);

    const DyadicPoint mid = p.refine_interval(p[2].point, f);
    CHECK(mid == DyadicPoint::make(1, 5));
    CHECK(p.size() == 7);
    CHECK(p[3].x == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(p[3].value == std::sin(p[3].x));
    CHECK(counter.calls == 7);

    // Inserting an existing point costs nothing.
    CHECK(p.insert({mid}, f) == 0);
    CHECK(p.size() == 7);
    CHECK(counter.calls == 7);

    CHECK_THROWS_AS(p.refine_interval(p[p.size() - 1].point, f), std::logic_error);
    CHECK_THROWS_AS(p.refine_interval(DyadicPoint::make(4, 1), f), std::logic_error);

    // Batch insertion deduplicates against itself and the partition.
    const std::vector<DyadicPoint> batch{DyadicPoint::make(1, 1), DyadicPoint::make(1, 1), DyadicPoint::make(1, 5),
                                         DyadicPoint::make(2, 3)};
    CHECK(p.count_new(batch) == 2);
    CHECK(p.insert(batch, f) == 2);
    CHECK(p.size() == 9);
    CHECK(counter.calls == 9);
    CHECK(p.evaluations() == 9);
    for (std::size_t i = 1; i < p.size(); ++i)
        CHECK(p[i - 1].x < p[i].x);
}

TEST_CASE("midpoint_after respects the level limit")
{
    DyadicPartition p(Interval(0.0, 1.0), ConeParams(5, 1.0), [](double x) { return x; });
    const Function f = [](double x) { return x; };
    for (int k = 0; k < DyadicPoint::max_level; ++k) {
        const auto mid = p.midpoint_after(0);
        REQUIRE(mid);
        p.insert({*mid}, f);
    }
    CHECK(p[1].point.level() == DyadicPoint::max_level);
    CHECK_FALSE(p.midpoint_after(0));
}

TEST_CASE("linear spline interpolates and rejects points outside")
{
    const LinearSpline s({0.0, 1.0, 3.0}, {1.0, 3.0, -1.0});
    CHECK(s(0.0) == 1.0);
    CHECK(s(1.0) == 3.0);
    CHECK(s(3.0) == -1.0);
    CHECK(s(0.25) == doctest::Approx(1.5));
    CHECK(s(2.0) == doctest::Approx(1.0));
    CHECK(spline_eval(s, 2.5) == doctest::Approx(0.0));
    CHECK(s.a() == 0.0);
    CHECK(s.b() == 3.0);
    CHECK_THROWS_AS(s(-0.01), std::domain_error);
    CHECK_THROWS_AS(s(3.01), std::domain_error);

    CHECK_THROWS_AS(LinearSpline({0.0}, {1.0}), std::invalid_argument);
    CHECK_THROWS_AS(LinearSpline({0.0, 1.0}, {1.0}), std::invalid_argument);
    CHECK_THROWS_AS(LinearSpline({0.0, 0.0}, {1.0, 2.0}), std::invalid_argument);
    CHECK_THROWS_AS(LinearSpline({0.0, 1.0}, {1.0, std::nan("")}), std::invalid_argument);
}

TEST_CASE("spline from a partition is exact at the nodes")
{
    auto f = [](double x) { return std::exp(x); };
    const DyadicPartition p(Interval(-2.0, 1.0), ConeParams(9, 2.0), f);
    const LinearSpline s = spline_from_partition(p);
    REQUIRE(s.knots().size() == p.size());
    for (const auto& node : p.nodes())
        CHECK(s(node.x) == node.value);
}
