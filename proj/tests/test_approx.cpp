#include <doctest.h>

#include <cmath>
#include <set>

#include "conespline/approx.hpp"
#include "conespline/testbed.hpp"
#include "reference.hpp"

using namespace conespline;

namespace {

const Interval unit(-1.0, 1.0);
const ConeParams fig3_params(20, 10.0);

std::vector<double> abscissae(const DyadicPartition& p)
{
    std::vector<double> xs;
    for (const auto& node : p.nodes())
        xs.push_back(node.x);
    return xs;
}

std::vector<double> abscissae(const LinearSpline& s) { return {s.knots().begin(), s.knots().end()}; }

} // namespace

TEST_CASE("affine input converges on the initial grid")
{
    const ApproxReport r = approximate([](double x) { return 3.0 * x - 1.0; }, {1e-12, fig3_params, unit});
    CHECK(r.converged);
    CHECK(r.status == RunStatus::converged);
    CHECK(r.n_points == 21);
    CHECK(r.n_iterations == 0);
    CHECK(r.trace.size() == 1);
    CHECK(r.trace[0].active == 19);
    CHECK(r.trace[0].flagged == 0);
}

TEST_CASE("x^2 with tolerance 1 stays on the initial grid")
{
    // Every error indicator is 0.5.
    const ApproxReport r = approximate([](double x) { return x * x; }, {1.0, fig3_params, unit});
    CHECK(r.converged);
    CHECK(r.n_points == 21);
    CHECK(r.n_iterations == 0);
}

TEST_CASE("negated hump: 65 points after two refinement rounds")
{
    const TestFunction f = make_hump(-0.2, 0.3).scaled(-1.0);
    const ApproxReport r = approximate(f.f, {0.02, fig3_params, unit});
    CHECK(r.converged);
    CHECK(r.n_points == 65);
    CHECK(r.n_iterations == 2);
    CHECK(r.trace.size() == 3);
    CHECK(dense_sup_error(f.f, r.spline, 100'000) <= 0.02);
}

TEST_CASE("point sets agree with an independent implementation")
{
    struct Case
    {
        const char* name;
        Function f;
        double a, b;
        int n_init;
        double c0;
        double tol;
    };
    const std::vector<Case> cases{
        {"hump", make_hump(-0.2, 0.3).scaled(-1.0).f, -1.0, 1.0, 20, 10.0, 0.02},
        {"hump fine", make_hump(0.1, 0.2).f, -1.0, 1.0, 20, 10.0, 1e-5},
        {"sine", [](double x) { return std::sin(5.0 * x); }, 0.0, 2.0, 11, 3.0, 1e-4},
        {"oscillatory", make_oscillatory(1.3).f, -1.0, 1.0, 30, 10.0, 1e-6},
        {"bump", [](double x) { return std::exp(-40.0 * x * x); }, -1.5, 0.5, 6, 1.5, 1e-3},
    };
    for (const Case& c : cases) {
        CAPTURE(c.name);
        const ApproxReport r = approximate(c.f, {c.tol, ConeParams(c.n_init, c.c0), Interval(c.a, c.b)});
        const reference::Grid grid{c.a, c.b, c.n_init, c.c0};
        const reference::Run ref = reference::approximate(c.f, grid, c.tol);
        REQUIRE(ref.converged);
        CHECK(r.converged);
        CHECK(r.n_iterations == ref.rounds);
        CHECK(r.n_points == ref.ticks.size());
        CHECK(abscissae(r.spline) == reference::abscissae(ref, grid));
    }
}

TEST_CASE("stepping to the fixpoint reproduces the batch run")
{
    const Function f = make_hump(0.3, 0.25).f;
    const ApproxConfig config{1e-4, fig3_params, unit};
    const ApproxReport batch = approximate(f, config);

    ApproxState state(f, config);
    std::vector<double> previous = abscissae(state.partition());
    while (!state.done()) {
        const int level = state.partition().global_level();
        approx_step(state);
        const std::vector<double> current = abscissae(state.partition());

        // Nested: every earlier point survives.
        std::set<double> now(current.begin(), current.end());
        for (const double x : previous)
            CHECK(now.contains(x));
        previous = current;

        if (state.done())
            break;
        // Active points have both neighbours at the new spacing.
        const DyadicPartition& p = state.partition();
        CHECK(p.global_level() == level + 1);
        for (const DyadicPoint q : state.active()) {
            const auto i = p.position(q);
            REQUIRE(i);
            CHECK(p[*i].x - p[*i - 1].x == doctest::Approx(p.spacing()).epsilon(1e-9));
            CHECK(p[*i + 1].x - p[*i].x == doctest::Approx(p.spacing()).epsilon(1e-9));
        }
    }
    const ApproxReport stepped = state.report();
    CHECK(abscissae(stepped.spline) == abscissae(batch.spline));
    CHECK(std::vector<double>(stepped.spline.values().begin(), stepped.spline.values().end())
          == std::vector<double>(batch.spline.values().begin(), batch.spline.values().end()));
    CHECK(stepped.n_points == batch.n_points);
    CHECK(stepped.n_iterations == batch.n_iterations);

    // Idempotent once done.
    const std::size_t size = state.partition().size();
    approx_step(state);
    CHECK(state.partition().size() == size);
    CHECK(state.trace().size() == batch.trace.size());
}

TEST_CASE("subinterval widths are dyadic fractions of the initial width")
{
    const ApproxReport r = approximate(make_oscillatory(0.8).f, {1e-7, fig3_params, unit});
    const auto knots = r.spline.knots();
    const double h0 = 0.1;
    for (std::size_t i = 1; i < knots.size(); ++i) {
        const double ratio = h0 / (knots[i] - knots[i - 1]);
        const double m = std::round(std::log2(ratio));
        CHECK(m >= 0.0);
        CHECK(m <= r.n_iterations);
        CHECK(ratio == doctest::Approx(std::exp2(m)).epsilon(1e-9));
    }
}

TEST_CASE("converged runs pass their own final check")
{
    const Function f = make_osc_parabola(1.7).f;
    const ApproxConfig config{1e-6, ConeParams(50, 10.0), unit};
    ApproxState state(f, config);
    while (!state.done())
        approx_step(state);
    REQUIRE(state.status() == RunStatus::converged);
    const DyadicPartition& p = state.partition();
    for (const DyadicPoint q : state.active()) {
        const std::size_t i = *p.position(q);
        CHECK(local_error_indicator(p[i - 1].value, p[i].value, p[i + 1].value, p.spacing(), config.params,
                                    config.interval)
              <= config.tolerance);
    }
}

TEST_CASE("tolerance is met on wide humps")
{
    // delta = 2 * critical width fits inside [-1, 1] once n_init >= 25.
    const ConeParams params(30, 10.0);
    const double delta = 2.0 * critical_width(params, unit);
    for (const double c : {0.0, 0.1, -0.15}) {
        const TestFunction f = make_hump(c, delta, unit, params);
        REQUIRE(f.cone_status == ConeStatus::member);
        for (const double tol : {1e-2, 1e-3, 1e-4, 1e-5, 1e-6}) {
            CAPTURE(c);
            CAPTURE(tol);
            const ApproxReport r = approximate(f.f, {tol, params, unit});
            CHECK(r.converged);
            CHECK(dense_sup_error(f.f, r.spline, 100'000) <= tol);
        }
    }
}

TEST_CASE("budget exhaustion is reported, not thrown")
{
    const Function f = make_hump(-0.2, 0.3).scaled(-1.0).f;
    const ApproxReport r = approximate(f, {0.02, fig3_params, unit, 30});
    CHECK_FALSE(r.converged);
    CHECK(r.status == RunStatus::budget_exhausted);
    CHECK(r.n_points <= 30);
    CHECK(r.spline.knots().size() == r.n_points);

    CHECK_THROWS_AS(approximate(f, {0.02, fig3_params, unit, 20}), std::invalid_argument);
    CHECK_THROWS_AS(approximate(f, {0.0, fig3_params, unit}), std::invalid_argument);
}

TEST_CASE("kinks too fine for doubles end the run cleanly")
{
    // |x - 1/3| never converges for a tiny tolerance; the partition runs out
    // of levels (or the budget) before anything misbehaves.
    const ApproxReport r =
        approximate([](double x) { return std::abs(x - 1.0 / 3.0); }, {1e-300, ConeParams(5, 1.0), Interval(0.0, 1.0)});
    CHECK_FALSE(r.converged);
    CHECK((r.status == RunStatus::resolution_exhausted || r.status == RunStatus::budget_exhausted));
}

TEST_CASE("non-finite values raise an evaluation error")
{
    const Function f = [](double x) { return x > 0.45 && x < 0.55 ? std::nan("") : x; };
    CHECK_THROWS_AS(approximate(f, {1e-3, ConeParams(10, 2.0), Interval(0.0, 1.0)}), EvaluationError);
}

TEST_CASE("scaling the function and tolerance together leaves the samples unchanged")
{
    const Function f = make_hump(0.25, 0.2).scaled(-1.0).f;
    const ApproxReport base = approximate(f, {1e-4, fig3_params, unit});
    for (const double gamma : {1e-3, 7.0, 1e3}) {
        const ApproxReport scaled =
            approximate([&](double x) { return gamma * f(x); }, {gamma * 1e-4, fig3_params, unit});
        CHECK(abscissae(scaled.spline) == abscissae(base.spline));
    }
}
