#include "conespline/testbed.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace conespline {

namespace {

double sign(double x) { return static_cast<double>((x > 0.0) - (x < 0.0)); }

KnownMin scaled_extremum(const KnownMin& m, double gamma) { return {gamma * m.value, m.locations}; }

std::vector<double> kinks_inside(std::initializer_list<double> candidates, const Interval& domain)
{
    std::vector<double> kinks;
    for (const double k : candidates)
        if (domain.contains(k))
            kinks.push_back(k);
    return kinks;
}

} // namespace

TestFunction TestFunction::scaled(double gamma) const
{
    TestFunction out = *this;
    auto scale = [gamma](const Function& g) -> Function {
        if (!g)
            return {};
        return [g, gamma](double x) { return gamma * g(x); };
    };
    out.f = scale(f);
    out.f_prime = scale(f_prime);
    out.f_second = scale(f_second);
    out.known_min.reset();
    out.known_max.reset();
    const auto& low = gamma >= 0.0 ? known_min : known_max;
    const auto& high = gamma >= 0.0 ? known_max : known_min;
    if (low)
        out.known_min = scaled_extremum(*low, gamma);
    if (high)
        out.known_max = scaled_extremum(*high, gamma);
    if (gamma < 0.0)
        out.label = label.starts_with('-') ? label.substr(1) : "-" + label;
    return out;
}

TestFunction make_hump(double c, double delta, const Interval& domain, const ConeParams& params, HumpFit fit)
{
    if (!(delta > 0.0) || !std::isfinite(c))
        throw std::domain_error("make_hump: need finite c and delta > 0");
    const bool inside = domain.a() <= c - 2.0 * delta && c + 2.0 * delta <= domain.b();
    if (fit == HumpFit::inside && !inside)
        throw std::domain_error("make_hump: support [c - 2 delta, c + 2 delta] must lie in the domain");
    if (!(c - 2.0 * delta < domain.b() && c + 2.0 * delta > domain.a()))
        throw std::domain_error("make_hump: hump does not meet the domain");

    const double d2 = delta * delta;
    TestFunction t{.label = "f1",
                   // The closed form expanded per band, which keeps f(c) = 1 and
                   // f(c +- 2 delta) = 0 exact in floating point.
                   .f = [c, delta, d2](double x) {
                       const double u = std::abs(x - c);
                       if (u > 2.0 * delta)
                           return 0.0;
                       if (u <= delta)
                           return 1.0 - u * u / (2.0 * d2);
                       const double v = 2.0 * delta - u;
                       return v * v / (2.0 * d2);
                   },
                   .f_prime = [c, delta, d2](double x) {
                       const double u = x - c;
                       if (std::abs(u) > 2.0 * delta)
                           return 0.0;
                       return (u + std::abs(u - delta) - std::abs(u + delta)) / d2;
                   },
                   .f_second = [c, delta, d2](double x) {
                       const double u = x - c;
                       if (std::abs(u) > 2.0 * delta)
                           return 0.0;
                       return (1.0 + sign(u - delta) - sign(u + delta)) / d2;
                   },
                   .domain = domain,
                   .kinks = kinks_inside({c - 2.0 * delta, c - delta, c + delta, c + 2.0 * delta}, domain),
                   .parameter = c};

    if (domain.contains(c))
        t.known_max = KnownMin{1.0, {c}};
    if (inside)
        t.known_min = KnownMin{0.0, {c - 2.0 * delta, c + 2.0 * delta}};
    if (inside) {
        t.cone_status = delta >= 2.0 * critical_width(params, domain) ? ConeStatus::member : ConeStatus::non_member;
        t.cone_params = params;
    }
    return t;
}

TestFunction make_oscillatory(double d, const Interval& domain)
{
    if (!(d >= 0.0) || !std::isfinite(d))
        throw std::domain_error("make_oscillatory: need finite d >= 0");
    TestFunction t{.label = "f2",
                   .f = [d](double x) {
                       if (x == 0.0)
                           return 0.0;
                       const double x2 = x * x;
                       return x2 * x2 * std::sin(d / x);
                   },
                   .f_prime = [d](double x) {
                       if (x == 0.0)
                           return 0.0;
                       const double x2 = x * x;
                       return 4.0 * x2 * x * std::sin(d / x) - d * x2 * std::cos(d / x);
                   },
                   .f_second = [d](double x) {
                       if (x == 0.0)
                           return 0.0;
                       return (12.0 * x * x - d * d) * std::sin(d / x) - 6.0 * d * x * std::cos(d / x);
                   },
                   .domain = domain,
                   .kinks = d > 0.0 ? kinks_inside({0.0}, domain) : std::vector<double>{},
                   .cone_status = d == 0.0 ? ConeStatus::member : ConeStatus::non_member,
                   .parameter = d};
    const GridMin grid = brute_force_min(t.f, domain, 200'000);
    t.known_min = KnownMin{grid.value, {grid.location}};
    return t;
}

TestFunction make_osc_parabola(double d, const Interval& domain)
{
    const TestFunction osc = make_oscillatory(d, domain);
    TestFunction t{.label = "f3",
                   .f = [g = osc.f](double x) { return 10.0 * x * x + g(x); },
                   .f_prime = [g = osc.f_prime](double x) { return 20.0 * x + g(x); },
                   .f_second = [g = osc.f_second](double x) { return 20.0 + g(x); },
                   .domain = domain,
                   .kinks = osc.kinks,
                   .parameter = d};
    // x^2 (10 + x^2 sin(d/x)) >= x^2 (10 - x^2) >= 0 for |x| <= sqrt(10).
    if (domain.contains(0.0) && domain.a() >= -std::sqrt(10.0) && domain.b() <= std::sqrt(10.0)) {
        t.known_min = KnownMin{0.0, {0.0}};
    } else {
        const GridMin grid = brute_force_min(t.f, domain, 200'000);
        t.known_min = KnownMin{grid.value, {grid.location}};
    }
    return t;
}

TestFunction make_parabola(const Interval& domain)
{
    const double at = std::clamp(0.0, domain.a(), domain.b());
    return TestFunction{.label = "f0",
                        .f = [](double x) { return 0.5 * x * x; },
                        .f_prime = [](double x) { return x; },
                        .f_second = [](double) { return 1.0; },
                        .domain = domain,
                        .known_min = KnownMin{0.5 * at * at, {at}},
                        .cone_status = ConeStatus::member};
}

FamilySpec FamilySpec::standard(Family family, std::uint64_t seed)
{
    FamilySpec spec{.family = family, .seed = seed};
    switch (family) {
    case Family::hump:
        spec.lower = 0.0;
        spec.upper = 0.6;
        break;
    case Family::oscillatory:
    case Family::oscillatory_plus_parabola:
        spec.lower = 0.0;
        spec.upper = 2.0;
        break;
    case Family::parabola:
        break;
    }
    return spec;
}

std::vector<TestFunction> sample_family(const FamilySpec& spec, std::size_t n)
{
    if (!(spec.lower <= spec.upper))
        throw std::invalid_argument("sample_family: lower must not exceed upper");
    std::mt19937_64 rng(spec.seed);
    auto draw = [&] {
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        return spec.lower + (spec.upper - spec.lower) * u;
    };
    const Interval domain(-1.0, 1.0);
    std::vector<TestFunction> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        switch (spec.family) {
        case Family::hump:
            out.push_back(make_hump(draw(), spec.delta, domain, spec.params));
            break;
        case Family::oscillatory:
            out.push_back(make_oscillatory(draw(), domain));
            break;
        case Family::oscillatory_plus_parabola:
            out.push_back(make_osc_parabola(draw(), domain));
            break;
        case Family::parabola:
            out.push_back(make_parabola(domain));
            break;
        }
    }
    return out;
}

GridMin brute_force_min(const Function& f, const Interval& domain, long m)
{
    if (m < 1)
        throw std::invalid_argument("brute_force_min: need m >= 1");
    GridMin best{evaluate_checked(f, domain.a()), domain.a()};
    for (long k = 1; k <= m; ++k) {
        const double x = k == m ? domain.b() : domain.a() + domain.width() * k / m;
        const double y = evaluate_checked(f, x);
        if (y < best.value)
            best = {y, x};
    }
    return best;
}

double dense_sup_error(const Function& f, const LinearSpline& spline, long m)
{
    if (m < 1)
        throw std::invalid_argument("dense_sup_error: need m >= 1");
    const Interval domain(spline.a(), spline.b());
    double worst = 0.0;
    for (long k = 0; k <= m; ++k) {
        const double x = k == m ? domain.b() : domain.a() + domain.width() * k / m;
        worst = std::max(worst, std::abs(evaluate_checked(f, x) - spline(x)));
    }
    return worst;
}

} // namespace conespline
