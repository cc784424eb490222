#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "conespline/diagnostics.hpp"
#include "conespline/linear_spline.hpp"

namespace conespline {

enum class ConeStatus
{
    member,
    non_member,
    unknown,
};

struct KnownMin
{
    double value;
    std::vector<double> locations;
};

/// Analytic test function with derivative oracles and metadata.
struct TestFunction
{
    std::string label;
    Function f;
    Function f_prime;
    Function f_second;
    Interval domain;
    /// Abscissae where f'' jumps (or is otherwise discontinuous).
    std::vector<double> kinks;
    std::optional<KnownMin> known_min;
    std::optional<KnownMin> known_max;
    ConeStatus cone_status = ConeStatus::unknown;
    /// The cone parameters cone_status refers to.
    std::optional<ConeParams> cone_params;
    /// Family parameter (c for humps, d for the oscillatory families).
    double parameter = 0.0;

    DerivativeOracle oracle() const { return {f, f_prime, f_second, kinks}; }

    /// gamma * f with derivatives scaled alike. For gamma < 0 the known
    /// extrema swap roles.
    TestFunction scaled(double gamma) const;
};

/// Whether a hump must lie inside its domain or may be cut off by it.
enum class HumpFit
{
    inside,
    clipped,
};

/// The piecewise-quadratic hump of height 1 centred at c with support
/// [c - 2 delta, c + 2 delta]. Its second derivative takes the values
/// +1/delta^2, -1/delta^2, +1/delta^2 on the inner bands and zero outside.
/// Cone status (for `params`) is member when delta >= 2 * critical width.
/// With HumpFit::inside the support must lie in the domain.
TestFunction make_hump(double c,
                       double delta,
                       const Interval& domain = Interval(-1.0, 1.0),
                       const ConeParams& params = ConeParams(20, 10.0),
                       HumpFit fit = HumpFit::inside);

/// x^4 sin(d / x), with value 0 and second derivative 0 at x = 0. The second
/// derivative is discontinuous at 0 for d > 0 (listed as a kink).
TestFunction make_oscillatory(double d, const Interval& domain = Interval(-1.0, 1.0));

/// 10 x^2 + x^4 sin(d / x).
TestFunction make_osc_parabola(double d, const Interval& domain = Interval(-1.0, 1.0));

/// x^2 / 2.
TestFunction make_parabola(const Interval& domain = Interval(-1.0, 1.0));

enum class Family
{
    hump,
    oscillatory,
    oscillatory_plus_parabola,
    parabola,
};

/// Random family parameters. Draws use std::mt19937_64 seeded with `seed`;
/// each draw maps the top 53 bits of one output to [0, 1) and then to
/// [lower, upper], so sequences are identical on every platform.
struct FamilySpec
{
    Family family;
    double lower = 0.0;
    double upper = 0.0;
    double delta = 0.2; // hump width, fixed
    std::uint64_t seed = 0;
    /// Cone parameters the members' cone_status refers to.
    ConeParams params = ConeParams(20, 10.0);

    /// Hump: delta = 0.2, c ~ U[0, 0.6]. Oscillatory families: d ~ U[0, 2].
    static FamilySpec standard(Family family, std::uint64_t seed);
};

std::vector<TestFunction> sample_family(const FamilySpec& spec, std::size_t n);

struct GridMin
{
    double value;
    double location;
};

/// Minimum of f over m + 1 uniform points of the domain. Exceeds the true
/// minimum by at most (width/m)^2 sup|f''| / 8 (endpoints are on the grid,
/// and an interior minimizer has f' = 0).
GridMin brute_force_min(const Function& f, const Interval& domain, long m);

/// max |f(x) - spline(x)| over m + 1 uniform points of the spline's domain.
double dense_sup_error(const Function& f, const LinearSpline& spline, long m);

} // namespace conespline
