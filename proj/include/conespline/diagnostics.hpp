#pragma once

#include <optional>
#include <span>
#include <vector>

#include "conespline/core.hpp"

namespace conespline {

/// A function with optional first and second derivative oracles.
///
/// `kinks` lists abscissae where f'' jumps. Grid estimators sample both
/// one-sided limits at each kink inside the interval they are looking at, so
/// piecewise-constant second derivatives are not under-sampled.
struct DerivativeOracle
{
    Function f;
    Function f_prime;
    Function f_second;
    std::vector<double> kinks;
};

/// Thrown when an operation needs a derivative oracle that is not supplied.
class CapabilityError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

// ---------------------------------------------------------------------------
// Norms

/// max |g| over m + 1 uniform points of `on` (plus one-sided samples at any
/// kinks inside). A lower bound on the true sup.
double sup_norm(const Function& g, const Interval& on, int m, std::span<const double> kinks = {});

/// Grid estimate of inf |f'(zeta) - f'(eta)| / (zeta - eta) over eta < zeta in
/// `on`: the minimum over all pairs of m + 1 uniform points. An upper bound on
/// the true infimum.
double neginf_seminorm(const Function& f_prime, const Interval& on, int m = 256);

/// (integral of |g|^p)^(1/p) by the composite midpoint rule on m cells. The
/// cells are distributed over the pieces between kinks so that no cell
/// straddles a kink.
double lp_quasinorm(const Function& g, double p, const Interval& on, long m, std::span<const double> kinks = {});

/// Sup-norm error bound of the linear interpolant on one subinterval of
/// width h: h^2 sup|f''| / 8.
double spline_interval_error_bound(double h, double sup_f2);

// ---------------------------------------------------------------------------
// Cone condition

/// Upper bound that the cone places on sup |f''| over [alpha, beta], built
/// from the -inf seminorm on the windows [beta - h_minus, alpha] and
/// [beta, alpha + h_plus], using whichever windows fit inside the interval.
/// When neither window fits the cone places no constraint and the result is
/// +infinity. Requires beta - alpha < h_minus, h_plus < critical width.
double cone_bound_B(const DerivativeOracle& oracle,
                    double alpha,
                    double beta,
                    double h_minus,
                    double h_plus,
                    const ConeParams& params,
                    const Interval& interval,
                    int m = 256);

struct ScanResolution
{
    int alpha = 64;
    int beta = 64;
    int h_minus = 64;
    int h_plus = 64;
    /// Grid size for the seminorm and sup estimates inside the scan.
    int estimator = 64;
};

struct ConeWitness
{
    double alpha;
    double beta;
    double h_minus;
    double h_plus;
    double sup;   // sup_norm of f'' over [alpha, beta]
    double bound; // cone_bound_B at the witness, re-evaluated at full resolution
};

struct ConeScanReport
{
    bool violated = false;
    std::optional<ConeWitness> witness;
    /// sup - bound at the witness; zero when there is no witness.
    double margin = 0.0;
    ScanResolution resolution;
};

/// Searches a grid of (alpha, beta, h_minus, h_plus) for a violation of the
/// cone condition sup|f''| <= B. A witness refutes membership; the absence of
/// one proves nothing beyond this resolution.
ConeScanReport cone_membership_scan(const DerivativeOracle& oracle,
                                    const ConeParams& params,
                                    const Interval& interval,
                                    const ScanResolution& resolution = {});

// ---------------------------------------------------------------------------
// Cost analysis

/// Level functions are searched up to this level; Lcheck reports hitting it.
inline constexpr int default_level_cap = 40;

struct LevelResult
{
    int level;
    bool capped;
};

/// Smallest level l with inflation(3 h_l) h_l^2 ||f''|| / 8 <= tolerance, the
/// norm taken over the five-cell neighbourhood of the level-l cell holding x.
/// `m` is the sampling grid for each sup estimate.
int level_function_L(double x,
                     const DerivativeOracle& oracle,
                     double tolerance,
                     const ConeParams& params,
                     const Interval& interval,
                     int m = 64);

/// Smallest level at which the minimizer can stop refining near x, given a
/// global minimizer x_star. Independent of the tolerance. Where the defining
/// inequality never holds (e.g. x = x_star) the search stops at `level_cap`
/// and the result is flagged as capped.
LevelResult level_function_Lcheck(double x,
                                  const DerivativeOracle& oracle,
                                  double x_star,
                                  const ConeParams& params,
                                  const Interval& interval,
                                  int m = 64,
                                  int level_cap = default_level_cap);

/// Upper bound (1/h_0) * integral of 2^L(x) dx + 1 on the evaluations used by
/// the approximation algorithm, by midpoint quadrature on `cells` points.
/// With cells = n_init * 2^P and P >= max L the quadrature is exact.
double cost_bound_approx(const DerivativeOracle& oracle,
                         double tolerance,
                         const ConeParams& params,
                         const Interval& interval,
                         long cells,
                         int m = 64);

/// Same with 2^min(L(x), Lcheck(x)): the bound for the minimizer.
double cost_bound_min(const DerivativeOracle& oracle,
                      double tolerance,
                      double x_star,
                      const ConeParams& params,
                      const Interval& interval,
                      long cells,
                      int m = 64);

} // namespace conespline
