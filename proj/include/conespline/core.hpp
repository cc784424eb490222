#pragma once

#include <functional>
#include <stdexcept>
#include <string>

namespace conespline {

/// Black-box univariate function.
using Function = std::function<double(double)>;

/// Thrown when a sampled function returns NaN or infinity.
class EvaluationError : public std::runtime_error
{
public:
    explicit EvaluationError(double x);

    double where() const noexcept { return m_x; }

private:
    double m_x;
};

/// Evaluate `f` at `x`, rejecting non-finite results.
double evaluate_checked(const Function& f, double x);

/// Finite closed interval [a, b] with a < b.
class Interval
{
public:
    Interval(double a, double b);

    double a() const noexcept { return m_a; }
    double b() const noexcept { return m_b; }
    double width() const noexcept { return m_b - m_a; }
    bool contains(double x) const noexcept { return m_a <= x && x <= m_b; }

    friend bool operator==(const Interval&, const Interval&) = default;

private:
    double m_a;
    double m_b;
};

/// The two numbers defining the cone of admissible functions: the initial
/// number of subintervals and the inflation constant.
class ConeParams
{
public:
    ConeParams(int n_init, double c0);

    int n_init() const noexcept { return m_n_init; }
    double c0() const noexcept { return m_c0; }

    friend bool operator==(const ConeParams&, const ConeParams&) = default;

private:
    int m_n_init;
    double m_c0;
};

/// Largest window width the cone condition looks across: 3(b - a)/(n_init - 1).
double critical_width(const ConeParams& params, const Interval& interval);

/// c0 * hc / (hc - h) for 0 < h < hc, where hc is the critical width.
/// Throws std::domain_error outside that range.
double inflation_factor(double h, const ConeParams& params, const Interval& interval);

/// Second-order divided difference of the quadratic through
/// (alpha, f_a), (mid, f_mid), (beta, f_b) with width = beta - alpha.
double divided_difference(double f_a, double f_mid, double f_b, double width);

/// Data-driven bound on the spline error near a triple of equally spaced
/// samples h_l apart: inflation_factor(3 h_l) / 8 * |second difference|.
double local_error_indicator(double f_left,
                             double f_mid,
                             double f_right,
                             double h_l,
                             const ConeParams& params,
                             const Interval& interval);

} // namespace conespline
