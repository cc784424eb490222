#include "conespline/core.hpp"

#include <cmath>
#include <sstream>

namespace conespline {

namespace {

std::string evaluation_message(double x)
{
    std::ostringstream os;
    os.precision(17);
    os << "non-finite function value at x = " << x;
    return os.str();
}

} // namespace

EvaluationError::EvaluationError(double x) : std::runtime_error(evaluation_message(x)), m_x(x) {}

double evaluate_checked(const Function& f, double x)
{
    const double y = f(x);
    if (!std::isfinite(y))
        throw EvaluationError(x);
    return y;
}

Interval::Interval(double a, double b) : m_a(a), m_b(b)
{
    if (!std::isfinite(a) || !std::isfinite(b) || !(a < b))
        throw std::invalid_argument("Interval: need finite a < b");
}

ConeParams::ConeParams(int n_init, double c0) : m_n_init(n_init), m_c0(c0)
{
    if (n_init < 5)
        throw std::invalid_argument("ConeParams: n_init must be at least 5");
    if (!(c0 >= 1.0) || !std::isfinite(c0))
        throw std::invalid_argument("ConeParams: c0 must be a finite number >= 1");
}

double critical_width(const ConeParams& params, const Interval& interval)
{
    return 3.0 * interval.width() / (params.n_init() - 1);
}

double inflation_factor(double h, const ConeParams& params, const Interval& interval)
{
    const double hc = critical_width(params, interval);
    if (!(h > 0.0) || !(h < hc))
        throw std::domain_error("inflation_factor: width must lie in (0, critical width)");
    return params.c0() * hc / (hc - h);
}

double divided_difference(double f_a, double f_mid, double f_b, double width)
{
    if (!(width > 0.0))
        throw std::domain_error("divided_difference: width must be positive");
    return (2.0 * f_b - 4.0 * f_mid + 2.0 * f_a) / (width * width);
}

double local_error_indicator(double f_left,
                             double f_mid,
                             double f_right,
                             double h_l,
                             const ConeParams& params,
                             const Interval& interval)
{
    return inflation_factor(3.0 * h_l, params, interval) / 8.0
           * std::abs(f_right - 2.0 * f_mid + f_left);
}

} // namespace conespline
