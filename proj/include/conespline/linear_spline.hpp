#pragma once

#include <span>
#include <vector>

#include "conespline/dyadic_partition.hpp"

namespace conespline {

/// Piecewise linear interpolant through (knots[i], values[i]).
class LinearSpline
{
public:
    LinearSpline(std::vector<double> knots, std::vector<double> values);

    std::span<const double> knots() const noexcept { return m_knots; }
    std::span<const double> values() const noexcept { return m_values; }
    double a() const noexcept { return m_knots.front(); }
    double b() const noexcept { return m_knots.back(); }

    /// Throws std::domain_error for x outside [a, b]. Exact at knots.
    double operator()(double x) const;

private:
    std::vector<double> m_knots;
    std::vector<double> m_values;
};

LinearSpline spline_from_partition(const DyadicPartition& partition);

inline double spline_eval(const LinearSpline& spline, double x) { return spline(x); }

} // namespace conespline
