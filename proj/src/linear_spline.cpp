#include "conespline/linear_spline.hpp"

#include <algorithm>
#include <cmath>

namespace conespline {

LinearSpline::LinearSpline(std::vector<double> knots, std::vector<double> values)
    : m_knots(std::move(knots)), m_values(std::move(values))
{
    if (m_knots.size() < 2 || m_knots.size() != m_values.size())
        throw std::invalid_argument("LinearSpline: need at least two knots and one value per knot");
    for (std::size_t i = 1; i < m_knots.size(); ++i)
        if (!(m_knots[i - 1] < m_knots[i]))
            throw std::invalid_argument("LinearSpline: knots must be strictly increasing");
    // Exactness at knots relies on 0 * value == 0.
    if (!std::all_of(m_values.begin(), m_values.end(), [](double v) { return std::isfinite(v); }))
        throw std::invalid_argument("LinearSpline: values must be finite");
}

double LinearSpline::operator()(double x) const
{
    if (!(x >= a() && x <= b()))
        throw std::domain_error("LinearSpline: evaluation point outside [a, b]");
    // i is the first knot strictly greater than x, clamped so [i-1, i] is a segment.
    auto it = std::upper_bound(m_knots.begin(), m_knots.end(), x);
    std::size_t i = std::clamp<std::size_t>(static_cast<std::size_t>(it - m_knots.begin()), 1, m_knots.size() - 1);
    const double x0 = m_knots[i - 1];
    const double x1 = m_knots[i];
    return (x - x1) / (x0 - x1) * m_values[i - 1] + (x - x0) / (x1 - x0) * m_values[i];
}

LinearSpline spline_from_partition(const DyadicPartition& partition)
{
    if (partition.size() < 2)
        throw std::logic_error("spline_from_partition: fewer than two points");
    if (partition.evaluations() != partition.size())
        throw std::logic_error("spline_from_partition: cached values out of sync with points");
    std::vector<double> knots;
    std::vector<double> values;
    knots.reserve(partition.size());
    values.reserve(partition.size());
    for (const auto& node : partition.nodes()) {
        if (!std::isfinite(node.value))
            throw std::logic_error("spline_from_partition: missing cached value");
        knots.push_back(node.x);
        values.push_back(node.value);
    }
    return LinearSpline(std::move(knots), std::move(values));
}

} // namespace conespline
