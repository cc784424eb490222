#include "conespline/dyadic_partition.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace conespline {

DyadicPoint DyadicPoint::make(int level, std::uint64_t index)
{
    if (level < 0 || level > max_level)
        throw std::out_of_range("DyadicPoint: level out of range");
    if (index == 0)
        return DyadicPoint(0, 0);
    const int shift = std::min(level, std::countr_zero(index));
    return DyadicPoint(level - shift, index >> shift);
}

std::optional<DyadicPoint> dyadic_midpoint(DyadicPoint lhs, DyadicPoint rhs)
{
    const int level = std::max(lhs.level(), rhs.level()) + 1;
    if (level > DyadicPoint::max_level)
        return std::nullopt;
    // Both shifts are at least one, so the sum is even.
    const unsigned __int128 kl = static_cast<unsigned __int128>(lhs.index()) << (level - lhs.level());
    const unsigned __int128 kr = static_cast<unsigned __int128>(rhs.index()) << (level - rhs.level());
    const unsigned __int128 mid = (kl + kr) / 2;
    if (mid > static_cast<unsigned __int128>(UINT64_MAX))
        return std::nullopt;
    return DyadicPoint::make(level, static_cast<std::uint64_t>(mid));
}

DyadicPartition::DyadicPartition(const Interval& interval, const ConeParams& params, const Function& f)
    : m_interval(interval), m_params(params)
{
    const auto n = static_cast<std::uint64_t>(params.n_init());
    m_nodes.reserve(n + 1);
    for (std::uint64_t k = 0; k <= n; ++k) {
        const DyadicPoint p = DyadicPoint::make(0, k);
        const double x = coordinate(p);
        m_nodes.push_back({p, x, evaluate_checked(f, x)});
        ++m_evaluations;
    }
}

void DyadicPartition::advance_level()
{
    if (m_level >= DyadicPoint::max_level)
        throw std::logic_error("DyadicPartition: level limit reached");
    ++m_level;
}

double DyadicPartition::spacing(int level) const noexcept
{
    return std::ldexp(m_interval.width() / m_params.n_init(), -level);
}

double DyadicPartition::coordinate(DyadicPoint p) const noexcept
{
    if (p.index() == 0)
        return m_interval.a();
    if (p.level() == 0 && p.index() == static_cast<std::uint64_t>(m_params.n_init()))
        return m_interval.b();
    const double t = std::ldexp(static_cast<double>(p.index()), -p.level()) / m_params.n_init();
    return m_interval.a() + m_interval.width() * t;
}

std::optional<std::size_t> DyadicPartition::position(DyadicPoint p) const
{
    const auto it = std::lower_bound(m_nodes.begin(), m_nodes.end(), p,
                                     [](const Node& node, DyadicPoint q) { return node.point < q; });
    if (it == m_nodes.end() || it->point != p)
        return std::nullopt;
    return static_cast<std::size_t>(it - m_nodes.begin());
}

std::optional<DyadicPoint> DyadicPartition::midpoint_after(std::size_t i) const
{
    if (i + 1 >= m_nodes.size())
        return std::nullopt;
    const auto mid = dyadic_midpoint(m_nodes[i].point, m_nodes[i + 1].point);
    if (!mid)
        return std::nullopt;
    const double x = coordinate(*mid);
    if (!(m_nodes[i].x < x && x < m_nodes[i + 1].x))
        return std::nullopt;
    return mid;
}

DyadicPoint DyadicPartition::refine_interval(DyadicPoint left_point, const Function& f)
{
    const auto pos = position(left_point);
    if (!pos || *pos + 1 >= m_nodes.size())
        throw std::logic_error("refine_interval: point has no right neighbour in the partition");
    const auto mid = midpoint_after(*pos);
    if (!mid)
        throw std::overflow_error("refine_interval: dyadic resolution exhausted");
    insert({*mid}, f);
    return *mid;
}

namespace {

void sort_unique(std::vector<DyadicPoint>& points)
{
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
}

} // namespace

std::size_t DyadicPartition::count_new(std::vector<DyadicPoint> points) const
{
    sort_unique(points);
    return static_cast<std::size_t>(
        std::count_if(points.begin(), points.end(), [this](DyadicPoint p) { return !contains(p); }));
}

std::size_t DyadicPartition::insert(std::vector<DyadicPoint> points, const Function& f)
{
    sort_unique(points);
    std::vector<Node> fresh;
    for (const DyadicPoint p : points) {
        if (contains(p))
            continue;
        if (p.key() > m_nodes.back().point.key())
            throw std::logic_error("DyadicPartition::insert: point beyond the right endpoint");
        const double x = coordinate(p);
        fresh.push_back({p, x, evaluate_checked(f, x)});
    }
    if (fresh.empty())
        return 0;

    std::vector<Node> merged;
    merged.reserve(m_nodes.size() + fresh.size());
    std::merge(m_nodes.begin(), m_nodes.end(), fresh.begin(), fresh.end(), std::back_inserter(merged),
               [](const Node& lhs, const Node& rhs) { return lhs.point < rhs.point; });
    m_nodes = std::move(merged);
    m_evaluations += fresh.size();
    return fresh.size();
}

} // namespace conespline
