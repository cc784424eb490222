#include "refinement.hpp"

#include <algorithm>

namespace conespline::detail {

std::vector<std::size_t> active_positions(const DyadicPartition& partition, const std::vector<DyadicPoint>& active)
{
    const unsigned __int128 step = static_cast<unsigned __int128>(1)
                                   << (DyadicPoint::max_level - partition.global_level());
    std::vector<std::size_t> positions;
    positions.reserve(active.size());
    for (const DyadicPoint p : active) {
        const auto pos = partition.position(p);
        if (!pos || *pos == 0 || *pos + 1 >= partition.size())
            throw std::logic_error("active point is not an interior partition point");
        const auto key = p.key();
        if (key - partition[*pos - 1].point.key() != step || partition[*pos + 1].point.key() - key != step)
            throw std::logic_error("active point does not have neighbours at the current spacing");
        positions.push_back(*pos);
    }
    std::sort(positions.begin(), positions.end());
    return positions;
}

void SplitPlan::split(const DyadicPartition& partition, std::size_t i)
{
    if (const auto mid = partition.midpoint_after(i))
        m_points.push_back(*mid);
    else
        m_unresolvable = true;
}

void SplitPlan::activate_midpoint(const DyadicPartition& partition, std::size_t i, int side)
{
    if (const auto mid = partition.midpoint_after(i))
        m_active[side].push_back(*mid);
    else
        m_unresolvable = true;
}

std::optional<RunStatus> SplitPlan::apply(DyadicPartition& partition, const Function& f, std::size_t max_points)
{
    if (m_unresolvable)
        return RunStatus::resolution_exhausted;
    if (partition.size() + partition.count_new(m_points) > max_points)
        return RunStatus::budget_exhausted;
    partition.insert(std::move(m_points), f);
    partition.advance_level();
    m_points.clear();
    return std::nullopt;
}

std::vector<DyadicPoint> SplitPlan::take_active(int side)
{
    auto& active = m_active[side];
    std::sort(active.begin(), active.end());
    active.erase(std::unique(active.begin(), active.end()), active.end());
    return std::move(active);
}

} // namespace conespline::detail
