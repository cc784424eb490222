#include "conespline/approx.hpp"

#include <algorithm>

#include "refinement.hpp"

namespace conespline {

void ApproxConfig::validate() const
{
    if (!(tolerance > 0.0))
        throw std::invalid_argument("ApproxConfig: tolerance must be positive");
    if (max_points < static_cast<std::size_t>(params.n_init()) + 1)
        throw std::invalid_argument("ApproxConfig: max_points must be at least n_init + 1");
}

ApproxState::ApproxState(Function f, const ApproxConfig& config)
    : m_f(std::move(f)), m_config((config.validate(), config)), m_partition(config.interval, config.params, m_f)
{
    // Interior points 1 .. n-1 of the uniform partition.
    for (std::size_t i = 1; i + 1 < m_partition.size(); ++i)
        m_active.push_back(m_partition[i].point);
}

ApproxReport ApproxState::report() const
{
    return ApproxReport{spline_from_partition(m_partition),
                        m_partition.evaluations(),
                        m_partition.global_level(),
                        m_status == RunStatus::converged,
                        m_status,
                        m_trace};
}

void approx_step(ApproxState& state)
{
    if (state.done())
        return;

    DyadicPartition& partition = state.m_partition;
    const ApproxConfig& config = state.m_config;
    const std::size_t n = partition.size() - 1;

    // Step 1: error indicators on the active set.
    const std::vector<std::size_t> active = detail::active_positions(partition, state.m_active);
    const double h = partition.spacing();
    std::vector<std::size_t> flagged;
    for (const std::size_t i : active) {
        const double err = local_error_indicator(partition[i - 1].value, partition[i].value,
                                                 partition[i + 1].value, h, config.params, config.interval);
        if (err > config.tolerance)
            flagged.push_back(i);
    }
    state.m_trace.push_back({partition.global_level(), active.size(), flagged.size()});
    if (flagged.empty()) {
        state.m_status = RunStatus::converged;
        return;
    }

    // Step 2: split the four subintervals around each flagged point. All
    // decisions use the partition as it stood at the start of the pass.
    detail::SplitPlan plan;
    for (const std::size_t i : flagged) {
        if (i >= 2)
            plan.split(partition, i - 2);
        plan.split(partition, i - 1);
        plan.split(partition, i);
        if (i + 2 <= n)
            plan.split(partition, i + 1);

        if (i >= 2)
            plan.activate(partition[i - 1].point);
        plan.activate_midpoint(partition, i - 1);
        plan.activate_midpoint(partition, i);
        if (i + 2 <= n)
            plan.activate(partition[i + 1].point);
    }

    if (const auto status = plan.apply(partition, state.m_f, config.max_points))
        state.m_status = *status;
    else
        state.m_active = plan.take_active();
}

ApproxReport approximate(const Function& f, const ApproxConfig& config)
{
    ApproxState state(f, config);
    while (!state.done())
        approx_step(state);
    return state.report();
}

} // namespace conespline
