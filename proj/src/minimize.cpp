#include "conespline/minimize.hpp"

#include <algorithm>
#include <limits>
#include <unordered_map>

#include "refinement.hpp"

namespace conespline {

void MinConfig::validate() const
{
    if (!(tolerance > 0.0))
        throw std::invalid_argument("MinConfig: tolerance must be positive");
    if (max_points < static_cast<std::size_t>(params.n_init()) + 1)
        throw std::invalid_argument("MinConfig: max_points must be at least n_init + 1");
}

double sided_error_indicator(double err_i, double m_hat, double v1, double v2)
{
    return err_i + m_hat - std::min(v1, v2);
}

MinState::MinState(Function f, const MinConfig& config)
    : m_f(std::move(f)), m_config((config.validate(), config)), m_partition(config.interval, config.params, m_f)
{
    const std::size_t n = m_partition.size() - 1;
    for (std::size_t i = 2; i <= n - 1; ++i)
        m_plus.push_back(m_partition[i].point);
    for (std::size_t i = 1; i <= n - 2; ++i)
        m_minus.push_back(m_partition[i].point);
}

double MinState::sampled_min() const
{
    double m = std::numeric_limits<double>::infinity();
    for (const auto& node : m_partition.nodes())
        m = std::min(m, node.value);
    return m;
}

MinReport MinState::report() const
{
    const double value = sampled_min();
    std::vector<Interval> candidates;
    const auto nodes = m_partition.nodes();
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i)
        if (nodes[i].value == value || nodes[i + 1].value == value)
            candidates.emplace_back(nodes[i].x, nodes[i + 1].x);
    return MinReport{value,
                     m_partition.evaluations(),
                     m_partition.global_level(),
                     m_status == RunStatus::converged,
                     m_status,
                     std::move(candidates),
                     m_trace};
}

void min_step(MinState& state)
{
    if (state.done())
        return;

    DyadicPartition& partition = state.m_partition;
    const MinConfig& config = state.m_config;
    const std::size_t n = partition.size() - 1;
    const double tol = config.tolerance;
    const double m_hat = state.sampled_min();
    const double h = partition.spacing();

    const std::vector<std::size_t> plus = detail::active_positions(partition, state.m_plus);
    const std::vector<std::size_t> minus = detail::active_positions(partition, state.m_minus);

    auto err = [&](std::size_t i) {
        return local_error_indicator(partition[i - 1].value, partition[i].value, partition[i + 1].value, h,
                                     config.params, config.interval);
    };
    auto value = [&](std::size_t i) { return partition[i].value; };

    // Step 1, both sides against the same snapshot. The maps hold herr for
    // the members of the "too large" sets.
    std::unordered_map<std::size_t, double> herr_plus;
    std::unordered_map<std::size_t, double> herr_minus;
    for (const std::size_t i : plus) {
        const double e = err(i);
        if (e > tol)
            herr_plus.emplace(i, sided_error_indicator(e, m_hat, value(i - 2), value(i - 1)));
    }
    for (const std::size_t i : minus) {
        const double e = err(i);
        if (e > tol)
            herr_minus.emplace(i, sided_error_indicator(e, m_hat, value(i + 2), value(i + 1)));
    }

    // Partners three positions apart bound the same subinterval from both sides.
    auto exceeds = [tol](const std::unordered_map<std::size_t, double>& herr, std::size_t i) {
        const auto it = herr.find(i);
        return it != herr.end() && it->second > tol;
    };
    std::vector<std::size_t> hat_plus;
    std::vector<std::size_t> hat_minus;
    for (const std::size_t i : plus)
        if (herr_plus.contains(i) && (exceeds(herr_plus, i) || (i >= 3 && exceeds(herr_minus, i - 3))))
            hat_plus.push_back(i);
    for (const std::size_t i : minus)
        if (herr_minus.contains(i) && (exceeds(herr_minus, i) || (i + 3 <= n && exceeds(herr_plus, i + 3))))
            hat_minus.push_back(i);

    state.m_trace.push_back({partition.global_level(), hat_plus.size(), hat_minus.size(), m_hat});
    if (hat_plus.empty() && hat_minus.empty()) {
        state.m_status = RunStatus::converged;
        return;
    }

    // Step 2: split the two subintervals on the flagged side of each point.
    constexpr int plus_side = 0;
    constexpr int minus_side = 1;
    detail::SplitPlan plan;
    for (const std::size_t i : hat_plus) {
        if (i >= 2) {
            plan.split(partition, i - 2);
            plan.activate(partition[i - 1].point, plus_side);
        }
        plan.split(partition, i - 1);
        plan.activate_midpoint(partition, i - 1, plus_side);
    }
    for (const std::size_t i : hat_minus) {
        if (i + 2 <= n) {
            plan.split(partition, i + 1);
            plan.activate(partition[i + 1].point, minus_side);
        }
        plan.split(partition, i);
        plan.activate_midpoint(partition, i, minus_side);
    }

    if (const auto status = plan.apply(partition, state.m_f, config.max_points)) {
        state.m_status = *status;
        return;
    }
    state.m_plus = plan.take_active(plus_side);
    state.m_minus = plan.take_active(minus_side);
}

MinReport minimize(const Function& f, const MinConfig& config)
{
    MinState state(f, config);
    while (!state.done())
        min_step(state);
    return state.report();
}

} // namespace conespline
