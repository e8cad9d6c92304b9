#include "veeswarm/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace veeswarm {

std::string_view to_string(Termination t) {
    switch (t) {
        case Termination::GoalReached:
            return "GoalReached";
        case Termination::MaxSteps:
            return "MaxSteps";
        case Termination::ObstaclePenetration:
            return "ObstaclePenetration";
    }
    return "Unknown";
}

Termination termination_from_string(std::string_view s) {
    if (s == "GoalReached") return Termination::GoalReached;
    if (s == "MaxSteps") return Termination::MaxSteps;
    if (s == "ObstaclePenetration") return Termination::ObstaclePenetration;
    throw std::invalid_argument("unknown termination reason '" + std::string(s) + "'");
}

double order_metric(std::span<const double> headings) {
    if (headings.empty()) {
        throw std::invalid_argument("order_metric needs at least one heading");
    }
    Vec2 sum;
    for (double psi : headings) {
        sum += Vec2{std::cos(psi), std::sin(psi)};
    }
    // Rounding can push a perfectly aligned sum a hair above n.
    return std::min(1.0, norm(sum) / static_cast<double>(headings.size()));
}

double avg_formation_error(std::span<const UavState> uavs, const FormationSpec& spec) {
    if (uavs.size() < 2 || static_cast<int>(uavs.size()) != spec.n) {
        throw std::invalid_argument("avg_formation_error needs exactly n >= 2 UAV states");
    }
    const UavState& leader = uavs[spec.leader - 1];
    double total = 0.0;
    for (const auto& uav : uavs) {
        if (uav.id == spec.leader) continue;
        const Vec2 slot = desired_position(leader.position, leader.heading, uav.id, spec);
        total += distance(uav.position, slot);
    }
    return total / static_cast<double>(spec.n - 1);
}

PairwiseStats pairwise_stats(std::span<const UavState> uavs) {
    if (uavs.size() < 2) {
        throw std::invalid_argument("pairwise_stats needs at least two UAVs");
    }
    PairwiseStats stats;
    stats.min = std::numeric_limits<double>::infinity();
    stats.distances.reserve(uavs.size() * (uavs.size() - 1) / 2);
    for (std::size_t i = 0; i < uavs.size(); ++i) {
        for (std::size_t j = i + 1; j < uavs.size(); ++j) {
            const double r = distance(uavs[i].position, uavs[j].position);
            stats.distances.push_back(r);
            stats.min = std::min(stats.min, r);
        }
    }
    return stats;
}

double avg_consecutive_distance(std::span<const UavState> uavs) {
    if (uavs.size() < 2) {
        throw std::invalid_argument("avg_consecutive_distance needs at least two UAVs");
    }
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < uavs.size(); ++i) {
        total += distance(uavs[i].position, uavs[i + 1].position);
    }
    return total / static_cast<double>(uavs.size() - 1);
}

int reconfig_activation_count(std::span<const BehaviorBreakdown> breakdowns, double activation_threshold) {
    return static_cast<int>(std::count_if(breakdowns.begin(), breakdowns.end(), [&](const BehaviorBreakdown& b) {
        return norm(b.u_r) > activation_threshold;
    }));
}

MetricsSample measure(int step, double time, std::span<const UavState> uavs,
                      std::span<const BehaviorBreakdown> breakdowns, const FormationSpec& spec,
                      double activation_threshold) {
    std::vector<double> headings;
    headings.reserve(uavs.size());
    for (const auto& u : uavs) headings.push_back(u.heading);

    MetricsSample s;
    s.step = step;
    s.time = time;
    s.phi = order_metric(headings);
    s.avg_error = avg_formation_error(uavs, spec);
    s.min_pairwise = pairwise_stats(uavs).min;
    s.avg_consecutive = avg_consecutive_distance(uavs);
    s.n_reconfig_active = reconfig_activation_count(breakdowns, activation_threshold);
    return s;
}

RunSummary summarize(const MetricsSeries& series, Termination termination) {
    if (series.empty()) {
        throw std::invalid_argument("cannot summarize an empty metrics series");
    }
    RunSummary out;
    out.min_pairwise_overall = std::numeric_limits<double>::infinity();
    for (const auto& s : series) {
        out.avg_error_mean += s.avg_error;
        out.avg_consecutive_mean += s.avg_consecutive;
        out.min_pairwise_overall = std::min(out.min_pairwise_overall, s.min_pairwise);
    }
    const auto count = static_cast<double>(series.size());
    out.avg_error_mean /= count;
    out.avg_consecutive_mean /= count;
    out.termination = termination;
    out.steps_used = series.back().step;
    return out;
}

}  // namespace veeswarm
