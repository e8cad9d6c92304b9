#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "veeswarm/behaviors.hpp"
#include "veeswarm/formation.hpp"

namespace veeswarm {

enum class Termination { GoalReached, MaxSteps, ObstaclePenetration };

std::string_view to_string(Termination t);
Termination termination_from_string(std::string_view s);

/// Mean resultant length of the heading unit vectors, in [0, 1].
double order_metric(std::span<const double> headings);

/// Mean distance of every follower to its V slot, measured against the
/// current leader pose. `uavs` is indexed by id - 1.
double avg_formation_error(std::span<const UavState> uavs, const FormationSpec& spec);

struct PairwiseStats {
    double min = 0.0;
    std::vector<double> distances;  ///< (1,2), (1,3), ..., (n-1,n)
};

PairwiseStats pairwise_stats(std::span<const UavState> uavs);

/// Mean of |p_i - p_{i+1}| over i = 1 .. n-1.
double avg_consecutive_distance(std::span<const UavState> uavs);

int reconfig_activation_count(std::span<const BehaviorBreakdown> breakdowns,
                              double activation_threshold = kDefaultActivationThreshold);

struct MetricsSample {
    int step = 0;
    double time = 0.0;
    double phi = 0.0;
    double avg_error = 0.0;
    double min_pairwise = 0.0;
    double avg_consecutive = 0.0;
    int n_reconfig_active = 0;

    friend bool operator==(const MetricsSample&, const MetricsSample&) = default;
};

using MetricsSeries = std::vector<MetricsSample>;

MetricsSample measure(int step, double time, std::span<const UavState> uavs,
                      std::span<const BehaviorBreakdown> breakdowns, const FormationSpec& spec,
                      double activation_threshold = kDefaultActivationThreshold);

/// Run-level statistics in the layout of a results table row.
struct RunSummary {
    double avg_error_mean = 0.0;
    double min_pairwise_overall = 0.0;
    double avg_consecutive_mean = 0.0;
    Termination termination = Termination::MaxSteps;
    int steps_used = 0;

    friend bool operator==(const RunSummary&, const RunSummary&) = default;
};

/// Means over every sample (assembly transient included) and the global
/// minimum pairwise distance. Throws std::invalid_argument on an empty series.
RunSummary summarize(const MetricsSeries& series, Termination termination);

}  // namespace veeswarm
