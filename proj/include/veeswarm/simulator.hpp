#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "veeswarm/behaviors.hpp"
#include "veeswarm/formation.hpp"
#include "veeswarm/geometry.hpp"
#include "veeswarm/metrics.hpp"

namespace veeswarm {

struct Scenario;

struct SimConfig {
    double dt = 0.02;            ///< control period [s]
    int max_steps = 5000;
    double v_max = 2.0;          ///< speed limit [m/s]
    SensingRanges ranges;
    double goal_tolerance = 0.1; ///< leader-to-goal distance that ends a run [m]
    std::uint64_t seed = 0;
    double spawn_radius = 1.0;   ///< [m]
    ReconfigMode reconfig_mode = ReconfigMode::Signed;
    /// 0: followers use this tick's leader control; 1: the previous tick's.
    int leader_delay = 0;
    /// Pairwise collision/reconfiguration terms are clamped to clamp_factor * v_max.
    double clamp_factor = 10.0;
    double activation_threshold = kDefaultActivationThreshold;

    double max_magnitude() const { return clamp_factor * v_max; }
    void validate() const;

    friend bool operator==(const SimConfig&, const SimConfig&) = default;
};

struct WorldState {
    int step = 0;
    double time = 0.0;
    std::vector<UavState> uavs;  ///< indexed by id - 1
    std::vector<Obstacle> obstacles;
    Vec2 goal;
    std::vector<BehaviorBreakdown> breakdowns;  ///< controls of the last tick, per UAV
};

/// Uniform i.i.d. draws in the disk of `spawn_radius` about `start`, from a
/// std::mt19937_64 seeded with `seed`. Draws closer than r_a to an already
/// placed UAV are rejected; throws std::runtime_error when one UAV needs more
/// than 1000 draws.
std::vector<UavState> spawn(int n, Vec2 start, double spawn_radius, double r_a, std::uint64_t seed);

/// Advances the world by one control period. The leader's control is
/// evaluated first; followers then track the slot defined by the leader pose
/// at the start of the tick plus the leader control.
WorldState tick(const WorldState& world, const FormationSpec& spec, const Gains& gains, const SimConfig& cfg);

/// First UAV id found strictly inside an obstacle, if any.
std::optional<int> find_penetration(const WorldState& world);

struct TrajectoryRow {
    int step = 0;
    double time = 0.0;
    UavState uav;
    BehaviorBreakdown breakdown;  ///< the control that moved the UAV into this state

    friend bool operator==(const TrajectoryRow&, const TrajectoryRow&) = default;
};

/// Ordered by (step, uav id), one row per UAV per step.
using TrajectoryLog = std::vector<TrajectoryRow>;

struct RunResult {
    TrajectoryLog trajectory;
    MetricsSeries metrics;
    RunSummary summary;
};

WorldState initial_world(const Scenario& scenario);

/// Ticks until the leader is within goal_tolerance of the goal, a UAV
/// penetrates an obstacle, or max_steps ticks have run. At least one tick is
/// always taken; steps 1 .. steps_used are logged.
RunResult run(const Scenario& scenario);

}  // namespace veeswarm
