#pragma once

#include <span>
#include <vector>

#include "veeswarm/formation.hpp"
#include "veeswarm/geometry.hpp"

namespace veeswarm {

/// Behavior coefficients. All must be strictly positive.
struct Gains {
    double k_f = 1.0;     ///< formation
    double k_g = 0.05;    ///< goal tracking
    double k_o = 0.3;     ///< obstacle repulsion
    double k_c = 2.0;     ///< cross-wing collision avoidance
    double k_r = 6.0;     ///< same-wing reconfiguration
    double beta_c = 20.0; ///< collision decay rate [1/m]
    double beta_r = 1.5;  ///< reconfiguration smoothness exponent

    void validate() const;
    friend bool operator==(const Gains&, const Gains&) = default;
};

struct SensingRanges {
    double r_a = 0.3;  ///< alert radius [m]
    double r_s = 2.0;  ///< sensing radius [m]

    /// Requires 0 < r_a < r_s.
    void validate() const;
    friend bool operator==(const SensingRanges&, const SensingRanges&) = default;
};

/// Direction law of the same-wing reconfiguration term.
/// Literal: always along p_i - p_j. Signed: repels below the desired pair
/// distance and attracts above it.
enum class ReconfigMode { Literal, Signed };

enum class Role { Leader, Follower };

inline constexpr double kDefaultActivationThreshold = 1e-3;

/// Per-UAV behavior outputs of one control tick [m/s].
struct BehaviorBreakdown {
    Vec2 u_f;
    Vec2 u_g;
    Vec2 u_o;
    Vec2 u_c;
    Vec2 u_r;
    Vec2 u_total;
    bool reconfig_active = false;

    friend bool operator==(const BehaviorBreakdown&, const BehaviorBreakdown&) = default;
};

/// A behavior term plus whether a zero-length direction was hit while
/// computing it.
struct Contribution {
    Vec2 value;
    bool degenerate = false;
};

struct Neighbor {
    int id;
    Vec2 position;
};

struct SensedObstacle {
    Vec2 closest_point;
    double distance;
};

Vec2 formation_behavior(Vec2 p_i, Vec2 p_desired, Vec2 u_leader, double k_f);

Vec2 goal_behavior(Vec2 p_i, Vec2 p_goal, double k_g);

/// One entry per obstacle closer than r_s, in obstacle order.
std::vector<SensedObstacle> sense_obstacles(Vec2 p_i, std::span<const Obstacle> obstacles, double r_s);

/// Repulsion of magnitude k_o (1/d^2 - 1/r_s^2) pointing away from the
/// sensed boundary point. Zero at and beyond r_s.
Contribution obstacle_term(Vec2 p_i, const SensedObstacle& sensed, const SensingRanges& ranges, double k_o);

Contribution obstacle_behavior(Vec2 p_i, std::span<const SensedObstacle> sensed, const SensingRanges& ranges,
                               double k_o);

Contribution obstacle_behavior(Vec2 p_i, std::span<const Obstacle> obstacles, const SensingRanges& ranges,
                               double k_o);

/// Cross-wing repulsion UAV i receives from UAV j:
/// k_c exp(-beta_c (r - r_a)) / (r - r_a), clamped to max_magnitude, zero
/// for r >= r_s. Coincident UAVs are pushed apart along +/-x by index.
Contribution collision_pair(int i, Vec2 p_i, int j, Vec2 p_j, const SensingRanges& ranges, double k_c,
                            double beta_c, double max_magnitude);

/// Sum of collision_pair over every cross-wing neighbor.
Contribution collision_behavior(int i, Vec2 p_i, std::span<const Neighbor> others, int leader,
                                const SensingRanges& ranges, double k_c, double beta_c, double max_magnitude);

/// Same-wing spacing term UAV i receives from UAV j:
/// k_r |r - d_ij|^beta_r / (r - r_a)^2, clamped to max_magnitude, zero for
/// r >= r_s. At or inside r_a the pair always repels at max_magnitude.
Contribution reconfiguration_pair(int i, Vec2 p_i, int j, Vec2 p_j, double desired_distance,
                                  const SensingRanges& ranges, double k_r, double beta_r, ReconfigMode mode,
                                  double max_magnitude);

/// Sum of reconfiguration_pair over every same-wing neighbor (leader
/// included on both wings); cross-wing entries in `others` are skipped.
Contribution reconfiguration_behavior(int i, Vec2 p_i, std::span<const Neighbor> others, const FormationSpec& spec,
                                      const SensingRanges& ranges, double k_r, double beta_r, ReconfigMode mode,
                                      double max_magnitude);

/// Rescales v to norm v_max when it is longer, keeping its direction.
Vec2 saturate(Vec2 v, double v_max);

/// Sums the role's terms (leader: goal, follower: formation) with the
/// reconfiguration, collision and obstacle terms, then saturates. The term
/// that does not apply to the role is recorded as zero.
BehaviorBreakdown combine_control(Role role, Vec2 u_f, Vec2 u_g, Vec2 u_o, Vec2 u_c, Vec2 u_r, double v_max,
                                  double activation_threshold = kDefaultActivationThreshold);

}  // namespace veeswarm
