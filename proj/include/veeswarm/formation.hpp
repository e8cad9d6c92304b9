#pragma once

#include <numbers>

#include "veeswarm/geometry.hpp"

namespace veeswarm {

/// V-shape blueprint. UAV indices are 1-based, R_1 .. R_n; the leader sits
/// at the apex and the wings trail at +/- alpha from the leader heading.
struct FormationSpec {
    int n = 5;
    double d = 0.8;                 ///< consecutive spacing along a wing [m]
    double alpha = 0.75 * std::numbers::pi;  ///< wing bearing from heading [rad], in (pi/2, pi)
    int leader = 3;

    /// Builds a spec with the default leader ceil(n/2) and validates it.
    static FormationSpec make(int n, double d, double alpha);

    /// Throws std::invalid_argument on n < 2, d <= 0, alpha outside
    /// (pi/2, pi), or leader outside [1, n].
    void validate() const;

    friend bool operator==(const FormationSpec&, const FormationSpec&) = default;
};

/// Kinematic state of one UAV. `heading` follows atan2 of the velocity and
/// keeps its last value while the UAV is (numerically) at rest.
struct UavState {
    int id = 1;
    Vec2 position;
    Vec2 velocity;
    double heading = 0.0;

    friend bool operator==(const UavState&, const UavState&) = default;
};

/// ceil(n/2); throws for n < 2.
int leader_index(int n);

struct DesiredOffset {
    double distance;  ///< d_i = d |l - i|
    double angle;     ///< absolute bearing from the leader
};

DesiredOffset desired_offset(int i, const FormationSpec& spec, double leader_heading);

/// Slot of follower i given the current leader position and heading.
Vec2 desired_position(Vec2 leader_position, double leader_heading, int i, const FormationSpec& spec);

enum class Wing { Left, Right, Leader };

Wing wing_of(int i, int leader);

/// Leader-inclusive: the apex belongs to both wings.
bool same_wing(int i, int j, int leader);

/// d |i - j| for a same-wing pair; throws for i == j or cross-wing pairs.
double desired_pair_distance(int i, int j, const FormationSpec& spec);

}  // namespace veeswarm
