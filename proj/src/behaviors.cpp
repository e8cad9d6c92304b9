#include "veeswarm/behaviors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace veeswarm {

void Gains::validate() const {
    const std::pair<const char*, double> fields[] = {
        {"gains.k_f", k_f}, {"gains.k_g", k_g}, {"gains.k_o", k_o},       {"gains.k_c", k_c},
        {"gains.k_r", k_r}, {"gains.beta_c", beta_c}, {"gains.beta_r", beta_r},
    };
    for (const auto& [name, value] : fields) {
        if (!(value > 0.0) || !std::isfinite(value)) {
            throw std::invalid_argument(std::string(name) + " must be strictly positive");
        }
    }
}

void SensingRanges::validate() const {
    if (!(r_a > 0.0) || !std::isfinite(r_a)) {
        throw std::invalid_argument("sim.r_a must be strictly positive");
    }
    if (!(r_s > r_a) || !std::isfinite(r_s)) {
        throw std::invalid_argument("sim.r_s must exceed sim.r_a");
    }
}

Vec2 formation_behavior(Vec2 p_i, Vec2 p_desired, Vec2 u_leader, double k_f) {
    return -k_f * (p_i - p_desired) + u_leader;
}

Vec2 goal_behavior(Vec2 p_i, Vec2 p_goal, double k_g) { return -k_g * (p_i - p_goal); }

std::vector<SensedObstacle> sense_obstacles(Vec2 p_i, std::span<const Obstacle> obstacles, double r_s) {
    std::vector<SensedObstacle> out;
    for (const auto& obstacle : obstacles) {
        const double dist = obstacle_distance(obstacle, p_i);
        if (dist < r_s) {
            out.push_back({closest_boundary_point(obstacle, p_i), dist});
        }
    }
    return out;
}

Contribution obstacle_term(Vec2 p_i, const SensedObstacle& sensed, const SensingRanges& ranges, double k_o) {
    if (!(sensed.distance < ranges.r_s)) {
        return {};
    }
    const auto [dir, degenerate] = unit(p_i - sensed.closest_point);
    if (degenerate || sensed.distance < kEpsZero) {
        return {{}, true};
    }
    const double magnitude =
        k_o * (1.0 / (sensed.distance * sensed.distance) - 1.0 / (ranges.r_s * ranges.r_s));
    return {dir * magnitude, false};
}

Contribution obstacle_behavior(Vec2 p_i, std::span<const SensedObstacle> sensed, const SensingRanges& ranges,
                               double k_o) {
    Contribution total;
    for (const auto& s : sensed) {
        const auto term = obstacle_term(p_i, s, ranges, k_o);
        total.value += term.value;
        total.degenerate = total.degenerate || term.degenerate;
    }
    return total;
}

Contribution obstacle_behavior(Vec2 p_i, std::span<const Obstacle> obstacles, const SensingRanges& ranges,
                               double k_o) {
    const auto sensed = sense_obstacles(p_i, obstacles, ranges.r_s);
    return obstacle_behavior(p_i, std::span<const SensedObstacle>(sensed), ranges, k_o);
}

namespace {

// Coincident UAVs have no separating direction; the lower index goes +x and
// the higher one -x so the pair term stays antisymmetric.
Contribution coincident_push(int i, int j, double max_magnitude) {
    return {{i < j ? max_magnitude : -max_magnitude, 0.0}, true};
}

}  // namespace

Contribution collision_pair(int i, Vec2 p_i, int j, Vec2 p_j, const SensingRanges& ranges, double k_c,
                            double beta_c, double max_magnitude) {
    const Vec2 diff = p_i - p_j;
    const double r = norm(diff);
    if (!(r < ranges.r_s)) {
        return {};
    }
    const auto [dir, degenerate] = unit(diff);
    if (degenerate) {
        return coincident_push(i, j, max_magnitude);
    }
    double magnitude = max_magnitude;
    const double gap = r - ranges.r_a;
    if (gap > 0.0) {
        magnitude = std::min(k_c * std::exp(-beta_c * gap) / gap, max_magnitude);
    }
    return {dir * magnitude, false};
}

Contribution collision_behavior(int i, Vec2 p_i, std::span<const Neighbor> others, int leader,
                                const SensingRanges& ranges, double k_c, double beta_c, double max_magnitude) {
    Contribution total;
    for (const auto& other : others) {
        if (other.id == i || same_wing(i, other.id, leader)) {
            continue;
        }
        const auto term = collision_pair(i, p_i, other.id, other.position, ranges, k_c, beta_c, max_magnitude);
        total.value += term.value;
        total.degenerate = total.degenerate || term.degenerate;
    }
    return total;
}

Contribution reconfiguration_pair(int i, Vec2 p_i, int j, Vec2 p_j, double desired_distance,
                                  const SensingRanges& ranges, double k_r, double beta_r, ReconfigMode mode,
                                  double max_magnitude) {
    const Vec2 diff = p_i - p_j;
    const double r = norm(diff);
    if (!(r < ranges.r_s)) {
        return {};
    }
    const auto [dir, degenerate] = unit(diff);
    if (degenerate) {
        return coincident_push(i, j, max_magnitude);
    }
    const double gap = r - ranges.r_a;
    if (gap <= kEpsZero) {
        return {dir * max_magnitude, false};
    }
    const double error = desired_distance - r;
    const double magnitude = std::min(k_r * std::pow(std::abs(error), beta_r) / (gap * gap), max_magnitude);
    double sign = 1.0;
    if (mode == ReconfigMode::Signed) {
        sign = error > 0.0 ? 1.0 : (error < 0.0 ? -1.0 : 0.0);
    }
    return {dir * (sign * magnitude), false};
}

Contribution reconfiguration_behavior(int i, Vec2 p_i, std::span<const Neighbor> others, const FormationSpec& spec,
                                      const SensingRanges& ranges, double k_r, double beta_r, ReconfigMode mode,
                                      double max_magnitude) {
    Contribution total;
    for (const auto& other : others) {
        if (other.id == i || !same_wing(i, other.id, spec.leader)) {
            continue;
        }
        const double d_ij = spec.d * std::abs(i - other.id);
        const auto term =
            reconfiguration_pair(i, p_i, other.id, other.position, d_ij, ranges, k_r, beta_r, mode, max_magnitude);
        total.value += term.value;
        total.degenerate = total.degenerate || term.degenerate;
    }
    return total;
}

Vec2 saturate(Vec2 v, double v_max) {
    const double n = norm(v);
    if (n > v_max) {
        return v * (v_max / n);
    }
    return v;
}

BehaviorBreakdown combine_control(Role role, Vec2 u_f, Vec2 u_g, Vec2 u_o, Vec2 u_c, Vec2 u_r, double v_max,
                                  double activation_threshold) {
    BehaviorBreakdown b;
    if (role == Role::Leader) {
        b.u_g = u_g;
    } else {
        b.u_f = u_f;
    }
    b.u_o = u_o;
    b.u_c = u_c;
    b.u_r = u_r;
    const Vec2 primary = role == Role::Leader ? b.u_g : b.u_f;
    b.u_total = saturate(primary + u_r + u_c + u_o, v_max);
    b.reconfig_active = norm(u_r) > activation_threshold;
    return b;
}

}  // namespace veeswarm
