#include "veeswarm/formation.hpp"

#include <cstdlib>
#include <numbers>
#include <stdexcept>
#include <string>

namespace veeswarm {

FormationSpec FormationSpec::make(int n, double d, double alpha) {
    FormationSpec spec{n, d, alpha, leader_index(n)};
    spec.validate();
    return spec;
}

void FormationSpec::validate() const {
    if (n < 2) {
        throw std::invalid_argument("formation.n must be >= 2, got " + std::to_string(n));
    }
    if (!(d > 0.0) || !std::isfinite(d)) {
        throw std::invalid_argument("formation.d must be positive");
    }
    if (!(alpha > std::numbers::pi / 2.0 && alpha < std::numbers::pi)) {
        throw std::invalid_argument("formation.alpha must lie in (pi/2, pi), got " + std::to_string(alpha));
    }
    if (leader < 1 || leader > n) {
        throw std::invalid_argument("formation leader index must be in [1, n]");
    }
}

int leader_index(int n) {
    if (n < 2) {
        throw std::invalid_argument("leader_index requires n >= 2, got " + std::to_string(n));
    }
    return (n + 1) / 2;
}

DesiredOffset desired_offset(int i, const FormationSpec& spec, double leader_heading) {
    if (i < 1 || i > spec.n) {
        throw std::out_of_range("UAV index " + std::to_string(i) + " outside [1, n]");
    }
    if (i == spec.leader) {
        throw std::invalid_argument("the leader has no desired offset");
    }
    const double dist = spec.d * std::abs(spec.leader - i);
    const double angle = i < spec.leader ? leader_heading + spec.alpha : leader_heading - spec.alpha;
    return {dist, angle};
}

Vec2 desired_position(Vec2 leader_position, double leader_heading, int i, const FormationSpec& spec) {
    const auto [dist, angle] = desired_offset(i, spec, leader_heading);
    return leader_position + dist * Vec2{std::cos(angle), std::sin(angle)};
}

Wing wing_of(int i, int leader) {
    if (i == leader) return Wing::Leader;
    return i < leader ? Wing::Left : Wing::Right;
}

bool same_wing(int i, int j, int leader) {
    return (i <= leader && j <= leader) || (i >= leader && j >= leader);
}

double desired_pair_distance(int i, int j, const FormationSpec& spec) {
    if (i == j) {
        throw std::invalid_argument("desired_pair_distance needs two distinct UAVs");
    }
    if (!same_wing(i, j, spec.leader)) {
        throw std::invalid_argument("UAVs " + std::to_string(i) + " and " + std::to_string(j) +
                                    " are on opposite wings");
    }
    return spec.d * std::abs(i - j);
}

}  // namespace veeswarm
