#include "veeswarm/simulator.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

#include "veeswarm/scenario.hpp"

namespace veeswarm {

void SimConfig::validate() const {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("sim.dt must be positive");
    if (max_steps < 1) throw std::invalid_argument("sim.max_steps must be >= 1");
    if (!(v_max > 0.0) || !std::isfinite(v_max)) throw std::invalid_argument("sim.v_max must be positive");
    ranges.validate();
    if (!(goal_tolerance > 0.0)) throw std::invalid_argument("sim.goal_tolerance must be positive");
    if (!(spawn_radius >= 0.0) || !std::isfinite(spawn_radius)) {
        throw std::invalid_argument("sim.spawn_radius must be non-negative");
    }
    if (leader_delay != 0 && leader_delay != 1) throw std::invalid_argument("leader_delay must be 0 or 1");
    if (!(clamp_factor > 0.0)) throw std::invalid_argument("sim.clamp_factor must be positive");
    if (!(activation_threshold >= 0.0)) throw std::invalid_argument("sim.activation_threshold must be >= 0");
}

namespace {

constexpr int kMaxSpawnAttempts = 1000;

// 53 high bits of one mt19937_64 draw, mapped to [0, 1).
double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

std::vector<UavState> spawn(int n, Vec2 start, double spawn_radius, double r_a, std::uint64_t seed) {
    if (n < 2) {
        throw std::invalid_argument("spawn needs n >= 2");
    }
    std::mt19937_64 rng(seed);
    std::vector<UavState> uavs;
    uavs.reserve(n);
    for (int id = 1; id <= n; ++id) {
        bool placed = false;
        for (int attempt = 0; attempt < kMaxSpawnAttempts && !placed; ++attempt) {
            const double radius = spawn_radius * std::sqrt(uniform01(rng));
            const double angle = 2.0 * std::numbers::pi * uniform01(rng);
            const Vec2 p = start + Vec2{radius * std::cos(angle), radius * std::sin(angle)};
            bool clear = true;
            for (const auto& other : uavs) {
                if (distance(p, other.position) < r_a) {
                    clear = false;
                    break;
                }
            }
            if (clear) {
                uavs.push_back({id, p, {}, 0.0});
                placed = true;
            }
        }
        if (!placed) {
            throw std::runtime_error("spawn: could not place UAV " + std::to_string(id) + " after " +
                                     std::to_string(kMaxSpawnAttempts) + " attempts; spawn disk too crowded");
        }
    }
    return uavs;
}

WorldState tick(const WorldState& world, const FormationSpec& spec, const Gains& gains, const SimConfig& cfg) {
    const std::size_t n = world.uavs.size();
    const double m_max = cfg.max_magnitude();

    std::vector<Neighbor> neighbors;
    neighbors.reserve(n);
    for (const auto& u : world.uavs) neighbors.push_back({u.id, u.position});

    // Obstacle, collision and reconfiguration terms depend only on the
    // start-of-tick snapshot.
    struct Shared {
        Vec2 u_o, u_c, u_r;
    };
    std::vector<Shared> shared(n);
    for (std::size_t k = 0; k < n; ++k) {
        const UavState& u = world.uavs[k];
        const auto sensed = sense_obstacles(u.position, world.obstacles, cfg.ranges.r_s);
        shared[k].u_o = obstacle_behavior(u.position, std::span<const SensedObstacle>(sensed), cfg.ranges, gains.k_o).value;
        shared[k].u_c = collision_behavior(u.id, u.position, neighbors, spec.leader, cfg.ranges, gains.k_c,
                                           gains.beta_c, m_max)
                            .value;
        shared[k].u_r = reconfiguration_behavior(u.id, u.position, neighbors, spec, cfg.ranges, gains.k_r,
                                                 gains.beta_r, cfg.reconfig_mode, m_max)
                            .value;
    }

    std::vector<BehaviorBreakdown> breakdowns(n);
    const std::size_t li = static_cast<std::size_t>(spec.leader - 1);
    const UavState& leader = world.uavs.at(li);
    {
        const Vec2 u_g = goal_behavior(leader.position, world.goal, gains.k_g);
        breakdowns[li] = combine_control(Role::Leader, {}, u_g, shared[li].u_o, shared[li].u_c, shared[li].u_r,
                                         cfg.v_max, cfg.activation_threshold);
    }
    Vec2 u_leader = breakdowns[li].u_total;
    if (cfg.leader_delay == 1) {
        u_leader = world.breakdowns.size() == n ? world.breakdowns[li].u_total : Vec2{};
    }
    for (std::size_t k = 0; k < n; ++k) {
        if (k == li) continue;
        const UavState& u = world.uavs[k];
        const Vec2 slot = desired_position(leader.position, leader.heading, u.id, spec);
        const Vec2 u_f = formation_behavior(u.position, slot, u_leader, gains.k_f);
        breakdowns[k] = combine_control(Role::Follower, u_f, {}, shared[k].u_o, shared[k].u_c, shared[k].u_r,
                                        cfg.v_max, cfg.activation_threshold);
    }

    WorldState next;
    next.step = world.step + 1;
    next.time = next.step * cfg.dt;
    next.obstacles = world.obstacles;
    next.goal = world.goal;
    next.uavs = world.uavs;
    for (std::size_t k = 0; k < n; ++k) {
        UavState& u = next.uavs[k];
        const Vec2 v = breakdowns[k].u_total;
        u.position += v * cfg.dt;
        u.velocity = v;
        if (norm(v) > kEpsZero) {
            u.heading = std::atan2(v.y, v.x);
        }
    }
    next.breakdowns = std::move(breakdowns);
    return next;
}

std::optional<int> find_penetration(const WorldState& world) {
    for (const auto& u : world.uavs) {
        for (const auto& o : world.obstacles) {
            if (strictly_inside(o, u.position)) return u.id;
        }
    }
    return std::nullopt;
}

WorldState initial_world(const Scenario& scenario) {
    WorldState world;
    world.uavs = spawn(scenario.formation.n, scenario.start, scenario.sim.spawn_radius, scenario.sim.ranges.r_a,
                       scenario.sim.seed);
    world.obstacles = scenario.obstacles;
    world.goal = scenario.goal;
    world.breakdowns.assign(world.uavs.size(), BehaviorBreakdown{});
    return world;
}

RunResult run(const Scenario& scenario) {
    scenario.validate();
    const FormationSpec& spec = scenario.formation;
    const SimConfig& cfg = scenario.sim;

    RunResult result;
    result.trajectory.reserve(static_cast<std::size_t>(spec.n) * 1024);
    WorldState world = initial_world(scenario);
    if (auto id = find_penetration(world)) {
        throw std::runtime_error("UAV " + std::to_string(*id) + " spawned inside an obstacle");
    }

    Termination termination = Termination::MaxSteps;
    for (int k = 0; k < cfg.max_steps; ++k) {
        world = tick(world, spec, scenario.gains, cfg);
        for (std::size_t i = 0; i < world.uavs.size(); ++i) {
            result.trajectory.push_back({world.step, world.time, world.uavs[i], world.breakdowns[i]});
        }
        result.metrics.push_back(
            measure(world.step, world.time, world.uavs, world.breakdowns, spec, cfg.activation_threshold));

        if (find_penetration(world)) {
            termination = Termination::ObstaclePenetration;
            break;
        }
        if (distance(world.uavs[spec.leader - 1].position, world.goal) < cfg.goal_tolerance) {
            termination = Termination::GoalReached;
            break;
        }
    }
    result.summary = summarize(result.metrics, termination);
    return result;
}

}  // namespace veeswarm
