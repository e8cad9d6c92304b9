#include <cmath>
#include <numbers>
#include <vector>

#include <doctest.h>

#include "support.hpp"
#include "veeswarm/behaviors.hpp"
#include "veeswarm/simulator.hpp"

using namespace veeswarm;
using testing::check_vec;

namespace {

constexpr double kPi = std::numbers::pi;
const SensingRanges kRanges{0.3, 2.0};

double collision_magnitude(double r, double k_c, double beta_c, double cap) {
    return norm(collision_pair(1, {r, 0}, 2, {0, 0}, kRanges, k_c, beta_c, cap).value);
}

// Random world with UAVs kept clear of the obstacles.
WorldState random_world(testing::Rng& rng, const FormationSpec& spec) {
    WorldState w;
    w.obstacles = {make_circle({6.0, 1.0}, 1.0), make_polygon({{-7, -3}, {-4, -4}, {-3, -1}, {-6, 0}})};
    w.goal = rng.point(10.0);
    for (int id = 1; id <= spec.n; ++id) {
        Vec2 p;
        do {
            p = rng.point(5.0);
        } while (obstacle_distance(w.obstacles[0], p) < 0.2 || obstacle_distance(w.obstacles[1], p) < 0.2);
        w.uavs.push_back({id, p, {}, rng.uniform(-kPi, kPi)});
    }
    w.breakdowns.assign(w.uavs.size(), BehaviorBreakdown{});
    return w;
}

WorldState moved_world(const WorldState& w, double theta, Vec2 shift) {
    WorldState m = w;
    for (auto& u : m.uavs) {
        u.position = rotated(u.position, theta) + shift;
        u.heading = std::remainder(u.heading + theta, 2.0 * kPi);
    }
    for (auto& o : m.obstacles) o = transformed(o, theta, shift);
    m.goal = rotated(w.goal, theta) + shift;
    return m;
}

void check_breakdown_rotated(const BehaviorBreakdown& base, const BehaviorBreakdown& moved, double theta) {
    const Vec2 pairs[][2] = {{base.u_f, moved.u_f}, {base.u_g, moved.u_g}, {base.u_o, moved.u_o},
                             {base.u_c, moved.u_c}, {base.u_r, moved.u_r}, {base.u_total, moved.u_total}};
    for (const auto& p : pairs) {
        CHECK(distance(rotated(p[0], theta), p[1]) < 1e-9);
    }
}

}  // namespace

TEST_CASE("formation_behavior examples") {
    check_vec(formation_behavior({1, 0}, {0, 0}, {0.5, 0}, 1.0), {-0.5, 0});
    check_vec(formation_behavior({2, 3}, {2, 3}, {0.3, 0.1}, 1.0), {0.3, 0.1});
    check_vec(formation_behavior({0, 2}, {0, 0}, {0, 0}, 2.0), {0, -4});
}

TEST_CASE("goal_behavior examples") {
    check_vec(goal_behavior({3, -1}, {3, -1}, 0.5), {0, 0});
    check_vec(goal_behavior({0, 0}, {4, 0}, 0.5), {2, 0});
    check_vec(goal_behavior({1, 1}, {0, 0}, 1.0), {-1, -1});
}

TEST_CASE("obstacle behavior examples") {
    const SensedObstacle at_range{{0, 0}, 2.0};
    check_vec(obstacle_term({2, 0}, at_range, kRanges, 3.0).value, {0, 0});

    const SensedObstacle near{{0, 0}, 1.0};
    check_vec(obstacle_term({1, 0}, near, kRanges, 1.0).value, {0.75, 0});

    // mirror pair above and below: y components cancel exactly
    const std::vector<SensedObstacle> mirror{{{1, 0.5}, std::hypot(1.0, 0.5)}, {{1, -0.5}, std::hypot(1.0, 0.5)}};
    const auto sum = obstacle_behavior({0, 0}, std::span<const SensedObstacle>(mirror), kRanges, 1.0).value;
    CHECK(sum.y == 0.0);
    CHECK(sum.x < 0.0);

    // full pipeline: circle whose boundary is 1 m away
    const std::vector<Obstacle> world{make_circle({-1, 0}, 1.0)};
    check_vec(obstacle_behavior({1, 0}, std::span<const Obstacle>(world), kRanges, 1.0).value, {0.75, 0});

    // a UAV sitting on the boundary has no direction
    const auto touching = obstacle_term({1, 0}, SensedObstacle{{1, 0}, 0.0}, kRanges, 1.0);
    CHECK(touching.degenerate);
    check_vec(touching.value, {0, 0});
}

TEST_CASE("sense_obstacles filters by range") {
    const std::vector<Obstacle> none{make_circle({10, 0}, 1.0)};
    CHECK(sense_obstacles({0, 0}, none, 2.0).empty());

    const std::vector<Obstacle> one{make_circle({2, 0}, 1.0)};
    const auto s = sense_obstacles({0, 0}, one, 2.0);
    REQUIRE(s.size() == 1);
    CHECK(std::abs(s[0].distance - 1.0) < testing::kExample);
    check_vec(s[0].closest_point, {1, 0});

    const std::vector<Obstacle> two{make_circle({2.5, 0}, 1.0), make_circle({0, -3.5}, 1.0)};
    const auto t = sense_obstacles({0, 0}, two, 2.0);
    REQUIRE(t.size() == 1);
    CHECK(std::abs(t[0].distance - 1.5) < testing::kExample);
}

TEST_CASE("collision_pair examples") {
    CHECK(norm(collision_pair(1, {2.0, 0}, 5, {0, 0}, kRanges, 1.0, 1.0, 20.0).value) == 0.0);
    CHECK(norm(collision_pair(1, {3.0, 1}, 5, {0, 0}, kRanges, 1.0, 1.0, 20.0).value) == 0.0);

    const auto c = collision_pair(1, {1.3, 0}, 5, {0, 0}, kRanges, 1.0, 1.0, 20.0);
    check_vec(c.value, {std::exp(-1.0), 0});
    CHECK(std::abs(c.value.x - 0.36788) < 1e-5);

    const auto clamped = collision_pair(1, {0.3 + 1e-6, 0}, 5, {0, 0}, kRanges, 1.0, 1.0, 100.0);
    check_vec(clamped.value, {100, 0});

    // inside r_a: full cap, never infinite or negative
    check_vec(collision_pair(1, {0, 0.1}, 5, {0, 0}, kRanges, 1.0, 1.0, 100.0).value, {0, 100});
    check_vec(collision_pair(1, {0.3, 0}, 5, {0, 0}, kRanges, 1.0, 1.0, 100.0).value, {100, 0});

    // coincident: deterministic push, opposite for the two members
    const auto a = collision_pair(1, {2, 2}, 5, {2, 2}, kRanges, 1.0, 1.0, 20.0);
    const auto b = collision_pair(5, {2, 2}, 1, {2, 2}, kRanges, 1.0, 1.0, 20.0);
    CHECK(a.degenerate);
    CHECK(b.degenerate);
    check_vec(a.value, {20, 0});
    check_vec(b.value, {-20, 0});
}

TEST_CASE("collision_behavior only counts cross-wing neighbours") {
    const std::vector<Neighbor> others{{1, {0.5, 0}}, {2, {0, 0.5}}, {4, {-0.5, 0}}, {5, {0, -0.5}}};
    // UAV 2 is on the left wing: only 4 and 5 count
    const auto got = collision_behavior(2, {0, 0}, others, 3, kRanges, 1.0, 1.0, 20.0).value;
    const Vec2 want = collision_pair(2, {0, 0}, 4, {-0.5, 0}, kRanges, 1.0, 1.0, 20.0).value +
                      collision_pair(2, {0, 0}, 5, {0, -0.5}, kRanges, 1.0, 1.0, 20.0).value;
    check_vec(got, want, 1e-12);
    // the leader is on both wings, so it never receives collision terms
    check_vec(collision_behavior(3, {0, 0}, others, 3, kRanges, 1.0, 1.0, 20.0).value, {0, 0});
}

TEST_CASE("reconfiguration_pair examples") {
    check_vec(reconfiguration_pair(1, {0.8, 0}, 2, {0, 0}, 0.8, kRanges, 1.0, 1.0, ReconfigMode::Signed, 20).value,
              {0, 0});

    const auto repel =
        reconfiguration_pair(1, {0.6, 0}, 2, {0, 0}, 0.8, kRanges, 1.0, 1.0, ReconfigMode::Signed, 20).value;
    check_vec(repel, {2.22222, 0}, 1e-5);
    check_vec(repel, {0.2 / 0.09, 0});

    const auto attract =
        reconfiguration_pair(1, {1.0, 0}, 2, {0, 0}, 0.8, kRanges, 1.0, 1.0, ReconfigMode::Signed, 20).value;
    check_vec(attract, {-0.40816, 0}, 1e-5);
    check_vec(attract, {-0.2 / 0.49, 0});

    // Literal mode always pushes apart
    const auto literal =
        reconfiguration_pair(1, {1.0, 0}, 2, {0, 0}, 0.8, kRanges, 1.0, 1.0, ReconfigMode::Literal, 20).value;
    check_vec(literal, {0.2 / 0.49, 0});

    // beyond sensing: nothing; at the alert radius: cap, repulsive in both modes
    check_vec(reconfiguration_pair(1, {2.5, 0}, 2, {0, 0}, 0.8, kRanges, 1.0, 1.0, ReconfigMode::Signed, 20).value,
              {0, 0});
    check_vec(reconfiguration_pair(1, {0.3, 0}, 2, {0, 0}, 0.8, kRanges, 1.0, 1.0, ReconfigMode::Signed, 20).value,
              {20, 0});
    check_vec(reconfiguration_pair(1, {0.31, 0}, 2, {0, 0}, 0.8, kRanges, 1.0, 1.0, ReconfigMode::Signed, 20).value,
              {20, 0});
}

TEST_CASE("reconfiguration_behavior uses d |i - j| over leader-inclusive wings") {
    const auto spec = FormationSpec::make(5, 0.8, 3 * kPi / 4);
    const std::vector<Neighbor> others{{1, {1.0, 0}}, {3, {0, 1.0}}, {4, {-1.0, 0}}};
    const auto got =
        reconfiguration_behavior(2, {0, 0}, others, spec, kRanges, 1.0, 1.5, ReconfigMode::Signed, 20).value;
    const Vec2 want =
        reconfiguration_pair(2, {0, 0}, 1, {1.0, 0}, 0.8, kRanges, 1.0, 1.5, ReconfigMode::Signed, 20).value +
        reconfiguration_pair(2, {0, 0}, 3, {0, 1.0}, 0.8, kRanges, 1.0, 1.5, ReconfigMode::Signed, 20).value;
    check_vec(got, want, 1e-12);
}

TEST_CASE("combine_control examples") {
    auto b = combine_control(Role::Leader, {}, {1, 0}, {}, {}, {}, 2.0);
    check_vec(b.u_total, {1, 0});

    b = combine_control(Role::Follower, {3, 4}, {}, {}, {}, {}, 2.0);
    check_vec(b.u_total, {1.2, 1.6});
    b = combine_control(Role::Leader, {}, {1, 1}, {1, 1}, {1, 1}, {0, 1}, 2.0);
    check_vec(b.u_total, {1.2, 1.6});

    b = combine_control(Role::Follower, {}, {}, {}, {}, {}, 2.0);
    check_vec(b.u_total, {0, 0});
    CHECK_FALSE(b.reconfig_active);

    // the term that does not belong to the role is dropped
    b = combine_control(Role::Follower, {0.5, 0}, {7, 7}, {}, {}, {}, 2.0);
    check_vec(b.u_g, {0, 0});
    check_vec(b.u_total, {0.5, 0});
    b = combine_control(Role::Leader, {7, 7}, {0.5, 0}, {}, {}, {}, 2.0);
    check_vec(b.u_f, {0, 0});

    CHECK(combine_control(Role::Follower, {}, {}, {}, {}, {0.0011, 0}, 2.0).reconfig_active);
    CHECK_FALSE(combine_control(Role::Follower, {}, {}, {}, {}, {1e-4, 0}, 2.0).reconfig_active);
}

TEST_CASE("property: saturation bounds every combined control") {
    testing::Rng rng(21);
    for (int k = 0; k < 1000; ++k) {
        const double v_max = rng.uniform(0.1, 5.0);
        const Role role = k % 2 == 0 ? Role::Leader : Role::Follower;
        const auto b = combine_control(role, rng.point(50), rng.point(50), rng.point(50), rng.point(50),
                                       rng.point(50), v_max);
        CHECK(norm(b.u_total) <= v_max + 1e-9);
        // direction kept
        const Vec2 raw = (role == Role::Leader ? b.u_g : b.u_f) + b.u_r + b.u_c + b.u_o;
        CHECK(std::abs(cross(raw, b.u_total)) <= 1e-9 * norm(raw) * (1.0 + norm(b.u_total)));
        CHECK(dot(raw, b.u_total) >= 0.0);
    }
}

TEST_CASE("property: obstacle term vanishes continuously at the sensing edge") {
    for (double k_o : {0.1, 1.0, 10.0}) {
        const SensedObstacle s{{0, 0}, 2.0 - 1e-6};
        CHECK(norm(obstacle_term({2.0 - 1e-6, 0}, s, kRanges, k_o).value) < 1e-5 * k_o);
    }
}

TEST_CASE("property: collision magnitude strictly decreases with distance") {
    testing::Rng rng(22);
    for (int k = 0; k < 1000; ++k) {
        const double k_c = rng.uniform(0.1, 5.0);
        const double beta_c = rng.uniform(0.1, 25.0);
        double a = rng.uniform(0.3, 2.0);
        double b = rng.uniform(0.3, 2.0);
        if (a > b) std::swap(a, b);
        if (b - a < 1e-6 || a <= 0.3) continue;
        const double cap = 1e300;  // unclamped branch
        const double ma = collision_magnitude(a, k_c, beta_c, cap);
        const double mb = collision_magnitude(b, k_c, beta_c, cap);
        if (mb == 0.0) continue;  // underflow for very large beta_c
        CHECK(ma > mb);
    }
}

TEST_CASE("property: signed reconfiguration changes sign exactly at the desired distance") {
    testing::Rng rng(23);
    for (int k = 0; k < 1000; ++k) {
        const double d_ij = rng.uniform(0.5, 1.8);
        const double theta = rng.uniform(-kPi, kPi);
        const Vec2 dir{std::cos(theta), std::sin(theta)};
        const Vec2 pj = rng.point(5);
        const double k_r = rng.uniform(0.1, 10.0);
        const double beta_r = rng.uniform(0.5, 3.0);
        auto radial = [&](double r) {
            const auto c = reconfiguration_pair(1, pj + dir * r, 2, pj, d_ij, kRanges, k_r, beta_r,
                                                ReconfigMode::Signed, 20.0);
            return dot(c.value, dir);
        };
        CHECK(radial(d_ij - 1e-3) > 0.0);
        CHECK(radial(d_ij + 1e-3) < 0.0);
        // At r = d_ij the only residue is the rounding in the constructed separation.
        const double r_act = distance(pj + dir * d_ij, pj);
        const double bound = k_r * std::pow(std::abs(r_act - d_ij), beta_r) / std::pow(r_act - kRanges.r_a, 2);
        CHECK(std::abs(radial(d_ij)) <= bound * (1 + 1e-9) + 1e-300);
    }
}

TEST_CASE("property: pair terms are antisymmetric") {
    testing::Rng rng(24);
    for (int k = 0; k < 1000; ++k) {
        const Vec2 pi = rng.point(1.5);
        const Vec2 pj = (k % 50 == 0) ? pi : rng.point(1.5);
        const int i = rng.integer(1, 9);
        int j = rng.integer(1, 9);
        if (j == i) j = i % 9 + 1;
        const double cap = rng.uniform(1.0, 40.0);
        const auto cij = collision_pair(i, pi, j, pj, kRanges, 0.5, 2.0, cap).value;
        const auto cji = collision_pair(j, pj, i, pi, kRanges, 0.5, 2.0, cap).value;
        CHECK(cij.x == -cji.x);
        CHECK(cij.y == -cji.y);
        for (auto mode : {ReconfigMode::Signed, ReconfigMode::Literal}) {
            const auto rij = reconfiguration_pair(i, pi, j, pj, 0.8, kRanges, 1.0, 1.5, mode, cap).value;
            const auto rji = reconfiguration_pair(j, pj, i, pi, 0.8, kRanges, 1.0, 1.5, mode, cap).value;
            CHECK(rij.x == -rji.x);
            CHECK(rij.y == -rji.y);
        }
    }
}

TEST_CASE("property: behaviour outputs rotate with the scene and ignore translation") {
    testing::Rng rng(25);
    for (int k = 0; k < 1000; ++k) {
        const int n = rng.integer(2, 7);
        const auto spec = FormationSpec::make(n, rng.uniform(0.4, 1.2), rng.uniform(kPi / 2 + 0.05, kPi - 0.05));
        SimConfig cfg;
        cfg.reconfig_mode = k % 3 == 0 ? ReconfigMode::Literal : ReconfigMode::Signed;
        Gains gains;
        gains.beta_c = 2.0;  // keep the collision term visible at the sampled spacings
        const WorldState base = random_world(rng, spec);
        const double theta = rng.uniform(-kPi, kPi);
        const Vec2 shift = rng.point(30.0);

        const WorldState a = tick(base, spec, gains, cfg);
        const WorldState rot = tick(moved_world(base, theta, {}), spec, gains, cfg);
        const WorldState tr = tick(moved_world(base, 0.0, shift), spec, gains, cfg);
        for (int i = 0; i < n; ++i) {
            check_breakdown_rotated(a.breakdowns[i], rot.breakdowns[i], theta);
            check_breakdown_rotated(a.breakdowns[i], tr.breakdowns[i], 0.0);
            CHECK(distance(rotated(a.uavs[i].position, theta), rot.uavs[i].position) < 1e-9);
        }
    }
}

TEST_CASE("property: only the leader gets a goal term and only followers get a formation term") {
    testing::Rng rng(26);
    for (int k = 0; k < 1000; ++k) {
        const auto spec = FormationSpec::make(rng.integer(2, 9), 0.8, 3 * kPi / 4);
        const WorldState next = tick(random_world(rng, spec), spec, Gains{}, SimConfig{});
        for (int i = 1; i <= spec.n; ++i) {
            const auto& b = next.breakdowns[i - 1];
            if (i == spec.leader) {
                CHECK(b.u_f == Vec2{});
            } else {
                CHECK(b.u_g == Vec2{});
            }
        }
    }
}
