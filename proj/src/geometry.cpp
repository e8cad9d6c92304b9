#include "veeswarm/geometry.hpp"

#include <algorithm>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace veeswarm {

UnitResult unit(Vec2 v) {
    const double n = norm(v);
    if (!(n >= kEpsZero)) {
        return {{0.0, 0.0}, true};
    }
    return {{v.x / n, v.y / n}, false};
}

namespace {

void validate_circle(const Circle& c) {
    if (!is_finite(c.center)) {
        throw std::invalid_argument("circle center must be finite");
    }
    if (!(c.radius > 0.0) || !std::isfinite(c.radius)) {
        throw std::invalid_argument("circle radius must be positive, got " + std::to_string(c.radius));
    }
}

void validate_polygon(const ConvexPolygon& poly) {
    const auto& v = poly.vertices;
    if (v.size() < 3) {
        throw std::invalid_argument("polygon needs at least 3 vertices, got " + std::to_string(v.size()));
    }
    for (const auto& p : v) {
        if (!is_finite(p)) {
            throw std::invalid_argument("polygon vertices must be finite");
        }
    }
    double twice_area = 0.0;
    const std::size_t n = v.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 a = v[i];
        const Vec2 b = v[(i + 1) % n];
        const Vec2 c = v[(i + 2) % n];
        twice_area += cross(a, b);
        // Every turn must be strictly left: convex, CCW, and no collinear
        // or repeated vertices.
        if (!(cross(b - a, c - b) > 0.0)) {
            throw std::invalid_argument("polygon must be strictly convex and counter-clockwise (vertex " +
                                        std::to_string((i + 1) % n) + ")");
        }
    }
    if (!(twice_area > 0.0)) {
        throw std::invalid_argument("polygon must have positive area");
    }
    // A star polygon can turn left at every vertex; the winding must be one.
    double winding = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 e0 = v[(i + 1) % n] - v[i];
        const Vec2 e1 = v[(i + 2) % n] - v[(i + 1) % n];
        winding += std::atan2(cross(e0, e1), dot(e0, e1));
    }
    if (std::abs(winding - 2.0 * std::numbers::pi) > 1e-6) {
        throw std::invalid_argument("polygon is self-intersecting");
    }
}

Vec2 closest_on_segment(Vec2 a, Vec2 b, Vec2 p) {
    const Vec2 ab = b - a;
    const double len2 = dot(ab, ab);
    double t = len2 > 0.0 ? dot(p - a, ab) / len2 : 0.0;
    if (t < 0.0) t = 0.0;
    if (t > 1.0) t = 1.0;
    return a + ab * t;
}

struct ClosestVisitor {
    Vec2 p;

    Vec2 operator()(const Circle& c) const {
        const auto [dir, degenerate] = unit(p - c.center);
        if (degenerate) {
            return c.center + Vec2{c.radius, 0.0};
        }
        return c.center + dir * c.radius;
    }

    Vec2 operator()(const ConvexPolygon& poly) const {
        const auto& v = poly.vertices;
        Vec2 best = v.front();
        double best_d2 = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < v.size(); ++i) {
            const Vec2 q = closest_on_segment(v[i], v[(i + 1) % v.size()], p);
            const Vec2 diff = p - q;
            const double d2 = dot(diff, diff);
            if (d2 < best_d2) {
                best_d2 = d2;
                best = q;
            }
        }
        return best;
    }
};

struct InsideVisitor {
    Vec2 p;

    bool operator()(const Circle& c) const { return norm(p - c.center) < c.radius; }

    bool operator()(const ConvexPolygon& poly) const {
        const auto& v = poly.vertices;
        for (std::size_t i = 0; i < v.size(); ++i) {
            const Vec2 a = v[i];
            const Vec2 b = v[(i + 1) % v.size()];
            if (!(cross(b - a, p - a) > 0.0)) {
                return false;
            }
        }
        return true;
    }
};

}  // namespace

void validate_obstacle(const Obstacle& obstacle) {
    std::visit(
        [](const auto& shape) {
            using T = std::decay_t<decltype(shape)>;
            if constexpr (std::is_same_v<T, Circle>) {
                validate_circle(shape);
            } else {
                validate_polygon(shape);
            }
        },
        obstacle);
}

Obstacle make_circle(Vec2 center, double radius) {
    Obstacle o = Circle{center, radius};
    validate_obstacle(o);
    return o;
}

Obstacle make_polygon(std::vector<Vec2> vertices) {
    Obstacle o = ConvexPolygon{std::move(vertices)};
    validate_obstacle(o);
    return o;
}

Obstacle make_rect(double min_x, double min_y, double max_x, double max_y) {
    if (!(max_x > min_x) || !(max_y > min_y)) {
        throw std::invalid_argument("rect requires min < max on both axes");
    }
    return make_polygon({{min_x, min_y}, {max_x, min_y}, {max_x, max_y}, {min_x, max_y}});
}

Vec2 closest_boundary_point(const Obstacle& obstacle, Vec2 p) {
    return std::visit(ClosestVisitor{p}, obstacle);
}

double obstacle_distance(const Obstacle& obstacle, Vec2 p) {
    if (const auto* c = std::get_if<Circle>(&obstacle)) {
        return std::max(0.0, norm(p - c->center) - c->radius);
    }
    if (strictly_inside(obstacle, p)) {
        return 0.0;
    }
    return norm(p - closest_boundary_point(obstacle, p));
}

bool strictly_inside(const Obstacle& obstacle, Vec2 p) {
    return std::visit(InsideVisitor{p}, obstacle);
}

Obstacle transformed(const Obstacle& obstacle, double theta, Vec2 shift) {
    if (const auto* c = std::get_if<Circle>(&obstacle)) {
        return Circle{rotated(c->center, theta) + shift, c->radius};
    }
    ConvexPolygon poly = std::get<ConvexPolygon>(obstacle);
    for (auto& v : poly.vertices) {
        v = rotated(v, theta) + shift;
    }
    return poly;
}

}  // namespace veeswarm
