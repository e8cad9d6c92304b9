#pragma once

#include <cmath>
#include <variant>
#include <vector>

namespace veeswarm {

/// Below this length a vector is treated as zero and has no direction.
inline constexpr double kEpsZero = 1e-9;

/// 2D vector in meters (positions) or meters per second (velocities).
struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    constexpr Vec2& operator+=(Vec2 o) {
        x += o.x;
        y += o.y;
        return *this;
    }
    constexpr Vec2& operator-=(Vec2 o) {
        x -= o.x;
        y -= o.y;
        return *this;
    }
    constexpr Vec2& operator*=(double s) {
        x *= s;
        y *= s;
        return *this;
    }

    friend constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
    friend constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
    friend constexpr Vec2 operator-(Vec2 a) { return {-a.x, -a.y}; }
    friend constexpr Vec2 operator*(Vec2 a, double s) { return {a.x * s, a.y * s}; }
    friend constexpr Vec2 operator*(double s, Vec2 a) { return {a.x * s, a.y * s}; }
    friend constexpr bool operator==(Vec2, Vec2) = default;
};

constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }

inline double norm(Vec2 v) { return std::hypot(v.x, v.y); }
inline double distance(Vec2 a, Vec2 b) { return norm(a - b); }
inline bool is_finite(Vec2 v) { return std::isfinite(v.x) && std::isfinite(v.y); }

/// Rotates v counter-clockwise by theta radians about the origin.
inline Vec2 rotated(Vec2 v, double theta) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    return {c * v.x - s * v.y, s * v.x + c * v.y};
}

struct UnitResult {
    Vec2 direction;
    bool degenerate = false;
};

/// Unit vector along v. For |v| < kEpsZero returns the zero vector with
/// `degenerate` set.
UnitResult unit(Vec2 v);

struct Circle {
    Vec2 center;
    double radius = 0.0;

    friend bool operator==(const Circle&, const Circle&) = default;
};

/// Convex polygon, vertices in counter-clockwise order.
struct ConvexPolygon {
    std::vector<Vec2> vertices;

    friend bool operator==(const ConvexPolygon&, const ConvexPolygon&) = default;
};

using Obstacle = std::variant<Circle, ConvexPolygon>;

/// Throws std::invalid_argument unless the obstacle satisfies its shape
/// invariants (positive radius; polygon with >= 3 vertices, strictly convex,
/// counter-clockwise, positive area, finite coordinates).
void validate_obstacle(const Obstacle& obstacle);

Obstacle make_circle(Vec2 center, double radius);
Obstacle make_polygon(std::vector<Vec2> vertices);
/// Axis-aligned rectangle as a counter-clockwise polygon starting at (min_x, min_y).
Obstacle make_rect(double min_x, double min_y, double max_x, double max_y);

/// Nearest point on the obstacle boundary to p. Also defined for p inside.
/// A circle queried at its exact center answers center + (radius, 0).
Vec2 closest_boundary_point(const Obstacle& obstacle, Vec2 p);

/// Distance from p to the obstacle; 0 on the boundary and for interior points.
double obstacle_distance(const Obstacle& obstacle, Vec2 p);

/// True when p lies strictly inside the obstacle (boundary excluded).
bool strictly_inside(const Obstacle& obstacle, Vec2 p);

/// Rigid motion: rotate by theta about the origin, then translate.
Obstacle transformed(const Obstacle& obstacle, double theta, Vec2 shift);

}  // namespace veeswarm
