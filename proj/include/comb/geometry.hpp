#pragma once

#include <algorithm>
#include <cmath>
#include <compare>
#include <numbers>
#include <tuple>
#include <utility>

namespace comb {

struct Point {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Point&, const Point&) = default;
};

/// Integer pixel segment. Canonical form has (x1, y1) <= (x2, y2) lexicographically.
struct Segment {
  int x1 = 0;
  int y1 = 0;
  int x2 = 0;
  int y2 = 0;

  double length() const noexcept { return std::hypot(double(x2 - x1), double(y2 - y1)); }
  /// Undirected orientation in [0, pi); 0 for a degenerate segment.
  double angle() const noexcept {
    if (x1 == x2 && y1 == y2) return 0.0;
    double a = std::atan2(double(y2 - y1), double(x2 - x1));
    if (a < 0) a += std::numbers::pi;
    if (a >= std::numbers::pi) a -= std::numbers::pi;
    return a;
  }
  Point p1() const noexcept { return {double(x1), double(y1)}; }
  Point p2() const noexcept { return {double(x2), double(y2)}; }

  friend auto operator<=>(const Segment&, const Segment&) = default;
};

inline Segment canonical(Segment s) noexcept {
  if (std::tie(s.x2, s.y2) < std::tie(s.x1, s.y1)) {
    std::swap(s.x1, s.x2);
    std::swap(s.y1, s.y2);
  }
  return s;
}

/// Difference between undirected orientations, in [0, pi/2].
inline double angle_between(double a, double b) noexcept {
  double d = std::fmod(std::fabs(a - b), std::numbers::pi);
  return std::min(d, std::numbers::pi - d);
}

inline double dot(Point a, Point b) noexcept { return a.x * b.x + a.y * b.y; }
inline Point operator-(Point a, Point b) noexcept { return {a.x - b.x, a.y - b.y}; }
inline Point operator+(Point a, Point b) noexcept { return {a.x + b.x, a.y + b.y}; }
inline Point operator*(double s, Point a) noexcept { return {s * a.x, s * a.y}; }
inline double distance(Point a, Point b) noexcept { return std::hypot(a.x - b.x, a.y - b.y); }

/// Distance from p to the infinite line through a and b (or to a when a == b).
inline double line_distance(Point p, Point a, Point b) noexcept {
  const Point d = b - a;
  const double len = std::hypot(d.x, d.y);
  if (len == 0.0) return distance(p, a);
  return std::fabs(d.x * (p.y - a.y) - d.y * (p.x - a.x)) / len;
}

inline double segment_distance(Point p, Point a, Point b) noexcept {
  const Point d = b - a;
  const double len2 = dot(d, d);
  if (len2 == 0.0) return distance(p, a);
  const double t = std::clamp(dot(p - a, d) / len2, 0.0, 1.0);
  return distance(p, a + t * d);
}

}  // namespace comb
