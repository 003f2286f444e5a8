#pragma once

#include <array>
#include <cmath>
#include <complex>

namespace flatline {

using Complex = std::complex<double>;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2() = default;
  constexpr Vec2(double x_, double y_) : x(x_), y(y_) {}

  constexpr Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  constexpr Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  constexpr Vec2 operator-() const { return {-x, -y}; }
  constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
  constexpr Vec2 operator/(double s) const { return {x / s, y / s}; }
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
  constexpr bool operator==(const Vec2&) const = default;

  double norm() const { return std::hypot(x, y); }
  constexpr double norm2() const { return x * x + y * y; }
  Complex to_complex() const { return {x, y}; }
};

constexpr Vec2 operator*(double s, Vec2 v) { return v * s; }
constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }

inline Vec2 unit_direction(double theta) { return {std::cos(theta), std::sin(theta)}; }

// Row-major 2x2 real matrix acting on column vectors.
struct Mat2 {
  double a = 1.0, b = 0.0, c = 0.0, d = 1.0;

  static constexpr Mat2 identity() { return {}; }
  static Mat2 rotation(double theta) {
    const double cs = std::cos(theta), sn = std::sin(theta);
    return {cs, -sn, sn, cs};
  }
  static Mat2 diagonal(double p, double q) { return {p, 0.0, 0.0, q}; }

  constexpr double det() const { return a * d - b * c; }
  constexpr Vec2 operator*(Vec2 v) const { return {a * v.x + b * v.y, c * v.x + d * v.y}; }
  constexpr Mat2 operator*(const Mat2& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
  }
  constexpr Mat2 scaled(double s) const { return {a * s, b * s, c * s, d * s}; }
};

// Teichmueller geodesic flow in polygon coordinates. The generator pair (X, Y)
// is mapped to (e^t X, e^-t Y), so charts are contracted horizontally and
// expanded vertically: Re h_t = e^-t Re h and Im h_t = e^t Im h.
inline Mat2 teichmuller(double t) { return Mat2::diagonal(std::exp(-t), std::exp(t)); }

// Counterclockwise angle swept from `from` to `to`, in (0, 2 pi].
inline double ccw_angle(Vec2 from, Vec2 to) {
  double ang = std::atan2(cross(from, to), dot(from, to));
  if (ang <= 0.0) ang += 2.0 * M_PI;
  return ang;
}

}  // namespace flatline
