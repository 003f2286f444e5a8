#include "flatline/billiard.hpp"

#include <algorithm>
#include <cmath>

#include "flatline/error.hpp"

namespace flatline {

namespace {

Mat2 reflection(double beta) {
  const double c = std::cos(2.0 * beta), s = std::sin(2.0 * beta);
  return {c, s, s, -c};
}

double mat_distance(const Mat2& p, const Mat2& q) {
  return std::abs(p.a - q.a) + std::abs(p.b - q.b) + std::abs(p.c - q.c) + std::abs(p.d - q.d);
}

void check_angle_data(const std::vector<Rational>& angles) {
  if (angles.size() < 3) throw Error(ErrorCode::NonIntegerGenus, "a polygon has at least 3 angles");
  Rational sum(0);
  for (const auto& a : angles) {
    if (!(Rational(0) < a) || !(a < Rational(2)))
      throw Error(ErrorCode::NonIntegerGenus, "angle " + a.str() + " pi out of range");
    sum = sum + a;
  }
  if (!(sum == Rational(static_cast<std::int64_t>(angles.size()) - 2)))
    throw Error(ErrorCode::NonIntegerGenus, "angles sum to " + sum.str() + " pi, expected (sigma-2) pi");
}

}  // namespace

int billiard_genus(const std::vector<Rational>& angles) {
  check_angle_data(angles);
  std::int64_t N = 1;
  Rational inv_sum(0);
  for (const auto& a : angles) {
    N = lcm64(N, a.den());
    inv_sum = inv_sum + Rational(1, a.den());
  }
  const auto sigma = static_cast<std::int64_t>(angles.size());
  const Rational g = Rational(1) + Rational(N, 2) * (Rational(sigma - 2) - inv_sum);
  if (g.den() != 1 || g.num() < 0)
    throw Error(ErrorCode::NonIntegerGenus, "genus formula gives " + g.str());
  return static_cast<int>(g.num());
}

std::vector<Rational> rational_angles(const PlanarPolygon& table, std::int64_t max_den) {
  std::vector<Rational> out;
  const std::size_t n = table.size();
  for (std::size_t k = 0; k < n; ++k) {
    const double ang = ccw_angle(table.edge(k), table.vertex(k + n - 1) - table.vertex(k)) / M_PI;
    const Rational r = rationalize(ang, max_den);
    if (std::abs(r.to_double() - ang) > 1e-9)
      throw Error(ErrorCode::IrrationalAngle, "angle " + std::to_string(ang) + " pi is not rational");
    out.push_back(r);
  }
  return out;
}

PlanarPolygon triangle_from_angles(const std::vector<Rational>& angles) {
  if (angles.size() != 3)
    throw Error(ErrorCode::DegeneratePolygon, "angle-only billiard data determines triangles only; give vertices");
  check_angle_data(angles);
  const double a = angles[0].to_double() * M_PI, b = angles[1].to_double() * M_PI, c = angles[2].to_double() * M_PI;
  const double side = std::sin(b) / std::sin(c);  // |v0 v2| opposite to the angle at v1
  return PlanarPolygon{"P", {{0.0, 0.0}, {1.0, 0.0}, {side * std::cos(a), side * std::sin(a)}}};
}

TranslationSurface unfold_billiard(const PlanarPolygon& table) {
  if (table.size() < 3 || table.signed_area() <= 0.0)
    throw Error(ErrorCode::DegeneratePolygon, "billiard table must be a positively oriented polygon");
  const auto angles = rational_angles(table);
  std::int64_t N = 1;
  for (const auto& r : angles) N = lcm64(N, r.den());
  const std::size_t n = table.size();

  std::vector<Mat2> gens;
  for (std::size_t k = 0; k < n; ++k) {
    const Vec2 e = table.edge(k);
    gens.push_back(reflection(std::atan2(e.y, e.x)));
  }

  // Closure of the generated group, then canonical ordering.
  std::vector<Mat2> group{Mat2::identity()};
  for (std::size_t i = 0; i < group.size(); ++i) {
    for (const auto& r : gens) {
      const Mat2 g = group[i] * r;
      const bool known = std::any_of(group.begin(), group.end(), [&](const Mat2& h) { return mat_distance(g, h) < 1e-7; });
      if (!known) group.push_back(g);
      if (group.size() > static_cast<std::size_t>(4 * N + 4))
        throw Error(ErrorCode::IrrationalAngle, "reflection group is not finite");
    }
  }
  if (group.size() != static_cast<std::size_t>(2 * N))
    throw Error(ErrorCode::IrrationalAngle, "reflection group has unexpected order");
  auto key = [](const Mat2& g) {
    const bool rot = g.det() > 0;
    double ang = std::atan2(g.c, g.a);
    if (ang < -1e-12) ang += 2.0 * M_PI;
    return std::pair{rot ? 0 : 1, std::round(ang * 1e9)};
  };
  std::sort(group.begin(), group.end(), [&](const Mat2& p, const Mat2& q) { return key(p) < key(q); });

  auto find = [&](const Mat2& g) {
    for (std::size_t i = 0; i < group.size(); ++i)
      if (mat_distance(g, group[i]) < 1e-7) return static_cast<int>(i);
    throw Error(ErrorCode::IrrationalAngle, "group element not found");
  };

  std::vector<PlanarPolygon> copies;
  for (std::size_t i = 0; i < group.size(); ++i) {
    const Mat2& g = group[i];
    PlanarPolygon p{"C" + std::to_string(i), {}};
    if (g.det() > 0) {
      for (std::size_t k = 0; k < n; ++k) p.vertices.push_back(g * table.vertex(k));
    } else {
      for (std::size_t k = 0; k < n; ++k) p.vertices.push_back(g * table.vertex(n - k));
    }
    copies.push_back(std::move(p));
  }
  // Table edge k of a copy, in that copy's (possibly reversed) indexing.
  auto local_edge = [&](std::size_t copy, std::size_t k) {
    return group[copy].det() > 0 ? static_cast<int>(k) : static_cast<int>(n - 1 - k);
  };
  std::vector<EdgeGluing> gluings;
  for (std::size_t i = 0; i < group.size(); ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const int j = find(group[i] * gens[k]);
      if (static_cast<int>(i) < j)
        gluings.push_back({{static_cast<int>(i), local_edge(i, k)}, {j, local_edge(static_cast<std::size_t>(j), k)}});
    }
  return TranslationSurface::build(std::move(copies), std::move(gluings));
}

TranslationSurface unfold_billiard(const std::vector<Rational>& triangle_angles) {
  return unfold_billiard(triangle_from_angles(triangle_angles));
}

}  // namespace flatline
