#pragma once

#include <compare>
#include <string>
#include <vector>

#include "flatline/geometry.hpp"

namespace flatline {

inline constexpr double kGeomTol = 1e-9;
inline constexpr double kConeSnapTol = 1e-6;

struct PlanarPolygon {
  std::string id;
  std::vector<Vec2> vertices;

  std::size_t size() const { return vertices.size(); }
  Vec2 vertex(std::size_t i) const { return vertices[i % vertices.size()]; }
  Vec2 edge(std::size_t i) const { return vertex(i + 1) - vertex(i); }
  double signed_area() const;
  bool is_convex() const;
  Vec2 centroid() const;
};

struct EdgeRef {
  int polygon = -1;
  int edge = -1;
  auto operator<=>(const EdgeRef&) const = default;
};

struct EdgeGluing {
  EdgeRef a;
  EdgeRef b;
};

// A corner of a polygon: vertex `vertex` of polygon `polygon`.
struct Corner {
  int polygon = -1;
  int vertex = -1;
  auto operator<=>(const Corner&) const = default;
};

// One vertex orbit of the glued complex. `angle_multiple` is the total angle
// divided by 2 pi; kappa = angle_multiple - 1 (0 for a marked regular point).
struct ConePoint {
  std::vector<Corner> corners;  // counterclockwise order around the point
  double total_angle = 0.0;
  int angle_multiple = 1;
  int kappa() const { return angle_multiple - 1; }
};

struct Stratum {
  std::vector<int> kappa;  // positive zero orders, sorted descending
  std::string str() const;
  bool operator==(const Stratum&) const = default;
};

struct BuildOptions {
  double geom_tol = kGeomTol;
  double cone_snap_tol = kConeSnapTol;
};

// Closed translation surface glued from planar polygons. Immutable after
// construction; every accessor is safe for concurrent use.
class TranslationSurface {
 public:
  static TranslationSurface build(std::vector<PlanarPolygon> polygons, std::vector<EdgeGluing> gluings,
                                  const BuildOptions& options = {});

  const std::vector<PlanarPolygon>& polygons() const { return polygons_; }
  const PlanarPolygon& polygon(int i) const { return polygons_[static_cast<std::size_t>(i)]; }
  const std::vector<EdgeGluing>& gluings() const { return gluings_; }
  const std::vector<ConePoint>& cone_points() const { return cone_points_; }

  int genus() const { return genus_; }
  const Stratum& stratum() const { return stratum_; }
  double area() const { return area_; }
  int num_vertices() const { return static_cast<int>(cone_points_.size()); }
  bool all_convex() const;

  EdgeRef partner(EdgeRef e) const;
  // Index of the gluing containing `e` and the orientation of `e` relative to
  // the gluing's `a` side (+1 or -1).
  int edge_class(EdgeRef e) const;
  int edge_sign(EdgeRef e) const;
  // Vertex orbit containing the corner.
  int vertex_orbit(Corner c) const;
  // Holonomy vector of edge class `k`, oriented along its `a` side.
  Vec2 class_vector(int k) const;
  int class_tail(int k) const;
  int class_head(int k) const;

  // Image under post-composition of all charts with A (det A != 0).
  TranslationSurface transformed(const Mat2& A) const;
  TranslationSurface rescaled_to_unit_area() const;

 private:
  std::vector<PlanarPolygon> polygons_;
  std::vector<EdgeGluing> gluings_;
  std::vector<std::vector<EdgeRef>> partner_;
  std::vector<std::vector<int>> edge_class_;
  std::vector<std::vector<int>> corner_orbit_;
  std::vector<ConePoint> cone_points_;
  Stratum stratum_;
  int genus_ = 0;
  double area_ = 0.0;
};

// GL(2,R) action on a surface.
TranslationSurface apply_gl2(const Mat2& A, const TranslationSurface& s);

// Canonical example surfaces.
TranslationSurface square_torus(double side = 1.0);
TranslationSurface regular_octagon_surface(bool unit_area = true);

}  // namespace flatline
