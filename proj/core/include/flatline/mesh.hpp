#pragma once

#include <array>
#include <vector>

#include <Eigen/Dense>

#include "flatline/homology.hpp"
#include "flatline/surface.hpp"

namespace flatline {

struct MeshOptions {
  // Graded toward cone points of angle 2 pi (k + 1): local size
  // h (r / radius)^(1 - strength / (k + 1)); 0 disables grading.
  double grading_strength = 1.5;
  double grading_radius = 0.0;  // 0 means half the square root of the area
  double angle_floor_deg = 15.0;
};

// Triangulation of a translation surface as a glued triangle complex. Each
// triangle keeps coordinates in the chart of the polygon it lies in, so edges
// glued across polygon sides need no explicit identification maps.
class FlatMesh {
 public:
  struct Triangle {
    std::array<int, 3> v{};      // mesh vertices, counterclockwise
    std::array<int, 3> e{};      // e[k] joins v[k] to v[k+1]
    std::array<int, 3> sign{};   // +1 if edge e[k] is oriented v[k] -> v[k+1]
    std::array<Vec2, 3> p{};     // chart coordinates of the corners
    int polygon = 0;
    double area() const { return 0.5 * cross(p[1] - p[0], p[2] - p[0]); }
  };
  struct Edge {
    int v0 = -1;
    int v1 = -1;
  };

  // Level-0 complex refined uniformly `level` times, then graded toward cone
  // points of angle above 2 pi.
  static FlatMesh build(const TranslationSurface& s, int level, const MeshOptions& options = {});

  const std::vector<Triangle>& triangles() const { return tris_; }
  const std::vector<Edge>& edges() const { return edges_; }
  int num_vertices() const { return num_vertices_; }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  int num_triangles() const { return static_cast<int>(tris_.size()); }
  const HomologyBasis& basis() const { return basis_; }
  int genus() const { return basis_.genus(); }
  int level() const { return level_; }
  // Holonomy of the basis cycles, i.e. the periods of [Re h] + i [Im h].
  const std::vector<Complex>& holonomy() const { return holonomy_; }
  Eigen::VectorXd re_h() const;
  Eigen::VectorXd im_h() const;

  // Vertices 0..sigma-1 are the surface's vertex orbits; others are regular.
  int num_cone_vertices() const { return num_cone_vertices_; }
  double vertex_angle(int v) const;
  double min_angle_deg() const;
  double max_edge_length() const;
  double total_area() const;

  // Values at each triangle corner of the potential of the closed cochain
  // with the given periods on basis().cycles; differences along any edge give
  // the cochain value there.
  std::vector<std::array<double, 3>> corner_potentials(const Eigen::VectorXd& periods) const;
  // Edge cochain (one value per mesh edge, along its orientation).
  Eigen::VectorXd edge_cochain(const Eigen::VectorXd& periods) const;

  // Same complex with every chart post-composed with A.
  FlatMesh transformed(const Mat2& A) const;

 private:
  friend class MeshBuilder;

  std::vector<Triangle> tris_;
  std::vector<Edge> edges_;
  // Per corner: weights on the polygon's vertices representing the corner as
  // a point for potential interpolation (row-major, stride max_poly_).
  std::vector<double> weights_;
  int max_poly_ = 0;
  int num_vertices_ = 0;
  int num_cone_vertices_ = 0;
  int level_ = 0;
  HomologyBasis basis_;
  // Boundary potential of each basis cocycle at each polygon vertex.
  std::vector<std::vector<Eigen::VectorXd>> polygon_potentials_;
  std::vector<Complex> holonomy_;
};

}  // namespace flatline
