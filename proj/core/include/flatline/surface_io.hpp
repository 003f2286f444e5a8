#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "flatline/rational.hpp"
#include "flatline/surface.hpp"

namespace flatline {

// Parsed contents of a surface spec file. Either `polygons` + `gluings` or a
// `billiard` block is present.
//
//   name = octagon
//   polygon P {
//     vertices = [(0, 0), (1, 0), (1/2, 3/4)]
//   }
//   glue P.0 <-> Q.2
//
//   billiard {
//     angles = [1/5, 1/5, 3/5]          # multiples of pi, triangles only
//     vertices = [(0,0), (2,0), ...]    # any rational polygon
//   }
struct GlueSpec {
  std::string polygon_a;
  int edge_a = 0;
  std::string polygon_b;
  int edge_b = 0;
};

struct BilliardSpec {
  std::vector<Rational> angles;  // in units of pi
  std::vector<Vec2> vertices;
};

struct SurfaceSpec {
  std::string name;
  std::vector<PlanarPolygon> polygons;
  std::vector<GlueSpec> gluings;
  std::optional<BilliardSpec> billiard;
};

SurfaceSpec parse_surface_spec(std::istream& in);
SurfaceSpec parse_surface_spec_string(const std::string& text);
SurfaceSpec load_surface_spec(const std::string& path);

// Builds the surface described by a spec: polygons and gluings directly, or
// the unfolding of the billiard table.
TranslationSurface surface_from_spec(const SurfaceSpec& spec);

// Writes a polygon/glue spec that rebuilds `s` exactly (17 significant digits).
void write_surface_spec(std::ostream& out, const TranslationSurface& s, const std::string& name);

}  // namespace flatline
