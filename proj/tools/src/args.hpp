#pragma once

#include <cstdint>
#include <string>

#include <Eigen/Dense>

#include "config.hpp"
#include "flatline/flow.hpp"
#include "flatline/mesh.hpp"
#include "flatline/surface_io.hpp"

namespace flatline::cli {

struct LoadedSurface {
  SurfaceSpec spec;
  TranslationSurface surface;
  std::string source;
};

// Key `surface`: a spec file, or @torus / @octagon.
LoadedSurface load_surface(const Config& cfg, const std::string& key = "surface");

// Key `start` = "x,y" in polygon `polygon`; a seeded uniform point otherwise.
SurfacePoint start_point(const Config& cfg, const TranslationSurface& s);

// "a,b,c,d" periods, or "[scale*]reh" / "[scale*]imh".
Eigen::VectorXd class_periods(const std::string& spec, const FlatMesh& mesh);

std::uint64_t seed(const Config& cfg);
// Key `threads`, else FLATLINE_THREADS, else the hardware count.
int thread_count(const Config& cfg);

}  // namespace flatline::cli
