#pragma once

#include <limits>

#include "flatline/surface.hpp"

namespace flatline {

inline constexpr double kNoSaddleConnection = std::numeric_limits<double>::infinity();

// Length of the shortest saddle connection of length at most `bound`, where
// every vertex orbit (including marked points) counts as an endpoint; on the
// square torus this is the shortest closed geodesic. Returns
// kNoSaddleConnection when nothing is found below the bound. Requires convex
// polygons (NonConvexPolygon otherwise).
double systole(const TranslationSurface& s, double bound);

// Holonomy vectors of all saddle connections of length at most `bound`
// leaving the given corner, in no particular order.
std::vector<Vec2> saddle_connections_from(const TranslationSurface& s, Corner c, double bound);

}  // namespace flatline
