#pragma once

#include <vector>

#include "flatline/rational.hpp"
#include "flatline/surface.hpp"

namespace flatline {

// Genus of the unfolding of a rational polygon with interior angles
// pi * angles[i]: 1 + (N/2)(sigma - 2 - sum 1/n_i), N = lcm of denominators.
int billiard_genus(const std::vector<Rational>& angles);

// Interior angles of a polygon in units of pi, recognised as rationals with
// denominator at most `max_den`; throws IrrationalAngle otherwise.
std::vector<Rational> rational_angles(const PlanarPolygon& table, std::int64_t max_den = 10000);

// Triangle with the given angles (units of pi), first edge on [0, 1] x {0}.
PlanarPolygon triangle_from_angles(const std::vector<Rational>& angles);

// Unfolding over the dihedral group generated by reflections in the sides.
// Copy k is the image of the table under the k-th group element (rotations
// first, by angle; then reflections).
TranslationSurface unfold_billiard(const PlanarPolygon& table);
TranslationSurface unfold_billiard(const std::vector<Rational>& triangle_angles);

}  // namespace flatline
