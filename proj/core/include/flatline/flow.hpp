#pragma once

#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "flatline/homology.hpp"
#include "flatline/observable.hpp"
#include "flatline/surface.hpp"

namespace flatline {

inline constexpr double kSingularEps = 1e-10;

struct SurfacePoint {
  int polygon = 0;
  Vec2 pos;
};

// Passage through edge class `gluing`; sign is +1 when leaving through the
// gluing's `a` side.
struct Crossing {
  int gluing = -1;
  int sign = 0;
  double time = 0.0;
};

struct OrbitSegment {
  SurfacePoint start;
  SurfacePoint end;
  double theta = 0.0;
  double duration = 0.0;  // time actually traced
  std::vector<Crossing> crossings;
  bool hit_singularity = false;
};

struct TraceOptions {
  double singular_eps = kSingularEps;
  bool record_crossings = true;
};

// Called for every straight piece of the orbit: polygon, entry point,
// direction, time at entry, piece length.
using PieceVisitor = std::function<void(int polygon, Vec2 p, Vec2 u, double t0, double len)>;

// Unit-speed straight-line flow in direction theta. Stops early with
// hit_singularity when the orbit passes within singular_eps of a vertex.
OrbitSegment trace_orbit(const TranslationSurface& s, double theta, SurfacePoint start, double T,
                         const TraceOptions& options = {}, const PieceVisitor& visitor = {});

// Integral of exp(2 pi i lambda t) f(phi_t(start)) over [0, T]; SingularOrbit
// if the orbit meets a vertex.
Complex twisted_integral(const TranslationSurface& s, double theta, const Observable& f, double lambda,
                         SurfacePoint start, double T);
// Real part of the lambda = 0 twisted integral.
double birkhoff_integral(const TranslationSurface& s, double theta, const Observable& f, SurfacePoint start, double T);

// Cumulative twisted integrals at increasing sample times from one trace.
// `sup_abs[i]` is the largest |integral up to t| over piece ends t <= times[i].
struct IntegralSeries {
  std::vector<double> times;
  std::vector<Complex> values;
  std::vector<double> sup_abs;
};
IntegralSeries twisted_integral_series(const TranslationSurface& s, double theta, const Observable& f, double lambda,
                                       SurfacePoint start, const std::vector<double>& times);

// Powers of two from 2^lo to 2^hi.
std::vector<double> dyadic_times(int lo, int hi);

// Integer coordinates on basis.cycles of the orbit closed up by a path
// through at most `max_polygons` polygons.
Eigen::VectorXi orbit_homology_class(const TranslationSurface& s, const OrbitSegment& seg, const HomologyBasis& basis,
                                     int max_polygons = 8);
// orbit_homology_class / T for an orbit traced from `start`.
Eigen::VectorXd flux_estimate(const TranslationSurface& s, double theta, SurfacePoint start, double T,
                              const HomologyBasis& basis);

// Uniformly random interior point (area-weighted polygon, then a point of a
// fan triangle), from a caller-owned uniform [0,1) source.
SurfacePoint random_point(const TranslationSurface& s, const std::function<double()>& uniform01);

}  // namespace flatline
