#include "flatline/first_return.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "flatline/error.hpp"

namespace flatline {

namespace {

constexpr double kParamTol = 1e-12;

struct SegmentHit {
  bool found = false;
  double sigma = 0.0;  // position along the segment, in [0, 1]
  double time = 0.0;
};

double max_diameter(const TranslationSurface& s) {
  double d = 0.0;
  for (const auto& p : s.polygons())
    for (const Vec2& a : p.vertices)
      for (const Vec2& b : p.vertices) d = std::max(d, (a - b).norm());
  return d;
}

// Follows the flow from `start` until it first crosses `seg` after time
// `min_time`. Meeting a vertex first is a SingularEdgeCase.
SegmentHit trace_to_segment(const TranslationSurface& s, double theta, SurfacePoint start, const Transversal& seg,
                            double min_time) {
  const Vec2 d = seg.b - seg.a;
  const double chunk = 64.0 * max_diameter(s);
  long crossings = 0;
  double base = 0.0;
  TraceOptions opt;
  while (true) {
    SegmentHit hit;
    const PieceVisitor visit = [&](int polygon, Vec2 p, Vec2 u, double t0, double len) {
      if (hit.found || polygon != seg.polygon) return;
      const double den = cross(u, d);
      if (std::abs(den) < 1e-14) return;
      const double tau = cross(seg.a - p, d) / den;
      const double sigma = cross(seg.a - p, u) / den;
      if (tau < -kParamTol * len || tau > len * (1.0 + kParamTol) + kParamTol) return;
      if (sigma < -kParamTol || sigma > 1.0 + kParamTol) return;
      const double when = base + t0 + std::clamp(tau, 0.0, len);
      if (when <= min_time) return;
      hit = {true, std::clamp(sigma, 0.0, 1.0), when};
    };
    const OrbitSegment part = trace_orbit(s, theta, start, chunk, opt, visit);
    if (hit.found) return hit;
    if (part.hit_singularity)
      throw Error(ErrorCode::SingularEdgeCase, "trajectory meets a vertex before returning to the transversal");
    crossings += static_cast<long>(part.crossings.size());
    if (crossings > kMaxReturnCrossings)
      throw Error(ErrorCode::ReturnNotFound, "no return to the transversal within the crossing cap");
    base += chunk;
    start = part.end;
  }
}

bool strictly_in_corner(const PlanarPolygon& poly, int k, Vec2 w) {
  const std::size_t n = poly.size();
  const Vec2 e = poly.edge(static_cast<std::size_t>(k));
  const Vec2 back = poly.vertex(static_cast<std::size_t>(k) + n - 1) - poly.vertex(static_cast<std::size_t>(k));
  const double a = ccw_angle(e, w), full = ccw_angle(e, back);
  if (std::abs(a) < 1e-12 || std::abs(a - 2.0 * M_PI) < 1e-12 || std::abs(a - full) < 1e-12)
    throw Error(ErrorCode::SingularEdgeCase, "flow direction is parallel to an edge at a cone point");
  return a < full;
}

// Points just off cone point `cp` on its incoming separatrices, moved
// backwards along the flow.
void add_seeds(const TranslationSurface& s, const ConePoint& cp, Vec2 back, std::vector<SurfacePoint>& out) {
  for (const Corner& c : cp.corners) {
    const auto& poly = s.polygon(c.polygon);
    if (!strictly_in_corner(poly, c.vertex, back)) continue;
    const Vec2 v = poly.vertex(static_cast<std::size_t>(c.vertex));
    const double step = 1e-7 * std::min(poly.edge(static_cast<std::size_t>(c.vertex)).norm(),
                                        poly.edge(static_cast<std::size_t>(c.vertex) + poly.size() - 1).norm());
    out.push_back({c.polygon, v + back * step});
  }
}

std::vector<SurfacePoint> separatrix_seeds(const TranslationSurface& s, Vec2 back) {
  std::vector<SurfacePoint> out;
  for (const auto& cp : s.cone_points())
    if (cp.angle_multiple >= 2) add_seeds(s, cp, back, out);
  return out;
}

// Vertex orbit at p, or -1.
int vertex_at(const TranslationSurface& s, int polygon, Vec2 p) {
  const auto& poly = s.polygon(polygon);
  for (std::size_t k = 0; k < poly.size(); ++k)
    if ((poly.vertex(k) - p).norm() < kSingularEps) return s.vertex_orbit({polygon, static_cast<int>(k)});
  return -1;
}

}  // namespace

FirstReturn first_return_iet(const TranslationSurface& s, double theta, const Transversal& t) {
  const Vec2 u = unit_direction(theta);
  const double L = t.length();
  if (!(L > 0.0)) throw Error(ErrorCode::InvalidArgument, "transversal has zero length");
  if (std::abs(cross(t.b - t.a, u)) < 1e-9 * L) throw Error(ErrorCode::InvalidArgument, "transversal is parallel to the flow");
  const double back_theta = theta + M_PI;
  std::vector<double> cuts;
  auto add_cut = [&](const SegmentHit& h) {
    const double c = h.sigma * L;
    if (c > kParamTol * L * 1e3 && c < L * (1.0 - kParamTol * 1e3)) cuts.push_back(c);
  };
  for (const SurfacePoint& seed : separatrix_seeds(s, -u)) add_cut(trace_to_segment(s, back_theta, seed, t, 0.0));
  // Endpoints: a marked point at an endpoint still cuts the interval.
  for (Vec2 end : {t.a, t.b}) {
    const int v = vertex_at(s, t.polygon, end);
    if (v < 0) {
      add_cut(trace_to_segment(s, back_theta, {t.polygon, end}, t, 1e-12));
    } else if (s.cone_points()[static_cast<std::size_t>(v)].angle_multiple < 2) {
      std::vector<SurfacePoint> seeds;
      add_seeds(s, s.cone_points()[static_cast<std::size_t>(v)], -u, seeds);
      for (const SurfacePoint& seed : seeds) add_cut(trace_to_segment(s, back_theta, seed, t, 0.0));
    }
  }
  std::sort(cuts.begin(), cuts.end());
  std::vector<double> bounds{0.0};
  for (double c : cuts)
    if (c - bounds.back() > 1e-9 * L) bounds.push_back(c);
  if (L - bounds.back() <= 1e-9 * L) bounds.pop_back();
  bounds.push_back(L);

  const int d = static_cast<int>(bounds.size()) - 1;
  FirstReturn fr;
  fr.iet.lengths.resize(static_cast<std::size_t>(d));
  fr.starts.resize(static_cast<std::size_t>(d));
  fr.return_times.resize(static_cast<std::size_t>(d));
  fr.translations.resize(static_cast<std::size_t>(d));
  const Vec2 dir = (t.b - t.a) / L;
  for (int i = 0; i < d; ++i) {
    const double lo = bounds[static_cast<std::size_t>(i)], hi = bounds[static_cast<std::size_t>(i) + 1];
    const double mid = 0.5 * (lo + hi);
    const SegmentHit h = trace_to_segment(s, theta, {t.polygon, t.a + dir * mid}, t, 1e-12);
    fr.iet.lengths[static_cast<std::size_t>(i)] = hi - lo;
    fr.starts[static_cast<std::size_t>(i)] = lo;
    fr.return_times[static_cast<std::size_t>(i)] = h.time;
    fr.translations[static_cast<std::size_t>(i)] = h.sigma * L - mid;
    fr.iet.perm.top.push_back(i);
  }
  fr.iet.perm.bottom = fr.iet.perm.top;
  std::sort(fr.iet.perm.bottom.begin(), fr.iet.perm.bottom.end(), [&](int p, int q) {
    return fr.starts[static_cast<std::size_t>(p)] + fr.translations[static_cast<std::size_t>(p)] <
           fr.starts[static_cast<std::size_t>(q)] + fr.translations[static_cast<std::size_t>(q)];
  });
  double pos = 0.0;
  for (int l : fr.iet.perm.bottom) {
    const double img = fr.starts[static_cast<std::size_t>(l)] + fr.translations[static_cast<std::size_t>(l)];
    if (std::abs(img - pos) > 1e-7 * L)
      throw Error(ErrorCode::SingularEdgeCase, "return images do not tile the transversal");
    pos += fr.iet.lengths[static_cast<std::size_t>(l)];
  }
  return fr;
}

Transversal separatrix_transversal(const TranslationSurface& s, double theta) {
  const Vec2 u = unit_direction(theta);
  const Vec2 perp{-u.y, u.x};
  for (const auto& cp : s.cone_points()) {
    if (cp.angle_multiple < 2) continue;
    for (const Corner& c : cp.corners) {
      const auto& poly = s.polygon(c.polygon);
      if (!strictly_in_corner(poly, c.vertex, perp)) continue;
      const Vec2 v = poly.vertex(static_cast<std::size_t>(c.vertex));
      // Chord from v along perp to the far side of the polygon.
      double reach = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < poly.size(); ++i) {
        const Vec2 e = poly.edge(i);
        const double den = cross(e, perp);
        if (den >= 0.0) continue;
        const Vec2 w = poly.vertex(i);
        if ((w - v).norm() < kSingularEps || (poly.vertex(i + 1) - v).norm() < kSingularEps) continue;
        const double tt = cross(e, w - v) / den;
        const double sp = dot(v + perp * tt - w, e) / e.norm2();
        if (tt > 0.0 && sp >= -1e-12 && sp <= 1.0 + 1e-12) reach = std::min(reach, tt);
      }
      if (!std::isfinite(reach)) continue;
      const Transversal chord{c.polygon, v, v + perp * reach};
      double best = reach;
      for (const SurfacePoint& seed : separatrix_seeds(s, -u)) {
        const SegmentHit h = trace_to_segment(s, theta + M_PI, seed, chord, 0.0);
        if (h.sigma * reach > 1e-9 * reach) best = std::min(best, h.sigma * reach);
      }
      return {c.polygon, v, v + perp * best};
    }
  }
  throw Error(ErrorCode::InvalidArgument, "surface has no cone point of angle above 2 pi");
}

}  // namespace flatline
