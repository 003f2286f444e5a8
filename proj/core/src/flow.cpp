#include "flatline/flow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "flatline/error.hpp"

namespace flatline {

namespace {

bool inside_polygon(const PlanarPolygon& poly, Vec2 p) {
  bool in = false;
  const std::size_t n = poly.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Vec2 a = poly.vertices[i], b = poly.vertices[j];
    if ((a.y > p.y) != (b.y > p.y) && p.x < (b.x - a.x) * (p.y - a.y) / (b.y - a.y) + a.x) in = !in;
  }
  if (in) return true;
  // Points on the boundary count as inside.
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 e = poly.edge(i), d = p - poly.vertex(i);
    const double len2 = e.norm2();
    const double t = dot(d, e) / len2;
    if (t >= -kGeomTol && t <= 1.0 + kGeomTol && std::abs(cross(e, d)) <= kGeomTol * std::sqrt(len2)) return true;
  }
  return false;
}

struct Exit {
  int edge = -1;
  double t = std::numeric_limits<double>::infinity();
  double s = 0.0;
};

Exit find_exit(const PlanarPolygon& poly, Vec2 p, Vec2 u, int entry_edge) {
  Exit best, fallback;
  const int n = static_cast<int>(poly.size());
  for (int i = 0; i < n; ++i) {
    if (i == entry_edge) continue;
    const Vec2 e = poly.edge(static_cast<std::size_t>(i));
    const double den = cross(e, u);
    if (den >= 0.0) continue;
    const Vec2 v = poly.vertex(static_cast<std::size_t>(i));
    const double t = std::max(0.0, cross(e, v - p) / den);
    const Vec2 x = p + u * t;
    const double s = dot(x - v, e) / e.norm2();
    if (t < fallback.t) fallback = {i, t, std::clamp(s, 0.0, 1.0)};
    if (s >= -1e-12 && s <= 1.0 + 1e-12 && t < best.t) best = {i, t, std::clamp(s, 0.0, 1.0)};
  }
  if (best.edge >= 0) return best;
  if (fallback.edge >= 0) return fallback;
  throw Error(ErrorCode::SingularOrbit, "orbit has no exit from polygon");
}

}  // namespace

OrbitSegment trace_orbit(const TranslationSurface& s, double theta, SurfacePoint start, double T,
                         const TraceOptions& options, const PieceVisitor& visitor) {
  if (start.polygon < 0 || start.polygon >= static_cast<int>(s.polygons().size()))
    throw Error(ErrorCode::InvalidArgument, "start polygon out of range");
  if (!(T >= 0.0)) throw Error(ErrorCode::InvalidArgument, "orbit duration must be nonnegative");
  const auto& p0 = s.polygon(start.polygon);
  if (!inside_polygon(p0, start.pos)) throw Error(ErrorCode::InvalidArgument, "start point is outside its polygon");
  for (const Vec2& v : p0.vertices)
    if ((v - start.pos).norm() < options.singular_eps) throw Error(ErrorCode::SingularStart, "start point is a vertex");

  OrbitSegment seg;
  seg.start = start;
  seg.theta = theta;
  const Vec2 u = unit_direction(theta);
  int poly = start.polygon;
  Vec2 p = start.pos;
  int entry = -1;
  double t = 0.0;
  while (true) {
    const auto& P = s.polygon(poly);
    const Exit ex = find_exit(P, p, u, entry);
    const double remaining = T - t;
    double hit = std::numeric_limits<double>::infinity();
    for (const Vec2& v : P.vertices) {
      const Vec2 d = v - p;
      const double tau = dot(d, u);
      if (tau > -options.singular_eps && tau <= ex.t + options.singular_eps && std::abs(cross(u, d)) < options.singular_eps)
        hit = std::min(hit, std::max(tau, 0.0));
    }
    if (hit <= remaining) {
      if (visitor && hit > 0.0) visitor(poly, p, u, t, hit);
      seg.hit_singularity = true;
      seg.duration = t + hit;
      seg.end = {poly, p + u * hit};
      return seg;
    }
    if (remaining <= ex.t) {
      if (visitor && remaining > 0.0) visitor(poly, p, u, t, remaining);
      seg.duration = T;
      seg.end = {poly, p + u * remaining};
      return seg;
    }
    if (visitor && ex.t > 0.0) visitor(poly, p, u, t, ex.t);
    t += ex.t;
    const EdgeRef out{poly, ex.edge};
    if (options.record_crossings) seg.crossings.push_back({s.edge_class(out), s.edge_sign(out), t});
    const EdgeRef in = s.partner(out);
    const auto& Q = s.polygon(in.polygon);
    p = Q.vertex(static_cast<std::size_t>(in.edge)) + Q.edge(static_cast<std::size_t>(in.edge)) * (1.0 - ex.s);
    poly = in.polygon;
    entry = in.edge;
  }
}

IntegralSeries twisted_integral_series(const TranslationSurface& s, double theta, const Observable& f, double lambda,
                                       SurfacePoint start, const std::vector<double>& times) {
  if (!std::is_sorted(times.begin(), times.end()) || (!times.empty() && times.front() < 0.0))
    throw Error(ErrorCode::InvalidArgument, "sample times must be nonnegative and increasing");
  IntegralSeries out;
  if (times.empty()) return out;
  const double omega = 2.0 * M_PI * lambda;
  Complex acc{0.0, 0.0};
  double sup = 0.0;
  std::size_t next = 0;
  auto flush = [&](double at) {
    while (next < times.size() && times[next] <= at) {
      out.times.push_back(times[next]);
      out.values.push_back(acc);
      out.sup_abs.push_back(sup);
      ++next;
    }
  };
  flush(0.0);
  const PieceVisitor visit = [&](int polygon, Vec2 p, Vec2 u, double t0, double len) {
    const Observable& g = f;
    (void)polygon;
    double done = 0.0;
    while (next < times.size() && times[next] < t0 + len) {
      const double part = times[next] - t0 - done;
      if (part > 0.0) {
        acc += std::exp(Complex(0.0, omega * (t0 + done))) * g.segment_integral(p + u * done, u, part, omega);
        done += part;
      }
      sup = std::max(sup, std::abs(acc));
      flush(t0 + done);
    }
    const double rest = len - done;
    if (rest > 0.0) acc += std::exp(Complex(0.0, omega * (t0 + done))) * g.segment_integral(p + u * done, u, rest, omega);
    sup = std::max(sup, std::abs(acc));
  };
  TraceOptions opt;
  opt.record_crossings = false;
  const OrbitSegment seg = trace_orbit(s, theta, start, times.back(), opt, visit);
  if (seg.hit_singularity) throw Error(ErrorCode::SingularOrbit, "orbit meets a vertex at t = " + std::to_string(seg.duration));
  flush(std::numeric_limits<double>::infinity());
  return out;
}

Complex twisted_integral(const TranslationSurface& s, double theta, const Observable& f, double lambda,
                         SurfacePoint start, double T) {
  return twisted_integral_series(s, theta, f, lambda, start, {T}).values.back();
}

double birkhoff_integral(const TranslationSurface& s, double theta, const Observable& f, SurfacePoint start, double T) {
  return twisted_integral(s, theta, f, 0.0, start, T).real();
}

std::vector<double> dyadic_times(int lo, int hi) {
  std::vector<double> out;
  for (int k = lo; k <= hi; ++k) out.push_back(std::ldexp(1.0, k));
  return out;
}

namespace {

// Value of each basis cocycle at every polygon vertex, integrated along the
// boundary from vertex 0.
std::vector<std::vector<Eigen::VectorXi>> boundary_potentials(const TranslationSurface& s, const HomologyBasis& basis) {
  const int n2g = static_cast<int>(basis.cocycles.size());
  std::vector<std::vector<Eigen::VectorXi>> phi(s.polygons().size());
  for (int p = 0; p < static_cast<int>(s.polygons().size()); ++p) {
    const int n = static_cast<int>(s.polygon(p).size());
    auto& ph = phi[static_cast<std::size_t>(p)];
    ph.assign(static_cast<std::size_t>(n), Eigen::VectorXi::Zero(n2g));
    for (int j = 1; j < n; ++j) {
      const int k = s.edge_class({p, j - 1});
      const int sg = s.edge_sign({p, j - 1});
      ph[static_cast<std::size_t>(j)] = ph[static_cast<std::size_t>(j - 1)];
      for (int g = 0; g < n2g; ++g)
        ph[static_cast<std::size_t>(j)][g] += sg * static_cast<int>(basis.cocycles[static_cast<std::size_t>(g)][static_cast<std::size_t>(k)]);
    }
  }
  return phi;
}

}  // namespace

Eigen::VectorXi orbit_homology_class(const TranslationSurface& s, const OrbitSegment& seg, const HomologyBasis& basis,
                                     int max_polygons) {
  if (basis.num_edge_classes != static_cast<int>(s.gluings().size()))
    throw Error(ErrorCode::BasisMismatch, "basis was built for a different gluing");
  const auto phi = boundary_potentials(s, basis);
  const int n2g = static_cast<int>(basis.cocycles.size());
  auto jump = [&](EdgeRef out) -> Eigen::VectorXi {
    const EdgeRef in = s.partner(out);
    const int m = static_cast<int>(s.polygon(in.polygon).size());
    return phi[static_cast<std::size_t>(out.polygon)][static_cast<std::size_t>(out.edge)] -
           phi[static_cast<std::size_t>(in.polygon)][static_cast<std::size_t>((in.edge + 1) % m)];
  };
  Eigen::VectorXi cls = Eigen::VectorXi::Zero(n2g);
  for (const auto& c : seg.crossings) {
    const auto& g = s.gluings()[static_cast<std::size_t>(c.gluing)];
    cls += jump(c.sign > 0 ? g.a : g.b);
  }

  // Closing path: fewest polygon hops from the end polygon to the start.
  const int F = static_cast<int>(s.polygons().size());
  std::vector<EdgeRef> via(static_cast<std::size_t>(F), EdgeRef{});
  std::vector<int> depth(static_cast<std::size_t>(F), -1);
  std::queue<int> q;
  depth[static_cast<std::size_t>(seg.end.polygon)] = 0;
  q.push(seg.end.polygon);
  while (!q.empty()) {
    const int p = q.front();
    q.pop();
    for (int j = 0; j < static_cast<int>(s.polygon(p).size()); ++j) {
      const int r = s.partner({p, j}).polygon;
      if (depth[static_cast<std::size_t>(r)] >= 0) continue;
      depth[static_cast<std::size_t>(r)] = depth[static_cast<std::size_t>(p)] + 1;
      via[static_cast<std::size_t>(r)] = {p, j};
      q.push(r);
    }
  }
  const int hops = depth[static_cast<std::size_t>(seg.start.polygon)];
  if (hops < 0 || hops + 1 > max_polygons)
    throw Error(ErrorCode::NoBoundedClosingArc, "closing path needs " + std::to_string(hops + 1) + " polygons");
  std::vector<EdgeRef> path;
  for (int r = seg.start.polygon; r != seg.end.polygon; r = via[static_cast<std::size_t>(r)].polygon)
    path.push_back(via[static_cast<std::size_t>(r)]);
  for (const auto& e : path) cls += jump(e);
  return cls;
}

Eigen::VectorXd flux_estimate(const TranslationSurface& s, double theta, SurfacePoint start, double T,
                              const HomologyBasis& basis) {
  if (!(T > 0.0)) throw Error(ErrorCode::InvalidArgument, "flux estimate needs T > 0");
  const OrbitSegment seg = trace_orbit(s, theta, start, T);
  if (seg.hit_singularity) throw Error(ErrorCode::SingularOrbit, "orbit meets a vertex");
  return orbit_homology_class(s, seg, basis).cast<double>() / T;
}

SurfacePoint random_point(const TranslationSurface& s, const std::function<double()>& uniform01) {
  struct Tri {
    int polygon;
    Vec2 a, b, c;
    double area;
  };
  std::vector<Tri> tris;
  double total = 0.0;
  for (int p = 0; p < static_cast<int>(s.polygons().size()); ++p) {
    const auto& poly = s.polygon(p);
    for (std::size_t j = 1; j + 1 < poly.size(); ++j) {
      const Tri t{p, poly.vertex(0), poly.vertex(j), poly.vertex(j + 1),
                  0.5 * std::abs(cross(poly.vertex(j) - poly.vertex(0), poly.vertex(j + 1) - poly.vertex(0)))};
      total += t.area;
      tris.push_back(t);
    }
  }
  double r = uniform01() * total;
  const Tri* pick = &tris.back();
  for (const auto& t : tris) {
    if (r < t.area) {
      pick = &t;
      break;
    }
    r -= t.area;
  }
  double a = uniform01(), b = uniform01();
  if (a + b > 1.0) {
    a = 1.0 - a;
    b = 1.0 - b;
  }
  return {pick->polygon, pick->a + (pick->b - pick->a) * a + (pick->c - pick->a) * b};
}

}  // namespace flatline
