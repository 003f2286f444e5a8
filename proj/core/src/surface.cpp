#include "flatline/surface.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <sstream>

#include "flatline/error.hpp"

namespace flatline {

double PlanarPolygon::signed_area() const {
  double twice = 0.0;
  for (std::size_t i = 0; i < size(); ++i) twice += cross(vertex(i), vertex(i + 1));
  return 0.5 * twice;
}

bool PlanarPolygon::is_convex() const {
  for (std::size_t i = 0; i < size(); ++i)
    if (cross(edge(i), edge(i + 1)) <= 0.0) return false;
  return true;
}

Vec2 PlanarPolygon::centroid() const {
  Vec2 c;
  for (const auto& v : vertices) c += v;
  return c / static_cast<double>(size());
}

std::string Stratum::str() const {
  std::ostringstream out;
  out << "H(";
  if (kappa.empty()) out << 0;
  for (std::size_t i = 0; i < kappa.size(); ++i) out << (i ? "," : "") << kappa[i];
  out << ")";
  return out.str();
}

namespace {

bool segments_cross(Vec2 p, Vec2 q, Vec2 r, Vec2 s) {
  const double d1 = cross(q - p, r - p), d2 = cross(q - p, s - p);
  const double d3 = cross(s - r, p - r), d4 = cross(s - r, q - r);
  return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0));
}

void validate_polygon(const PlanarPolygon& poly, double tol) {
  const std::size_t n = poly.size();
  if (n < 3) throw Error(ErrorCode::DegeneratePolygon, "polygon '" + poly.id + "' has fewer than 3 vertices");
  for (std::size_t i = 0; i < n; ++i)
    if (poly.edge(i).norm() <= tol)
      throw Error(ErrorCode::DegeneratePolygon, "polygon '" + poly.id + "' has a zero-length edge");
  if (poly.signed_area() <= tol)
    throw Error(ErrorCode::DegeneratePolygon, "polygon '" + poly.id + "' is not positively oriented");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;
      if (segments_cross(poly.vertex(i), poly.vertex(i + 1), poly.vertex(j), poly.vertex(j + 1)))
        throw Error(ErrorCode::DegeneratePolygon, "polygon '" + poly.id + "' is self-intersecting");
    }
}

std::string edge_name(const std::vector<PlanarPolygon>& polys, EdgeRef e) {
  return polys[static_cast<std::size_t>(e.polygon)].id + "." + std::to_string(e.edge);
}

}  // namespace

TranslationSurface TranslationSurface::build(std::vector<PlanarPolygon> polygons, std::vector<EdgeGluing> gluings,
                                             const BuildOptions& options) {
  TranslationSurface s;
  if (polygons.empty()) throw Error(ErrorCode::DegeneratePolygon, "no polygons");
  for (auto& p : polygons) validate_polygon(p, options.geom_tol);

  s.partner_.resize(polygons.size());
  s.edge_class_.resize(polygons.size());
  for (std::size_t i = 0; i < polygons.size(); ++i) {
    s.partner_[i].assign(polygons[i].size(), EdgeRef{});
    s.edge_class_[i].assign(polygons[i].size(), -1);
  }

  auto check_ref = [&](EdgeRef e) {
    if (e.polygon < 0 || static_cast<std::size_t>(e.polygon) >= polygons.size() || e.edge < 0 ||
        static_cast<std::size_t>(e.edge) >= polygons[static_cast<std::size_t>(e.polygon)].size())
      throw Error(ErrorCode::UnmatchedEdge, "gluing references a nonexistent edge");
  };

  for (std::size_t k = 0; k < gluings.size(); ++k) {
    const auto [a, b] = gluings[k];
    check_ref(a);
    check_ref(b);
    if (a == b) throw Error(ErrorCode::NonTranslationGluing, "edge " + edge_name(polygons, a) + " glued to itself");
    for (EdgeRef e : {a, b}) {
      auto& slot = s.edge_class_[static_cast<std::size_t>(e.polygon)][static_cast<std::size_t>(e.edge)];
      if (slot != -1)
        throw Error(ErrorCode::UnmatchedEdge, "edge " + edge_name(polygons, e) + " appears in two gluings");
      slot = static_cast<int>(k);
    }
    const Vec2 va = polygons[static_cast<std::size_t>(a.polygon)].edge(static_cast<std::size_t>(a.edge));
    const Vec2 vb = polygons[static_cast<std::size_t>(b.polygon)].edge(static_cast<std::size_t>(b.edge));
    const double scale = std::max(1.0, va.norm());
    if (std::abs(va.norm() - vb.norm()) > options.geom_tol * scale)
      throw Error(ErrorCode::UnmatchedEdge,
                  "edges " + edge_name(polygons, a) + " and " + edge_name(polygons, b) + " differ in length");
    if ((va + vb).norm() > options.geom_tol * scale)
      throw Error(ErrorCode::NonTranslationGluing,
                  "edges " + edge_name(polygons, a) + " and " + edge_name(polygons, b) + " are not related by a translation");
    s.partner_[static_cast<std::size_t>(a.polygon)][static_cast<std::size_t>(a.edge)] = b;
    s.partner_[static_cast<std::size_t>(b.polygon)][static_cast<std::size_t>(b.edge)] = a;
  }
  for (std::size_t i = 0; i < polygons.size(); ++i)
    for (std::size_t j = 0; j < polygons[i].size(); ++j)
      if (s.edge_class_[i][j] == -1)
        throw Error(ErrorCode::UnmatchedEdge,
                    "edge " + edge_name(polygons, {static_cast<int>(i), static_cast<int>(j)}) + " is not glued");

  s.polygons_ = std::move(polygons);
  s.gluings_ = std::move(gluings);

  // Connectedness of the polygon adjacency graph.
  {
    std::vector<char> seen(s.polygons_.size(), 0);
    std::queue<int> q;
    q.push(0);
    seen[0] = 1;
    while (!q.empty()) {
      const int p = q.front();
      q.pop();
      for (const auto& e : s.partner_[static_cast<std::size_t>(p)])
        if (!seen[static_cast<std::size_t>(e.polygon)]) {
          seen[static_cast<std::size_t>(e.polygon)] = 1;
          q.push(e.polygon);
        }
    }
    if (std::find(seen.begin(), seen.end(), 0) != seen.end())
      throw Error(ErrorCode::InvalidArgument, "polygon gluing is not connected");
  }

  // Vertex orbits: rotating clockwise past the outgoing edge of corner (P, k)
  // lands in the corner of the partner polygon that ends the glued edge.
  s.corner_orbit_.resize(s.polygons_.size());
  for (std::size_t i = 0; i < s.polygons_.size(); ++i) s.corner_orbit_[i].assign(s.polygons_[i].size(), -1);
  for (std::size_t i = 0; i < s.polygons_.size(); ++i) {
    for (std::size_t k = 0; k < s.polygons_[i].size(); ++k) {
      if (s.corner_orbit_[i][k] != -1) continue;
      ConePoint cp;
      Corner c{static_cast<int>(i), static_cast<int>(k)};
      const int id = static_cast<int>(s.cone_points_.size());
      std::size_t guard = 0;
      do {
        auto& slot = s.corner_orbit_[static_cast<std::size_t>(c.polygon)][static_cast<std::size_t>(c.vertex)];
        if (slot != -1) throw Error(ErrorCode::NonManifoldVertex, "vertex orbit is not a simple cycle");
        slot = id;
        cp.corners.push_back(c);
        const auto& poly = s.polygons_[static_cast<std::size_t>(c.polygon)];
        const std::size_t n = poly.size();
        const std::size_t v = static_cast<std::size_t>(c.vertex);
        cp.total_angle += ccw_angle(poly.edge(v), poly.vertex(v + n - 1) - poly.vertex(v));
        const EdgeRef out = s.partner_[static_cast<std::size_t>(c.polygon)][v];
        const auto m = s.polygons_[static_cast<std::size_t>(out.polygon)].size();
        c = Corner{out.polygon, static_cast<int>((static_cast<std::size_t>(out.edge) + 1) % m)};
        if (++guard > 100000) throw Error(ErrorCode::NonManifoldVertex, "runaway vertex orbit");
      } while (!(c == Corner{static_cast<int>(i), static_cast<int>(k)}));
      // Counterclockwise order around the point is the reverse of the walk.
      std::reverse(cp.corners.begin() + 1, cp.corners.end());
      const double multiple = cp.total_angle / (2.0 * M_PI);
      const double snapped = std::round(multiple);
      if (snapped < 1.0 || std::abs(multiple - snapped) > options.cone_snap_tol)
        throw Error(ErrorCode::NonManifoldVertex,
                    "cone angle " + std::to_string(cp.total_angle) + " is not a positive multiple of 2 pi");
      cp.angle_multiple = static_cast<int>(snapped);
      s.cone_points_.push_back(std::move(cp));
    }
  }

  const int V = static_cast<int>(s.cone_points_.size());
  const int E = static_cast<int>(s.gluings_.size());
  const int F = static_cast<int>(s.polygons_.size());
  const int chi = V - E + F;
  if (chi > 2 || (2 - chi) % 2 != 0) throw Error(ErrorCode::NonManifoldVertex, "impossible Euler characteristic");
  s.genus_ = (2 - chi) / 2;
  int kappa_sum = 0;
  for (const auto& cp : s.cone_points_) {
    kappa_sum += cp.kappa();
    if (cp.kappa() > 0) s.stratum_.kappa.push_back(cp.kappa());
  }
  std::sort(s.stratum_.kappa.rbegin(), s.stratum_.kappa.rend());
  if (kappa_sum != 2 * s.genus_ - 2)
    throw Error(ErrorCode::NonManifoldVertex, "cone angles violate Gauss-Bonnet (sum kappa = " +
                                                  std::to_string(kappa_sum) + ", genus " + std::to_string(s.genus_) + ")");
  if (s.genus_ < 1) throw Error(ErrorCode::NonManifoldVertex, "translation surfaces have genus >= 1");

  for (const auto& p : s.polygons_) s.area_ += p.signed_area();
  return s;
}

bool TranslationSurface::all_convex() const {
  return std::all_of(polygons_.begin(), polygons_.end(), [](const PlanarPolygon& p) { return p.is_convex(); });
}

EdgeRef TranslationSurface::partner(EdgeRef e) const {
  return partner_[static_cast<std::size_t>(e.polygon)][static_cast<std::size_t>(e.edge)];
}

int TranslationSurface::edge_class(EdgeRef e) const {
  return edge_class_[static_cast<std::size_t>(e.polygon)][static_cast<std::size_t>(e.edge)];
}

int TranslationSurface::edge_sign(EdgeRef e) const {
  return gluings_[static_cast<std::size_t>(edge_class(e))].a == e ? 1 : -1;
}

int TranslationSurface::vertex_orbit(Corner c) const {
  return corner_orbit_[static_cast<std::size_t>(c.polygon)][static_cast<std::size_t>(c.vertex)];
}

Vec2 TranslationSurface::class_vector(int k) const {
  const EdgeRef a = gluings_[static_cast<std::size_t>(k)].a;
  return polygon(a.polygon).edge(static_cast<std::size_t>(a.edge));
}

int TranslationSurface::class_tail(int k) const {
  const EdgeRef a = gluings_[static_cast<std::size_t>(k)].a;
  return vertex_orbit({a.polygon, a.edge});
}

int TranslationSurface::class_head(int k) const {
  const EdgeRef a = gluings_[static_cast<std::size_t>(k)].a;
  const int n = static_cast<int>(polygon(a.polygon).size());
  return vertex_orbit({a.polygon, (a.edge + 1) % n});
}

TranslationSurface TranslationSurface::transformed(const Mat2& A) const {
  const double det = A.det();
  if (std::abs(det) < 1e-300 || !std::isfinite(det)) throw Error(ErrorCode::SingularMatrix, "det A = 0");
  std::vector<PlanarPolygon> polys = polygons_;
  std::vector<EdgeGluing> glue = gluings_;
  if (det > 0) {
    for (auto& p : polys)
      for (auto& v : p.vertices) v = A * v;
  } else {
    // Orientation reversal: w_i = A v_{-i}; old edge k becomes new edge n-1-k.
    for (auto& p : polys) {
      const std::size_t n = p.size();
      std::vector<Vec2> w(n);
      for (std::size_t i = 0; i < n; ++i) w[i] = A * p.vertex(n - i);
      p.vertices = std::move(w);
    }
    auto remap = [&](EdgeRef e) {
      const int n = static_cast<int>(polys[static_cast<std::size_t>(e.polygon)].size());
      return EdgeRef{e.polygon, n - 1 - e.edge};
    };
    for (auto& g : glue) g = {remap(g.a), remap(g.b)};
  }
  return build(std::move(polys), std::move(glue));
}

TranslationSurface TranslationSurface::rescaled_to_unit_area() const {
  const double s = 1.0 / std::sqrt(area_);
  return transformed(Mat2::diagonal(s, s));
}

TranslationSurface apply_gl2(const Mat2& A, const TranslationSurface& s) { return s.transformed(A); }

TranslationSurface square_torus(double side) {
  PlanarPolygon sq{"Q", {{0, 0}, {side, 0}, {side, side}, {0, side}}};
  return TranslationSurface::build({sq}, {{{0, 0}, {0, 2}}, {{0, 1}, {0, 3}}});
}

TranslationSurface regular_octagon_surface(bool unit_area) {
  PlanarPolygon oct{"O", {}};
  for (int k = 0; k < 8; ++k) {
    const double ang = -5.0 * M_PI / 8.0 + k * M_PI / 4.0;
    oct.vertices.push_back({std::cos(ang), std::sin(ang)});
  }
  std::vector<EdgeGluing> glue;
  for (int k = 0; k < 4; ++k) glue.push_back({{0, k}, {0, k + 4}});
  auto s = TranslationSurface::build({oct}, glue);
  return unit_area ? s.rescaled_to_unit_area() : s;
}

}  // namespace flatline
