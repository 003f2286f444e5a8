#include "flatline/mesh.hpp"

#include <algorithm>
#include <cmath>

#include "flatline/error.hpp"

namespace flatline {

namespace {

double corner_angle(Vec2 a, Vec2 b, Vec2 c) {
  // Angle at a in triangle (a, b, c).
  const Vec2 u = b - a, w = c - a;
  return std::atan2(std::abs(cross(u, w)), dot(u, w));
}

}  // namespace

class MeshBuilder {
 public:
  MeshBuilder(const TranslationSurface& s, FlatMesh& m) : s_(s), m_(m) {}

  void level0() {
    m_.num_cone_vertices_ = s_.num_vertices();
    m_.num_vertices_ = s_.num_vertices();
    m_.max_poly_ = 0;
    for (const auto& p : s_.polygons()) m_.max_poly_ = std::max(m_.max_poly_, static_cast<int>(p.size()));
    for (int k = 0; k < static_cast<int>(s_.gluings().size()); ++k) m_.edges_.push_back({s_.class_tail(k), s_.class_head(k)});

    for (int pi = 0; pi < static_cast<int>(s_.polygons().size()); ++pi) {
      const auto& poly = s_.polygon(pi);
      const int n = static_cast<int>(poly.size());
      auto corner = [&](int j) {
        Pt pt;
        pt.v = s_.vertex_orbit({pi, j});
        pt.p = poly.vertex(static_cast<std::size_t>(j));
        pt.w.assign(static_cast<std::size_t>(m_.max_poly_), 0.0);
        pt.w[static_cast<std::size_t>(j)] = 1.0;
        return pt;
      };
      auto boundary = [&](int j) {
        return Side{s_.edge_class({pi, j}), s_.edge_sign({pi, j})};
      };
      if (n == 3) {
        add_triangle(pi, {corner(0), corner(1), corner(2)}, {boundary(0), boundary(1), boundary(2)});
      } else if (n == 4) {
        // Split along the diagonal lying inside with the better shape.
        const bool use02 = cross(poly.vertex(2) - poly.vertex(0), poly.vertex(1) - poly.vertex(0)) < 0.0 &&
                           cross(poly.vertex(2) - poly.vertex(0), poly.vertex(3) - poly.vertex(0)) > 0.0;
        const bool use13 = cross(poly.vertex(3) - poly.vertex(1), poly.vertex(2) - poly.vertex(1)) < 0.0 &&
                           cross(poly.vertex(3) - poly.vertex(1), poly.vertex(0) - poly.vertex(1)) > 0.0;
        bool pick02 = use02;
        if (use02 && use13)
          pick02 = (poly.vertex(2) - poly.vertex(0)).norm() <= (poly.vertex(3) - poly.vertex(1)).norm() * (1.0 + 1e-9);
        const int a = pick02 ? 0 : 1;
        const int d = new_edge(corner(a).v, corner(a + 2).v);
        add_triangle(pi, {corner(a), corner(a + 1), corner(a + 2)}, {boundary(a), boundary(a + 1), Side{d, -1}});
        add_triangle(pi, {corner(a + 2), corner((a + 3) % 4), corner(a)}, {boundary(a + 2), boundary((a + 3) % 4), Side{d, 1}});
      } else {
        Pt c;
        c.v = m_.num_vertices_++;
        c.p = poly.centroid();
        c.w.assign(static_cast<std::size_t>(m_.max_poly_), 0.0);
        for (int j = 0; j < n; ++j) c.w[static_cast<std::size_t>(j)] = 1.0 / n;
        std::vector<int> spokes;
        for (int j = 0; j < n; ++j) spokes.push_back(new_edge(corner(j).v, c.v));
        for (int j = 0; j < n; ++j)
          add_triangle(pi, {corner(j), corner((j + 1) % n), c},
                       {boundary(j), Side{spokes[static_cast<std::size_t>((j + 1) % n)], 1}, Side{spokes[static_cast<std::size_t>(j)], -1}});
      }
    }
  }

  void red_refine() {
    FlatMesh old = std::move(m_);
    m_ = FlatMesh{};
    m_.max_poly_ = old.max_poly_;
    m_.num_cone_vertices_ = old.num_cone_vertices_;
    m_.num_vertices_ = old.num_vertices_;
    m_.weights_.clear();
    incidence_.clear();
    // Child edges 2k (v0 -> mid) and 2k+1 (mid -> v1) of old edge k.
    std::vector<int> mid(old.edges_.size());
    for (std::size_t k = 0; k < old.edges_.size(); ++k) {
      mid[k] = m_.num_vertices_++;
      m_.edges_.push_back({old.edges_[k].v0, mid[k]});
      m_.edges_.push_back({mid[k], old.edges_[k].v1});
    }
    const auto stride = static_cast<std::size_t>(old.max_poly_);
    for (std::size_t t = 0; t < old.tris_.size(); ++t) {
      const auto& T = old.tris_[t];
      std::array<Pt, 3> c, mids;
      for (int k = 0; k < 3; ++k) {
        c[static_cast<std::size_t>(k)] = {T.v[static_cast<std::size_t>(k)], T.p[static_cast<std::size_t>(k)],
                                          std::vector<double>(old.weights_.begin() + static_cast<long>((t * 3 + static_cast<std::size_t>(k)) * stride),
                                                              old.weights_.begin() + static_cast<long>((t * 3 + static_cast<std::size_t>(k) + 1) * stride))};
      }
      for (int k = 0; k < 3; ++k) {
        const auto ku = static_cast<std::size_t>(k), kn = static_cast<std::size_t>((k + 1) % 3);
        Pt md;
        md.v = mid[static_cast<std::size_t>(T.e[ku])];
        md.p = (c[ku].p + c[kn].p) * 0.5;
        md.w.resize(stride);
        for (std::size_t j = 0; j < stride; ++j) md.w[j] = 0.5 * (c[ku].w[j] + c[kn].w[j]);
        mids[ku] = md;
      }
      // Half of edge k next to corner k, and next to corner k+1.
      auto half = [&](int k, bool first) {
        const int e = T.e[static_cast<std::size_t>(k)];
        const int sg = T.sign[static_cast<std::size_t>(k)];
        const bool child_first = (sg > 0) == first;
        return Side{2 * e + (child_first ? 0 : 1), sg};
      };
      const int i01 = new_edge(mids[0].v, mids[1].v);
      const int i12 = new_edge(mids[1].v, mids[2].v);
      const int i20 = new_edge(mids[2].v, mids[0].v);
      add_triangle(T.polygon, {c[0], mids[0], mids[2]}, {half(0, true), Side{i20, -1}, half(2, false)});
      add_triangle(T.polygon, {mids[0], c[1], mids[1]}, {half(0, false), half(1, true), Side{i01, -1}});
      add_triangle(T.polygon, {mids[2], mids[1], c[2]}, {Side{i12, -1}, half(1, false), half(2, true)});
      add_triangle(T.polygon, {mids[0], mids[1], mids[2]}, {Side{i01, 1}, Side{i12, 1}, Side{i20, 1}});
    }
    m_.basis_ = std::move(old.basis_);
    m_.polygon_potentials_ = std::move(old.polygon_potentials_);
  m_.holonomy_ = std::move(old.holonomy_);
    m_.level_ = old.level_ + 1;
  }

  // Longest-edge bisection toward cone points of angle 2 pi (k + 1), k >= 1,
  // until every triangle has longest edge <= h min(1, r / radius)^(1 - mu),
  // mu = strength / (k + 1), r the centroid's distance to the cone point.
  void grade(double h, double strength, double radius) {
    struct Target {
      Vec2 p;
      double power;
    };
    std::vector<std::vector<Target>> cones(s_.polygons().size());
    for (int p = 0; p < static_cast<int>(s_.polygons().size()); ++p)
      for (int i = 0; i < static_cast<int>(s_.polygon(p).size()); ++i) {
        const int k = cone_multiple_[static_cast<std::size_t>(s_.vertex_orbit({p, i}))] - 1;
        if (k >= 1)
          cones[static_cast<std::size_t>(p)].push_back(
              {s_.polygon(p).vertex(static_cast<std::size_t>(i)), 1.0 - std::min(1.0, strength / (k + 1))});
      }
    auto too_big = [&](int t) {
      const auto& T = m_.tris_[static_cast<std::size_t>(t)];
      const Vec2 c = (T.p[0] + T.p[1] + T.p[2]) * (1.0 / 3.0);
      double target = h;
      for (const auto& cone : cones[static_cast<std::size_t>(T.polygon)])
        target = std::min(target, h * std::pow(std::min(1.0, (c - cone.p).norm() / radius), cone.power));
      return edge_len(t, longest_slot(t)) > target * (1.0 + 1e-9);
    };
    rebuild_incidence();
    for (int pass = 0; pass < 200; ++pass) {
      std::vector<int> targets;
      for (int t = 0; t < static_cast<int>(m_.tris_.size()); ++t)
        if (too_big(t)) targets.push_back(t);
      if (targets.empty()) return;
      for (int t : targets)
        if (too_big(t)) refine(t);
    }
    throw Error(ErrorCode::DegenerateTriangle, "cone grading did not terminate");
  }

 private:
  struct Pt {
    int v = -1;
    Vec2 p;
    std::vector<double> w;
  };
  struct Side {
    int edge;
    int sign;
  };

  int new_edge(int a, int b) {
    m_.edges_.push_back({a, b});
    return static_cast<int>(m_.edges_.size()) - 1;
  }

  void add_triangle(int polygon, const std::array<Pt, 3>& c, const std::array<Side, 3>& sides) {
    FlatMesh::Triangle T;
    T.polygon = polygon;
    for (std::size_t k = 0; k < 3; ++k) {
      T.v[k] = c[k].v;
      T.p[k] = c[k].p;
      T.e[k] = sides[k].edge;
      T.sign[k] = sides[k].sign;
      m_.weights_.insert(m_.weights_.end(), c[k].w.begin(), c[k].w.end());
    }
    m_.tris_.push_back(T);
  }

  bool touches_cone(int t) const {
    for (int v : m_.tris_[static_cast<std::size_t>(t)].v)
      if (v < m_.num_cone_vertices_ && cone_multiple_[static_cast<std::size_t>(v)] >= 2) return true;
    return false;
  }

 public:
  std::vector<int> cone_multiple_;

 private:
  // (triangle, slot) pairs for each edge.
  std::vector<std::vector<std::pair<int, int>>> incidence_;

  void rebuild_incidence() {
    incidence_.assign(m_.edges_.size(), {});
    for (int t = 0; t < static_cast<int>(m_.tris_.size()); ++t)
      for (int k = 0; k < 3; ++k)
        incidence_[static_cast<std::size_t>(m_.tris_[static_cast<std::size_t>(t)].e[static_cast<std::size_t>(k)])].push_back({t, k});
  }

  double edge_len(int t, int k) const {
    const auto& T = m_.tris_[static_cast<std::size_t>(t)];
    return (T.p[static_cast<std::size_t>((k + 1) % 3)] - T.p[static_cast<std::size_t>(k)]).norm();
  }

  int longest_slot(int t) const {
    int best = 0;
    for (int k = 1; k < 3; ++k) {
      const double lk = edge_len(t, k), lb = edge_len(t, best);
      const auto& T = m_.tris_[static_cast<std::size_t>(t)];
      if (lk > lb * (1.0 + 1e-6) ||
          (lk >= lb * (1.0 - 1e-6) && T.e[static_cast<std::size_t>(k)] < T.e[static_cast<std::size_t>(best)]))
        best = k;
    }
    return best;
  }

  std::pair<int, int> other_side(int edge, int t, int slot) const {
    for (const auto& [tt, ss] : incidence_[static_cast<std::size_t>(edge)])
      if (tt != t || ss != slot) return {tt, ss};
    return {-1, -1};
  }

  void refine(int t) {
    for (int guard = 0; guard < 10000; ++guard) {
      const int k = longest_slot(t);
      const int e = m_.tris_[static_cast<std::size_t>(t)].e[static_cast<std::size_t>(k)];
      const auto [n, nk] = other_side(e, t, k);
      if (n < 0) throw Error(ErrorCode::DegenerateTriangle, "mesh edge with one side");
      if (n == t || longest_slot(n) == nk) {
        bisect_pair(t, k, n, nk);
        return;
      }
      refine(n);
    }
    throw Error(ErrorCode::DegenerateTriangle, "longest-edge bisection did not terminate");
  }

  // Split triangle t at slot k through a new vertex `mv` on that edge.
  void split(int t, int k, int mv, int half_at_tail, int half_at_head) {
    FlatMesh::Triangle T = m_.tris_[static_cast<std::size_t>(t)];
    const auto stride = static_cast<std::size_t>(m_.max_poly_);
    const auto ku = static_cast<std::size_t>(k), kn = static_cast<std::size_t>((k + 1) % 3), ko = static_cast<std::size_t>((k + 2) % 3);
    const Vec2 pm = (T.p[ku] + T.p[kn]) * 0.5;
    std::vector<double> wm(stride);
    std::vector<std::vector<double>> w(3);
    for (std::size_t j = 0; j < 3; ++j)
      w[j].assign(m_.weights_.begin() + static_cast<long>((static_cast<std::size_t>(t) * 3 + j) * stride),
                  m_.weights_.begin() + static_cast<long>((static_cast<std::size_t>(t) * 3 + j + 1) * stride));
    for (std::size_t j = 0; j < stride; ++j) wm[j] = 0.5 * (w[ku][j] + w[kn][j]);
    const int cut = new_edge(T.v[ko], mv);
    incidence_.emplace_back();

    // First child: (v_k, m, v_o); second: (m, v_k+1, v_o).
    FlatMesh::Triangle A, B;
    A.polygon = B.polygon = T.polygon;
    A.v = {T.v[ku], mv, T.v[ko]};
    A.p = {T.p[ku], pm, T.p[ko]};
    A.e = {half_at_tail, cut, T.e[ko]};
    A.sign = {T.sign[ku], -1, T.sign[ko]};
    B.v = {mv, T.v[kn], T.v[ko]};
    B.p = {pm, T.p[kn], T.p[ko]};
    B.e = {half_at_head, T.e[kn], cut};
    B.sign = {T.sign[ku], T.sign[kn], 1};

    const int tb = static_cast<int>(m_.tris_.size());
    m_.tris_[static_cast<std::size_t>(t)] = A;
    m_.tris_.push_back(B);
    const std::array<std::vector<double>, 3> wa{w[ku], wm, w[ko]}, wb{wm, w[kn], w[ko]};
    for (std::size_t j = 0; j < 3; ++j)
      std::copy(wa[j].begin(), wa[j].end(), m_.weights_.begin() + static_cast<long>((static_cast<std::size_t>(t) * 3 + j) * stride));
    for (std::size_t j = 0; j < 3; ++j) m_.weights_.insert(m_.weights_.end(), wb[j].begin(), wb[j].end());

    // Incidence updates.
    auto replace = [&](int edge, int old_t, int old_s, int new_t, int new_s) {
      for (auto& ts : incidence_[static_cast<std::size_t>(edge)])
        if (ts.first == old_t && ts.second == old_s) {
          ts = {new_t, new_s};
          return;
        }
    };
    replace(T.e[kn], t, static_cast<int>(kn), tb, 1);
    replace(T.e[ko], t, static_cast<int>(ko), t, 2);
    incidence_[static_cast<std::size_t>(cut)].push_back({t, 1});
    incidence_[static_cast<std::size_t>(cut)].push_back({tb, 2});
    incidence_[static_cast<std::size_t>(half_at_tail)].push_back({t, 0});
    incidence_[static_cast<std::size_t>(half_at_head)].push_back({tb, 0});
  }

  void bisect_pair(int t, int k, int n, int nk) {
    const int e = m_.tris_[static_cast<std::size_t>(t)].e[static_cast<std::size_t>(k)];
    const FlatMesh::Edge old = m_.edges_[static_cast<std::size_t>(e)];
    const int mv = m_.num_vertices_++;
    // Edge e becomes v0 -> m; a new edge carries m -> v1.
    m_.edges_[static_cast<std::size_t>(e)] = {old.v0, mv};
    const int e2 = new_edge(mv, old.v1);
    incidence_[static_cast<std::size_t>(e)].clear();
    incidence_.emplace_back();
    auto halves = [&](int tri, int slot, int& at_tail, int& at_head) {
      const bool forward = m_.tris_[static_cast<std::size_t>(tri)].sign[static_cast<std::size_t>(slot)] > 0;
      at_tail = forward ? e : e2;
      at_head = forward ? e2 : e;
    };
    int a0, a1;
    halves(t, k, a0, a1);
    if (n == t) {
      throw Error(ErrorCode::DegenerateTriangle, "triangle glued to itself along its longest edge");
    }
    int b0, b1;
    halves(n, nk, b0, b1);
    split(t, k, mv, a0, a1);
    split(n, nk, mv, b0, b1);
  }

  const TranslationSurface& s_;
  FlatMesh& m_;
};

namespace {

std::vector<std::vector<Eigen::VectorXd>> polygon_boundary_potentials(const TranslationSurface& s, const HomologyBasis& basis) {
  const int n2g = static_cast<int>(basis.cocycles.size());
  std::vector<std::vector<Eigen::VectorXd>> phi(s.polygons().size());
  for (int p = 0; p < static_cast<int>(s.polygons().size()); ++p) {
    const int n = static_cast<int>(s.polygon(p).size());
    auto& ph = phi[static_cast<std::size_t>(p)];
    ph.assign(static_cast<std::size_t>(n), Eigen::VectorXd::Zero(n2g));
    for (int j = 1; j < n; ++j) {
      const int k = s.edge_class({p, j - 1});
      const int sg = s.edge_sign({p, j - 1});
      ph[static_cast<std::size_t>(j)] = ph[static_cast<std::size_t>(j - 1)];
      for (int g = 0; g < n2g; ++g)
        ph[static_cast<std::size_t>(j)][g] += sg * static_cast<double>(basis.cocycles[static_cast<std::size_t>(g)][static_cast<std::size_t>(k)]);
    }
  }
  return phi;
}

}  // namespace

FlatMesh FlatMesh::build(const TranslationSurface& s, int level, const MeshOptions& options) {
  if (level < 0) throw Error(ErrorCode::InvalidArgument, "mesh level must be nonnegative");
  FlatMesh m;
  MeshBuilder b(s, m);
  m.basis_ = homology_basis(s);
  m.polygon_potentials_ = polygon_boundary_potentials(s, m.basis_);
  const auto per = period_map(s, m.basis_);
  m.holonomy_.assign(per.begin(), per.begin() + static_cast<long>(m.basis_.cycles.size()));
  b.level0();
  for (int l = 0; l < level; ++l) b.red_refine();
  for (const auto& cp : s.cone_points()) b.cone_multiple_.push_back(cp.angle_multiple);
  if (options.grading_strength > 0.0) {
    const double radius = options.grading_radius > 0.0 ? options.grading_radius : 0.5 * std::sqrt(s.area());
    b.grade(m.max_edge_length(), options.grading_strength, radius);
  }
  for (const auto& T : m.tris_)
    if (!(T.area() > 0.0)) throw Error(ErrorCode::DegenerateTriangle, "triangle with nonpositive area");
  if (m.min_angle_deg() < options.angle_floor_deg)
    throw Error(ErrorCode::DegenerateTriangle, "minimum angle " + std::to_string(m.min_angle_deg()) + " deg below the floor");
  return m;
}

double FlatMesh::vertex_angle(int v) const {
  double sum = 0.0;
  for (const auto& T : tris_)
    for (std::size_t k = 0; k < 3; ++k)
      if (T.v[k] == v) sum += corner_angle(T.p[k], T.p[(k + 1) % 3], T.p[(k + 2) % 3]);
  return sum;
}

double FlatMesh::min_angle_deg() const {
  double best = 180.0;
  for (const auto& T : tris_)
    for (std::size_t k = 0; k < 3; ++k)
      best = std::min(best, corner_angle(T.p[k], T.p[(k + 1) % 3], T.p[(k + 2) % 3]) * 180.0 / M_PI);
  return best;
}

double FlatMesh::max_edge_length() const {
  double best = 0.0;
  for (const auto& T : tris_)
    for (std::size_t k = 0; k < 3; ++k) best = std::max(best, (T.p[(k + 1) % 3] - T.p[k]).norm());
  return best;
}

double FlatMesh::total_area() const {
  double a = 0.0;
  for (const auto& T : tris_) a += T.area();
  return a;
}

std::vector<std::array<double, 3>> FlatMesh::corner_potentials(const Eigen::VectorXd& periods) const {
  if (periods.size() != static_cast<Eigen::Index>(basis_.cycles.size()))
    throw Error(ErrorCode::BasisMismatch, "period vector length does not match the homology basis");
  // Potential at each polygon vertex for this class.
  std::vector<std::vector<double>> vertex_phi(polygon_potentials_.size());
  for (std::size_t p = 0; p < polygon_potentials_.size(); ++p)
    for (const auto& ph : polygon_potentials_[p]) vertex_phi[p].push_back(ph.dot(periods));
  std::vector<std::array<double, 3>> out(tris_.size());
  const auto stride = static_cast<std::size_t>(max_poly_);
  for (std::size_t t = 0; t < tris_.size(); ++t) {
    const auto& vp = vertex_phi[static_cast<std::size_t>(tris_[t].polygon)];
    for (std::size_t k = 0; k < 3; ++k) {
      double v = 0.0;
      const double* w = &weights_[(t * 3 + k) * stride];
      for (std::size_t j = 0; j < vp.size(); ++j) v += w[j] * vp[j];
      out[t][k] = v;
    }
  }
  return out;
}

Eigen::VectorXd FlatMesh::edge_cochain(const Eigen::VectorXd& periods) const {
  const auto phi = corner_potentials(periods);
  Eigen::VectorXd c = Eigen::VectorXd::Zero(num_edges());
  for (std::size_t t = 0; t < tris_.size(); ++t)
    for (std::size_t k = 0; k < 3; ++k)
      c[tris_[t].e[k]] = tris_[t].sign[k] * (phi[t][(k + 1) % 3] - phi[t][k]);
  return c;
}

FlatMesh FlatMesh::transformed(const Mat2& A) const {
  if (!(A.det() > 0.0)) throw Error(ErrorCode::InvalidArgument, "mesh transform must preserve orientation");
  FlatMesh m = *this;
  for (auto& T : m.tris_)
    for (auto& p : T.p) p = A * p;
  for (auto& z : m.holonomy_) z = (A * Vec2{z.real(), z.imag()}).to_complex();
  return m;
}

Eigen::VectorXd FlatMesh::re_h() const {
  Eigen::VectorXd out(static_cast<Eigen::Index>(holonomy_.size()));
  for (Eigen::Index i = 0; i < out.size(); ++i) out[i] = holonomy_[static_cast<std::size_t>(i)].real();
  return out;
}

Eigen::VectorXd FlatMesh::im_h() const {
  Eigen::VectorXd out(static_cast<Eigen::Index>(holonomy_.size()));
  for (Eigen::Index i = 0; i < out.size(); ++i) out[i] = holonomy_[static_cast<std::size_t>(i)].imag();
  return out;
}

}  // namespace flatline
