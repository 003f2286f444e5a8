#include "flatline/systole.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <queue>

#include "flatline/error.hpp"

namespace flatline {

namespace {

constexpr std::size_t kMaxWedgeNodes = 2'000'000;

struct Wedge {
  Vec2 right;  // clockwise boundary direction
  Vec2 left;   // counterclockwise boundary direction
};

bool strictly_inside(const Wedge& w, Vec2 p) {
  const double scale = p.norm() * 1e-12;
  return cross(w.right, p) > scale * w.right.norm() && cross(p, w.left) > scale * w.left.norm();
}

double segment_distance(Vec2 a, Vec2 b) {
  const Vec2 d = b - a;
  const double len2 = d.norm2();
  if (len2 == 0.0) return a.norm();
  const double t = std::clamp(-dot(a, d) / len2, 0.0, 1.0);
  return (a + d * t).norm();
}

class WedgeSearch {
 public:
  WedgeSearch(const TranslationSurface& s, double bound) : s_(s), bound_(bound) {}

  // With `shrink`, the bound drops to the shortest connection found so far.
  std::vector<Vec2> run(Corner c, bool shrink) {
    found_.clear();
    shrink_ = shrink;
    const auto& poly = s_.polygon(c.polygon);
    const std::size_t n = poly.size();
    const auto k = static_cast<std::size_t>(c.vertex);
    const Vec2 origin = poly.vertex(k);
    std::vector<Vec2> dev;
    for (std::size_t i = 0; i < n; ++i) dev.push_back(poly.vertex(i) - origin);
    const Wedge w{dev[(k + 1) % n], dev[(k + n - 1) % n]};
    record(w.right);
    record(w.left);
    for (std::size_t i = 0; i < n; ++i)
      if (i != k && i != (k + 1) % n && i != (k + n - 1) % n && strictly_inside(w, dev[i])) record(dev[i]);

    // Nearest edges first, so the search can stop as soon as the frontier
    // is farther than the bound.
    std::priority_queue<Node, std::vector<Node>, std::greater<>> queue;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == k || (j + 1) % n == k) continue;
      push(queue, {c.polygon, static_cast<int>(j), -origin, w, 0.0});
    }
    std::size_t nodes = 0;
    while (!queue.empty()) {
      const Node node = queue.top();
      queue.pop();
      if (node.distance > bound_) break;
      if (++nodes > kMaxWedgeNodes)
        throw Error(ErrorCode::NonConvergence, "saddle connection search exceeded its node budget");
      expand(node, queue);
    }
    return found_;
  }

 private:
  struct Node {
    int polygon;
    int edge;
    Vec2 offset;  // polygon drawn at vertex + offset
    Wedge wedge;
    double distance;
    bool operator>(const Node& o) const { return distance > o.distance; }
  };
  using Queue = std::priority_queue<Node, std::vector<Node>, std::greater<>>;

  void push(Queue& q, Node node) const {
    const auto& poly = s_.polygon(node.polygon);
    node.distance = segment_distance(poly.vertex(static_cast<std::size_t>(node.edge)) + node.offset,
                                     poly.vertex(static_cast<std::size_t>(node.edge) + 1) + node.offset);
    q.push(node);
  }

  void record(Vec2 v) {
    const double len = v.norm();
    if (len <= bound_) {
      found_.push_back(v);
      if (shrink_) bound_ = len;
    }
  }

  // Continue the wedge through the node's edge into the glued polygon.
  void expand(const Node& node, Queue& queue) {
    const auto& poly = s_.polygon(node.polygon);
    const Vec2 a = poly.vertex(static_cast<std::size_t>(node.edge)) + node.offset;
    const Vec2 b = poly.vertex(static_cast<std::size_t>(node.edge) + 1) + node.offset;
    Vec2 er = a, el = b;
    if (cross(er, el) < 0.0) std::swap(er, el);
    const Wedge& w = node.wedge;
    const Wedge nw{cross(w.right, er) > 0.0 ? er : w.right, cross(el, w.left) > 0.0 ? el : w.left};
    if (cross(nw.right, nw.left) <= 1e-14 * nw.right.norm() * nw.left.norm()) return;

    const EdgeRef q = s_.partner({node.polygon, node.edge});
    const auto& qpoly = s_.polygon(q.polygon);
    const std::size_t m = qpoly.size();
    const Vec2 offset = a - qpoly.vertex(static_cast<std::size_t>(q.edge) + 1);
    for (std::size_t i = 0; i < m; ++i)
      if (strictly_inside(nw, qpoly.vertex(i) + offset)) record(qpoly.vertex(i) + offset);
    for (std::size_t i = 0; i < m; ++i)
      if (static_cast<int>(i) != q.edge) push(queue, {q.polygon, static_cast<int>(i), offset, nw, 0.0});
  }

  const TranslationSurface& s_;
  double bound_;
  bool shrink_ = false;
  std::vector<Vec2> found_;
};

}  // namespace

std::vector<Vec2> saddle_connections_from(const TranslationSurface& s, Corner c, double bound) {
  if (!s.all_convex()) throw Error(ErrorCode::NonConvexPolygon, "saddle connection search needs convex polygons");
  if (!(bound > 0.0)) throw Error(ErrorCode::InvalidArgument, "systole bound must be positive");
  return WedgeSearch(s, bound).run(c, false);
}

double systole(const TranslationSurface& s, double bound) {
  if (!s.all_convex()) throw Error(ErrorCode::NonConvexPolygon, "saddle connection search needs convex polygons");
  if (!(bound > 0.0)) throw Error(ErrorCode::InvalidArgument, "systole bound must be positive");
  double best = kNoSaddleConnection;
  for (const auto& cp : s.cone_points()) {
    for (const auto& c : cp.corners) {
      WedgeSearch search(s, std::min(bound, best));
      for (const Vec2& v : search.run(c, true)) best = std::min(best, v.norm());
    }
  }
  return best;
}

}  // namespace flatline
