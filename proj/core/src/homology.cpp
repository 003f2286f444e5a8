#include "flatline/homology.hpp"

#include <cmath>
#include <queue>
#include <sstream>

#include "flatline/error.hpp"

namespace flatline {

namespace {

EdgeChain zero_chain(int n) { return EdgeChain(static_cast<std::size_t>(n), 0); }

void add_to(EdgeChain& acc, const EdgeChain& c, long factor) {
  for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += factor * c[i];
}

// Constant 1-form on the triangle (p0, p1, p2) with the given integrals along
// p0->p1 and p0->p2.
Vec2 whitney_form(Vec2 p0, Vec2 p1, Vec2 p2, double w01, double w02) {
  const Vec2 e1 = p1 - p0, e2 = p2 - p0;
  const double det = cross(e1, e2);
  return {(w01 * e2.y - w02 * e1.y) / det, (e1.x * w02 - e2.x * w01) / det};
}

}  // namespace

std::string HomologyBasis::describe() const {
  std::ostringstream out;
  auto list = [&](const char* name, const std::vector<int>& v) {
    out << name << "=[";
    for (std::size_t i = 0; i < v.size(); ++i) out << (i ? "," : "") << v[i];
    out << "]";
  };
  out << "tree-cotree ";
  list("tree", tree_edges);
  out << " ";
  list("cotree", cotree_edges);
  out << " ";
  list("generators", generator_edges);
  return out.str();
}

HomologyBasis homology_basis(const TranslationSurface& s) {
  HomologyBasis hb;
  const int E = static_cast<int>(s.gluings().size());
  const int V = s.num_vertices();
  const int F = static_cast<int>(s.polygons().size());
  hb.num_edge_classes = E;

  // Primal spanning tree over vertex orbits.
  std::vector<std::vector<std::pair<int, int>>> adj(static_cast<std::size_t>(V));
  for (int k = 0; k < E; ++k) {
    const int t = s.class_tail(k), h = s.class_head(k);
    if (t == h) continue;
    adj[static_cast<std::size_t>(t)].push_back({k, h});
    adj[static_cast<std::size_t>(h)].push_back({k, t});
  }
  std::vector<int> parent_edge(static_cast<std::size_t>(V), -1);
  std::vector<int> parent_vertex(static_cast<std::size_t>(V), -1);
  std::vector<char> in_tree(static_cast<std::size_t>(E), 0);
  {
    std::vector<char> seen(static_cast<std::size_t>(V), 0);
    std::queue<int> q;
    q.push(0);
    seen[0] = 1;
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      for (const auto& [k, w] : adj[static_cast<std::size_t>(u)]) {
        if (seen[static_cast<std::size_t>(w)]) continue;
        seen[static_cast<std::size_t>(w)] = 1;
        parent_edge[static_cast<std::size_t>(w)] = k;
        parent_vertex[static_cast<std::size_t>(w)] = u;
        in_tree[static_cast<std::size_t>(k)] = 1;
        hb.tree_edges.push_back(k);
        q.push(w);
      }
    }
  }

  // Chain from vertex v down the tree to the root.
  std::vector<EdgeChain> to_root(static_cast<std::size_t>(V), zero_chain(E));
  {
    // Parents are discovered before children, so walk in BFS discovery order.
    std::vector<int> order{0};
    for (std::size_t i = 0; i < order.size(); ++i)
      for (int w = 0; w < V; ++w)
        if (parent_vertex[static_cast<std::size_t>(w)] == order[i]) order.push_back(w);
    for (std::size_t i = 1; i < order.size(); ++i) {
      const int v = order[i];
      const int k = parent_edge[static_cast<std::size_t>(v)];
      const int p = parent_vertex[static_cast<std::size_t>(v)];
      to_root[static_cast<std::size_t>(v)] = to_root[static_cast<std::size_t>(p)];
      // Step v -> p along class k.
      to_root[static_cast<std::size_t>(v)][static_cast<std::size_t>(k)] += (s.class_tail(k) == v) ? 1 : -1;
    }
  }

  // Dual spanning tree over polygons through non-tree edges.
  std::vector<int> poly_parent_class(static_cast<std::size_t>(F), -1);
  std::vector<int> poly_order{0};
  std::vector<char> in_cotree(static_cast<std::size_t>(E), 0);
  {
    std::vector<char> seen(static_cast<std::size_t>(F), 0);
    seen[0] = 1;
    for (std::size_t i = 0; i < poly_order.size(); ++i) {
      const int p = poly_order[i];
      const int n = static_cast<int>(s.polygon(p).size());
      for (int j = 0; j < n; ++j) {
        const int k = s.edge_class({p, j});
        if (in_tree[static_cast<std::size_t>(k)] || in_cotree[static_cast<std::size_t>(k)]) continue;
        const int q = s.partner({p, j}).polygon;
        if (seen[static_cast<std::size_t>(q)]) continue;
        seen[static_cast<std::size_t>(q)] = 1;
        in_cotree[static_cast<std::size_t>(k)] = 1;
        hb.cotree_edges.push_back(k);
        poly_parent_class[static_cast<std::size_t>(q)] = k;
        poly_order.push_back(q);
      }
    }
  }

  for (int k = 0; k < E; ++k)
    if (!in_tree[static_cast<std::size_t>(k)] && !in_cotree[static_cast<std::size_t>(k)]) hb.generator_edges.push_back(k);
  if (static_cast<int>(hb.generator_edges.size()) != 2 * s.genus())
    throw Error(ErrorCode::BasisMismatch, "tree-cotree produced the wrong number of generators");

  for (int k : hb.generator_edges) {
    EdgeChain c = zero_chain(E);
    c[static_cast<std::size_t>(k)] = 1;
    add_to(c, to_root[static_cast<std::size_t>(s.class_head(k))], 1);
    add_to(c, to_root[static_cast<std::size_t>(s.class_tail(k))], -1);
    hb.cycles.push_back(std::move(c));
  }
  for (int v = 1; v < V; ++v) {
    EdgeChain c = zero_chain(E);
    add_to(c, to_root[static_cast<std::size_t>(v)], -1);
    hb.relative_cycles.push_back(std::move(c));
  }

  // Dual cocycles: fixed on generators, zero on the tree, and solved on the
  // cotree by peeling leaves of the dual tree.
  for (std::size_t g = 0; g < hb.generator_edges.size(); ++g) {
    EdgeChain xi = zero_chain(E);
    xi[static_cast<std::size_t>(hb.generator_edges[g])] = 1;
    for (std::size_t i = poly_order.size(); i-- > 1;) {
      const int p = poly_order[i];
      const int kc = poly_parent_class[static_cast<std::size_t>(p)];
      const int n = static_cast<int>(s.polygon(p).size());
      long sum = 0;
      int sign_c = 0;
      for (int j = 0; j < n; ++j) {
        const int k = s.edge_class({p, j});
        const int sg = s.edge_sign({p, j});
        if (k == kc)
          sign_c += sg;
        else
          sum += sg * xi[static_cast<std::size_t>(k)];
      }
      xi[static_cast<std::size_t>(kc)] = -sum / sign_c;
    }
    hb.cocycles.push_back(std::move(xi));
  }

  // Cup pairing through constant Whitney forms on a fan of each polygon; the
  // result is an exact integer up to rounding.
  const int n2g = static_cast<int>(hb.cycles.size());
  Eigen::MatrixXd cup = Eigen::MatrixXd::Zero(n2g, n2g);
  for (int p = 0; p < F; ++p) {
    const auto& poly = s.polygon(p);
    const int n = static_cast<int>(poly.size());
    std::vector<std::vector<double>> phi(static_cast<std::size_t>(n2g), std::vector<double>(static_cast<std::size_t>(n), 0.0));
    for (int g = 0; g < n2g; ++g)
      for (int j = 1; j < n; ++j) {
        const int k = s.edge_class({p, j - 1});
        phi[static_cast<std::size_t>(g)][static_cast<std::size_t>(j)] =
            phi[static_cast<std::size_t>(g)][static_cast<std::size_t>(j - 1)] +
            s.edge_sign({p, j - 1}) * static_cast<double>(hb.cocycles[static_cast<std::size_t>(g)][static_cast<std::size_t>(k)]);
      }
    for (int j = 1; j + 1 < n; ++j) {
      const Vec2 p0 = poly.vertex(0), p1 = poly.vertex(static_cast<std::size_t>(j)),
                 p2 = poly.vertex(static_cast<std::size_t>(j + 1));
      const double area = 0.5 * cross(p1 - p0, p2 - p0);
      std::vector<Vec2> forms;
      for (int g = 0; g < n2g; ++g)
        forms.push_back(whitney_form(p0, p1, p2, phi[static_cast<std::size_t>(g)][static_cast<std::size_t>(j)],
                                     phi[static_cast<std::size_t>(g)][static_cast<std::size_t>(j + 1)]));
      for (int a = 0; a < n2g; ++a)
        for (int b = 0; b < n2g; ++b)
          cup(a, b) += area * cross(forms[static_cast<std::size_t>(a)], forms[static_cast<std::size_t>(b)]);
    }
  }
  hb.cup = cup.array().round().cast<int>().matrix();
  if ((cup - hb.cup.cast<double>()).cwiseAbs().maxCoeff() > 1e-6)
    throw Error(ErrorCode::BasisMismatch, "cup pairing is not integral");
  if (std::abs(std::abs(hb.cup.cast<double>().determinant()) - 1.0) > 1e-9)
    throw Error(ErrorCode::BasisMismatch, "cup pairing is not unimodular");
  const Eigen::MatrixXd inv = hb.cup.cast<double>().inverse();
  hb.intersection = inv.transpose().array().round().cast<int>().matrix();
  return hb;
}

std::vector<Complex> period_map(const TranslationSurface& s, const HomologyBasis& basis) {
  if (basis.num_edge_classes != static_cast<int>(s.gluings().size()))
    throw Error(ErrorCode::BasisMismatch, "basis was built for a different gluing");
  std::vector<Complex> out;
  auto integrate = [&](const EdgeChain& c) {
    Complex z{0.0, 0.0};
    for (std::size_t k = 0; k < c.size(); ++k)
      if (c[k]) z += static_cast<double>(c[k]) * s.class_vector(static_cast<int>(k)).to_complex();
    return z;
  };
  for (const auto& c : basis.cycles) out.push_back(integrate(c));
  for (const auto& c : basis.relative_cycles) out.push_back(integrate(c));
  return out;
}

double homology_pairing(const HomologyBasis& basis, const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  return a.dot(basis.intersection.cast<double>() * b);
}

double cohomology_pairing(const HomologyBasis& basis, const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  return a.dot(basis.cup.cast<double>() * b);
}

Eigen::VectorXd cochain_from_periods(const HomologyBasis& basis, const Eigen::VectorXd& periods) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(basis.num_edge_classes);
  for (std::size_t g = 0; g < basis.cocycles.size(); ++g)
    for (int k = 0; k < basis.num_edge_classes; ++k)
      out[k] += periods[static_cast<Eigen::Index>(g)] * static_cast<double>(basis.cocycles[g][static_cast<std::size_t>(k)]);
  return out;
}

Eigen::VectorXd re_h_class(const TranslationSurface& s, const HomologyBasis& basis) {
  const auto per = period_map(s, basis);
  Eigen::VectorXd out(static_cast<Eigen::Index>(basis.cycles.size()));
  for (Eigen::Index i = 0; i < out.size(); ++i) out[i] = per[static_cast<std::size_t>(i)].real();
  return out;
}

Eigen::VectorXd im_h_class(const TranslationSurface& s, const HomologyBasis& basis) {
  const auto per = period_map(s, basis);
  Eigen::VectorXd out(static_cast<Eigen::Index>(basis.cycles.size()));
  for (Eigen::Index i = 0; i < out.size(); ++i) out[i] = per[static_cast<std::size_t>(i)].imag();
  return out;
}

}  // namespace flatline
