#include "flatline/twisted.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "flatline/error.hpp"

namespace flatline {

namespace {

using Cplx = std::complex<double>;

// Linear functional on edge cochains: value along a directed triangle side.
struct Directed {
  int edge;
  Cplx coeff;
};

struct TriangleFrames {
  std::array<std::array<Cplx, 3>, 3> U;   // U[i][j] = exp(2 pi i eta(v_i -> v_j))
  std::array<std::array<Directed, 3>, 3> w; // w[i][j] for i != j
};

TriangleFrames frames(const FlatMesh::Triangle& T, const std::array<double, 3>& phi) {
  TriangleFrames f{};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) f.U[i][j] = std::exp(Cplx{0.0, 2.0 * M_PI * (phi[j] - phi[i])});
  for (std::size_t s = 0; s < 3; ++s) {
    const std::size_t a = s, b = (s + 1) % 3;
    // Edge T.e[s] runs from corner `from` to corner `to`.
    const std::size_t from = T.sign[s] > 0 ? a : b, to = T.sign[s] > 0 ? b : a;
    f.w[from][to] = {T.e[s], Cplx{1.0, 0.0}};
    f.w[to][from] = {T.e[s], -f.U[to][from]};
  }
  return f;
}

// Rows mapping edge cochains to the constant form (A, B) = A dx + B dy seen
// from corner k.
std::array<std::array<Directed, 2>, 2> corner_form(const FlatMesh::Triangle& T, const TriangleFrames& f, std::size_t k) {
  const std::size_t k1 = (k + 1) % 3, k2 = (k + 2) % 3;
  const Vec2 e1 = T.p[k1] - T.p[k], e2 = T.p[k2] - T.p[k];
  const double det = cross(e1, e2);
  // [A B]^T = M^{-1} [w1 w2]^T with M = [[e1x e1y], [e2x e2y]].
  const Directed w1 = f.w[k][k1], w2 = f.w[k][k2];
  return {{{{{w1.edge, w1.coeff * (e2.y / det)}, {w2.edge, w2.coeff * (-e1.y / det)}}},
           {{{w1.edge, w1.coeff * (-e2.x / det)}, {w2.edge, w2.coeff * (e1.x / det)}}}}};
}

int count_rank(const Eigen::VectorXd& sv, const TwistedOptions& opt, double& gap, double& largest_zero) {
  if (sv.size() == 0) return 0;
  // Entries have unit modulus, so a numerically zero matrix is measured
  // against 1 rather than against itself.
  const double ref = std::max(sv[0], 1.0);
  int r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    const double rel = sv[i] / ref;
    if (rel >= opt.indeterminate_tol) {
      ++r;
      gap = std::min(gap, rel);
    } else if (rel >= opt.zero_tol) {
      throw Error(ErrorCode::RankIndeterminate, "relative singular value " + std::to_string(rel) + " in the indeterminate band");
    } else {
      largest_zero = std::max(largest_zero, rel);
    }
  }
  return r;
}

}  // namespace

TwistedComplex twisted_complex(const FlatMesh& mesh, const Eigen::VectorXd& eta) {
  const auto phi = mesh.corner_potentials(eta);
  const auto& tris = mesh.triangles();
  TwistedComplex c;
  c.d0 = Eigen::MatrixXcd::Zero(mesh.num_edges(), mesh.num_vertices());
  c.d1 = Eigen::MatrixXcd::Zero(mesh.num_triangles(), mesh.num_edges());
  c.mass = Eigen::MatrixXcd::Zero(mesh.num_edges(), mesh.num_edges());
  for (std::size_t t = 0; t < tris.size(); ++t) {
    const auto& T = tris[t];
    const auto f = frames(T, phi[t]);
    for (std::size_t s = 0; s < 3; ++s) {
      const std::size_t a = s, b = (s + 1) % 3;
      const std::size_t from = T.sign[s] > 0 ? a : b, to = T.sign[s] > 0 ? b : a;
      c.d0(T.e[s], T.v[from]) = 0.0;
      c.d0(T.e[s], T.v[to]) = 0.0;
      c.d0(T.e[s], T.v[to]) += f.U[from][to];
      c.d0(T.e[s], T.v[from]) -= 1.0;
    }
    const auto ti = static_cast<Eigen::Index>(t);
    c.d1(ti, f.w[0][1].edge) += f.w[0][1].coeff;
    c.d1(ti, f.w[1][2].edge) += f.U[0][1] * f.w[1][2].coeff;
    c.d1(ti, f.w[0][2].edge) -= f.w[0][2].coeff;
    const double wt = T.area() / 3.0;
    for (std::size_t k = 0; k < 3; ++k) {
      const auto R = corner_form(T, f, k);
      for (const auto& row : R)
        for (const auto& x : row)
          for (const auto& y : row) c.mass(x.edge, y.edge) += wt * std::conj(x.coeff) * y.coeff;
    }
  }
  return c;
}

TwistedRank twisted_rank(const FlatMesh& mesh, const Eigen::VectorXd& eta, const TwistedOptions& options) {
  const auto c = twisted_complex(mesh, eta);
  TwistedRank out;
  out.gap = 1.0;
  Eigen::BDCSVD<Eigen::MatrixXcd> s0(c.d0), s1(c.d1);
  out.rank_d0 = count_rank(s0.singularValues(), options, out.gap, out.largest_zero);
  out.rank_d1 = count_rank(s1.singularValues(), options, out.gap, out.largest_zero);
  out.rank = mesh.num_edges() - out.rank_d1 - out.rank_d0;
  return out;
}

LambdaSharp lambda_sharp(const FlatMesh& mesh, const Eigen::VectorXd& eta, const TwistedOptions& options) {
  LambdaSharp out;
  out.rank = twisted_rank(mesh, eta, options).rank;
  if (out.rank == 0) return out;
  if (out.rank % 2) throw Error(ErrorCode::RankIndeterminate, "odd twisted cohomology dimension");
  const auto c = twisted_complex(mesh, eta);
  const Eigen::MatrixXcd co = c.d0.adjoint() * c.mass;
  const Eigen::MatrixXcd L = c.d1.adjoint() * c.d1 + co.adjoint() * co;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(L);
  Eigen::MatrixXcd V = es.eigenvectors().leftCols(out.rank);
  // Orthonormal for the mass inner product.
  const Eigen::MatrixXcd G = V.adjoint() * c.mass * V;
  Eigen::LLT<Eigen::MatrixXcd> llt(G);
  if (llt.info() != Eigen::Success) throw Error(ErrorCode::SolverFailure, "twisted harmonic Gram matrix is singular");
  V = V * llt.matrixU().solve(Eigen::MatrixXcd::Identity(out.rank, out.rank));

  const auto phi = mesh.corner_potentials(eta);
  const auto& tris = mesh.triangles();
  const auto F = static_cast<Eigen::Index>(tris.size());
  Eigen::MatrixXcd Pm(F, out.rank), Pn(F, out.rank);
  Eigen::VectorXd area(F);
  for (Eigen::Index t = 0; t < F; ++t) {
    const auto& T = tris[static_cast<std::size_t>(t)];
    area[t] = T.area();
    const auto R = corner_form(T, frames(T, phi[static_cast<std::size_t>(t)]), 0);
    for (Eigen::Index j = 0; j < out.rank; ++j) {
      Cplx A{0.0, 0.0}, B{0.0, 0.0};
      for (const auto& x : R[0]) A += x.coeff * V(x.edge, j);
      for (const auto& x : R[1]) B += x.coeff * V(x.edge, j);
      const Cplx I{0.0, 1.0};
      Pm(t, j) = std::sqrt(2.0) * 0.5 * (A - I * B);
      Pn(t, j) = std::sqrt(2.0) * 0.5 * (A + I * B);
    }
  }
  const Eigen::Index half = out.rank / 2;
  const Eigen::VectorXd sq = area.cwiseSqrt();
  Eigen::JacobiSVD<Eigen::MatrixXcd> sm(sq.asDiagonal() * Pm, Eigen::ComputeThinV), sn(sq.asDiagonal() * Pn, Eigen::ComputeThinV);
  // Holomorphic forms for eta, and for -eta as conjugates of the
  // antiholomorphic ones.
  Eigen::MatrixXcd P = Pm * sm.matrixV().leftCols(half);
  Eigen::MatrixXcd Q = (Pn * sn.matrixV().leftCols(half)).conjugate();
  for (Eigen::Index j = 0; j < half; ++j) {
    P.col(j) /= std::sqrt((area.array() * P.col(j).array().abs2()).sum());
    Q.col(j) /= std::sqrt((area.array() * Q.col(j).array().abs2()).sum());
  }
  const Eigen::MatrixXcd Bm = P.transpose() * area.asDiagonal() * Q;
  Eigen::JacobiSVD<Eigen::MatrixXcd> sb(Bm);
  out.value = std::min(1.0, sb.singularValues()[0]);
  return out;
}

}  // namespace flatline
