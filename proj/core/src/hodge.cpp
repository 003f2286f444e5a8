#include "flatline/hodge.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SparseCholesky>

#include "flatline/error.hpp"

namespace flatline {

namespace {

// Gradients of the barycentric coordinates of a triangle.
std::array<Vec2, 3> barycentric_gradients(const FlatMesh::Triangle& T) {
  const double two_a = 2.0 * T.area();
  std::array<Vec2, 3> g;
  for (std::size_t k = 0; k < 3; ++k) {
    const Vec2 e = T.p[(k + 2) % 3] - T.p[(k + 1) % 3];
    g[k] = Vec2{-e.y, e.x} * (1.0 / two_a);
  }
  return g;
}

}  // namespace

struct HodgeSolver::Impl {
  std::vector<std::array<Vec2, 3>> bary;
  Eigen::SparseMatrix<double> K;   // stiffness with vertex 0 removed
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt;
};

HodgeSolver::HodgeSolver(const FlatMesh& mesh, const HodgeOptions& options)
    : mesh_(mesh), options_(options), impl_(std::make_unique<Impl>()) {
  const auto& tris = mesh_.triangles();
  impl_->bary.reserve(tris.size());
  const int n = mesh_.num_vertices() - 1;
  std::vector<Eigen::Triplet<double>> trip;
  for (const auto& T : tris) {
    impl_->bary.push_back(barycentric_gradients(T));
    const auto& g = impl_->bary.back();
    const double a = T.area();
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j)
        if (T.v[i] > 0 && T.v[j] > 0) trip.emplace_back(T.v[i] - 1, T.v[j] - 1, a * dot(g[i], g[j]));
  }
  if (n > 0) {
    impl_->K.resize(n, n);
    impl_->K.setFromTriplets(trip.begin(), trip.end());
    impl_->ldlt.compute(impl_->K);
    if (impl_->ldlt.info() != Eigen::Success) throw Error(ErrorCode::SolverFailure, "cotangent Laplacian factorization failed");
  }
}

HodgeSolver::~HodgeSolver() = default;
HodgeSolver::HodgeSolver(HodgeSolver&&) noexcept = default;
HodgeSolver& HodgeSolver::operator=(HodgeSolver&&) noexcept = default;

HarmonicRep HodgeSolver::harmonic_representative(const Eigen::VectorXd& periods) const {
  const auto phi = mesh_.corner_potentials(periods);
  const auto& tris = mesh_.triangles();
  const int n = mesh_.num_vertices() - 1;
  HarmonicRep rep;
  rep.periods = periods;

  // Load from the multivalued potential; the correction u is single valued.
  Eigen::VectorXd u = Eigen::VectorXd::Zero(mesh_.num_vertices());
  if (n > 0) {
    Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
    for (std::size_t t = 0; t < tris.size(); ++t) {
      const auto& g = impl_->bary[t];
      const Vec2 grad = g[0] * phi[t][0] + g[1] * phi[t][1] + g[2] * phi[t][2];
      const double a = tris[t].area();
      for (std::size_t i = 0; i < 3; ++i)
        if (tris[t].v[i] > 0) b[tris[t].v[i] - 1] -= a * dot(g[i], grad);
    }
    const Eigen::VectorXd x = impl_->ldlt.solve(b);
    const double bn = b.norm();
    rep.residual = bn > 0.0 ? (impl_->K * x - b).norm() / bn : 0.0;
    if (!(rep.residual <= options_.solver_tol))
      throw Error(ErrorCode::SolverFailure, "harmonic solve residual " + std::to_string(rep.residual));
    u.tail(n) = x;
  }

  rep.grad.resize(tris.size());
  rep.f.resize(tris.size());
  for (std::size_t t = 0; t < tris.size(); ++t) {
    const auto& g = impl_->bary[t];
    Vec2 grad{0.0, 0.0};
    for (std::size_t k = 0; k < 3; ++k) grad = grad + g[k] * (phi[t][k] + u[tris[t].v[k]]);
    rep.grad[t] = grad;
    rep.f[t] = Complex{grad.x, -grad.y};
    rep.energy += tris[t].area() * dot(grad, grad);
  }
  rep.cochain = Eigen::VectorXd::Zero(mesh_.num_edges());
  for (std::size_t t = 0; t < tris.size(); ++t)
    for (std::size_t k = 0; k < 3; ++k)
      rep.cochain[tris[t].e[k]] = tris[t].sign[k] * dot(rep.grad[t], tris[t].p[(k + 1) % 3] - tris[t].p[k]);
  return rep;
}

double HodgeSolver::hodge_norm(const Eigen::VectorXd& periods) const {
  if (periods.size() > 0 && periods.cwiseAbs().maxCoeff() == 0.0) return 0.0;
  return std::sqrt(harmonic_representative(periods).energy);
}

Complex HodgeSolver::b_form(const Eigen::VectorXd& periods) const {
  const auto rep = harmonic_representative(periods);
  return flatline::b_form2(mesh_, rep, rep);
}

Complex HodgeSolver::b_form2(const Eigen::VectorXd& a, const Eigen::VectorXd& b) const {
  return flatline::b_form2(mesh_, harmonic_representative(a), harmonic_representative(b));
}

Complex b_form2(const FlatMesh& mesh, const HarmonicRep& a, const HarmonicRep& b) {
  Complex s{0.0, 0.0};
  const auto& tris = mesh.triangles();
  for (std::size_t t = 0; t < tris.size(); ++t) s += tris[t].area() * a.f[t] * b.f[t];
  return s;
}

double hodge_inner(const FlatMesh& mesh, const HarmonicRep& a, const HarmonicRep& b) {
  double s = 0.0;
  const auto& tris = mesh.triangles();
  for (std::size_t t = 0; t < tris.size(); ++t) s += tris[t].area() * dot(a.grad[t], b.grad[t]);
  return s;
}

double wedge_pairing(const FlatMesh& mesh, const HarmonicRep& a, const HarmonicRep& b) {
  double s = 0.0;
  const auto& tris = mesh.triangles();
  for (std::size_t t = 0; t < tris.size(); ++t) s += tris[t].area() * cross(a.grad[t], b.grad[t]);
  return s;
}

double FirstVariation::mismatch() const {
  const double scale = std::max(std::abs(two_re_b), 1e-300);
  return std::abs(finite_difference - two_re_b) / scale;
}

FirstVariation first_variation_check(const FlatMesh& mesh, const Eigen::VectorXd& periods, double dt,
                                     const HodgeOptions& options) {
  if (!(dt > 0.0)) throw Error(ErrorCode::InvalidArgument, "dt must be positive");
  FirstVariation out;
  const double ep = HodgeSolver(mesh.transformed(teichmuller(dt)), options).harmonic_representative(periods).energy;
  const double em = HodgeSolver(mesh.transformed(teichmuller(-dt)), options).harmonic_representative(periods).energy;
  out.finite_difference = (ep - em) / (2.0 * dt);
  out.two_re_b = 2.0 * HodgeSolver(mesh, options).b_form(periods).real();
  return out;
}

namespace {

double top_eigenvalue(const Eigen::MatrixXcd& Q, double theta) {
  const Eigen::MatrixXd S = (std::exp(Complex{0.0, -theta}) * Q).real();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (S + S.transpose()), Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

}  // namespace

LambdaResult lambda_max(const HodgeSolver& solver) {
  const FlatMesh& mesh = solver.mesh();
  if (mesh.genus() < 2) throw Error(ErrorCode::GenusOne, "tautological complement is empty in genus one");
  const auto& basis = mesh.basis();
  const Eigen::MatrixXd cup = basis.cup.cast<double>();
  const Eigen::Index n = cup.rows();

  // Classes x with cup(x, Re h) = cup(x, Im h) = 0.
  Eigen::MatrixXd C(2, n);
  C.row(0) = (cup * mesh.re_h()).transpose();
  C.row(1) = (cup * mesh.im_h()).transpose();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(C, Eigen::ComputeFullV);
  const Eigen::MatrixXd N = svd.matrixV().rightCols(n - 2);

  std::vector<HarmonicRep> reps;
  for (Eigen::Index j = 0; j < N.cols(); ++j) reps.push_back(solver.harmonic_representative(N.col(j)));
  const auto m = static_cast<Eigen::Index>(reps.size());
  Eigen::MatrixXd G(m, m);
  Eigen::MatrixXcd Q(m, m);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < m; ++j) {
      G(i, j) = hodge_inner(mesh, reps[static_cast<std::size_t>(i)], reps[static_cast<std::size_t>(j)]);
      Q(i, j) = b_form2(mesh, reps[static_cast<std::size_t>(i)], reps[static_cast<std::size_t>(j)]);
    }
  Eigen::LLT<Eigen::MatrixXd> llt(G);
  if (llt.info() != Eigen::Success) throw Error(ErrorCode::SolverFailure, "Hodge Gram matrix is not positive definite");
  // W = L^{-T}, so the columns of N W are Hodge orthonormal.
  const Eigen::MatrixXd W = llt.matrixU().solve(Eigen::MatrixXd::Identity(m, m));
  const Eigen::MatrixXcd Qo = W.transpose().cast<Complex>() * Q * W.cast<Complex>();

  // |x^T Q x| = max over theta of Re(e^{-i theta} x^T Q x).
  const int grid = 720;
  double best = -1.0, best_theta = 0.0;
  for (int k = 0; k < grid; ++k) {
    const double th = 2.0 * M_PI * k / grid;
    const double v = top_eigenvalue(Qo, th);
    if (v > best) best = v, best_theta = th;
  }
  double lo = best_theta - 2.0 * M_PI / grid, hi = best_theta + 2.0 * M_PI / grid;
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  for (int it = 0; it < 60; ++it) {
    const double a = hi - gr * (hi - lo), b = lo + gr * (hi - lo);
    if (top_eigenvalue(Qo, a) > top_eigenvalue(Qo, b))
      hi = b;
    else
      lo = a;
  }
  const double th = 0.5 * (lo + hi);
  if (top_eigenvalue(Qo, th) > best) best = top_eigenvalue(Qo, th), best_theta = th;

  LambdaResult out;
  out.value = std::max(best, 0.0);
  out.theta = best_theta;
  const Eigen::MatrixXd S = (std::exp(Complex{0.0, -best_theta}) * Qo).real();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (S + S.transpose()));
  Eigen::Index top = 0;
  es.eigenvalues().maxCoeff(&top);
  out.maximizer = N * W * es.eigenvectors().col(top);
  for (Eigen::Index j = 0; j < m; ++j) out.complement.push_back(N * W.col(j));
  return out;
}

}  // namespace flatline
