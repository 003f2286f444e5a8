#pragma once

#include <memory>
#include <vector>

#include <Eigen/Dense>

#include "flatline/mesh.hpp"
#include "flatline/surface.hpp"

namespace flatline {

struct HodgeOptions {
  double solver_tol = 1e-8;   // relative residual of the harmonic solve
  double tol_closed = 1e-9;
};

// Energy-minimizing representative of a cohomology class. The form is
// constant on each triangle: grad[t] in the triangle's chart, and
// f[t] = grad.x - i grad.y is the holomorphic part alpha / h.
struct HarmonicRep {
  Eigen::VectorXd periods;
  Eigen::VectorXd cochain;      // value on each mesh edge
  std::vector<Vec2> grad;
  std::vector<Complex> f;
  double energy = 0.0;
  double residual = 0.0;
};

// Factorizes the cotangent Laplacian of a mesh once and solves for harmonic
// representatives of classes given by their periods on mesh.basis().cycles.
class HodgeSolver {
 public:
  explicit HodgeSolver(const FlatMesh& mesh, const HodgeOptions& options = {});
  ~HodgeSolver();
  HodgeSolver(HodgeSolver&&) noexcept;
  HodgeSolver& operator=(HodgeSolver&&) noexcept;

  const FlatMesh& mesh() const { return mesh_; }
  HarmonicRep harmonic_representative(const Eigen::VectorXd& periods) const;
  double hodge_norm(const Eigen::VectorXd& periods) const;
  Complex b_form(const Eigen::VectorXd& periods) const;
  Complex b_form2(const Eigen::VectorXd& a, const Eigen::VectorXd& b) const;

 private:
  struct Impl;
  FlatMesh mesh_;
  HodgeOptions options_;
  std::unique_ptr<Impl> impl_;
};

Complex b_form2(const FlatMesh& mesh, const HarmonicRep& a, const HarmonicRep& b);
// Real inner product of two representatives (Hodge inner product).
double hodge_inner(const FlatMesh& mesh, const HarmonicRep& a, const HarmonicRep& b);
// Integral of a wedge b; equals the cup pairing of the classes.
double wedge_pairing(const FlatMesh& mesh, const HarmonicRep& a, const HarmonicRep& b);

struct LambdaResult {
  double value = 0.0;
  double theta = 0.0;                 // phase where the maximum is attained
  Eigen::VectorXd maximizer;          // periods of a unit maximizing class
  std::vector<Eigen::VectorXd> complement;  // Hodge-orthonormal basis used
};

// Largest |B(c)| / |c|^2 over the symplectic complement of [Re h], [Im h].
LambdaResult lambda_max(const HodgeSolver& solver);

struct FirstVariation {
  double finite_difference = 0.0;
  double two_re_b = 0.0;
  double mismatch() const;   // relative
};

FirstVariation first_variation_check(const FlatMesh& mesh, const Eigen::VectorXd& periods, double dt = 1e-4,
                                     const HodgeOptions& options = {});

}  // namespace flatline
