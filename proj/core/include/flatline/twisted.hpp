#pragma once

#include <vector>

#include <Eigen/Dense>

#include "flatline/mesh.hpp"

namespace flatline {

struct TwistedOptions {
  double zero_tol = 1e-6;          // relative singular value counted as zero
  double indeterminate_tol = 1e-4; // upper end of the band that raises
};

// Discrete twisted complex for the flat connection exp(2 pi i eta) on mesh
// edges, eta given by its periods on mesh.basis().cycles.
struct TwistedComplex {
  Eigen::MatrixXcd d0;   // edges x vertices
  Eigen::MatrixXcd d1;   // triangles x edges
  Eigen::MatrixXcd mass; // Hermitian inner product on edge cochains
};

TwistedComplex twisted_complex(const FlatMesh& mesh, const Eigen::VectorXd& eta);

struct TwistedRank {
  int rank = 0;             // dim H^1 of the twisted complex
  int rank_d0 = 0;
  int rank_d1 = 0;
  double gap = 0.0;         // smallest relative singular value kept
  double largest_zero = 0.0;
};

TwistedRank twisted_rank(const FlatMesh& mesh, const Eigen::VectorXd& eta, const TwistedOptions& options = {});

struct LambdaSharp {
  double value = 0.0;
  int rank = 0;
};

LambdaSharp lambda_sharp(const FlatMesh& mesh, const Eigen::VectorXd& eta, const TwistedOptions& options = {});

}  // namespace flatline
