#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "flatline/geometry.hpp"
#include "flatline/surface.hpp"

namespace flatline {

// 1-chain on the glued cell complex: one integer coefficient per edge class,
// each class oriented along its gluing's `a` side.
using EdgeChain = std::vector<long>;

// Homology basis from a spanning-tree / dual-cotree decomposition. Depends
// only on the combinatorics of the gluing, so it is shared by every surface in
// a GL(2,R) orbit.
struct HomologyBasis {
  std::vector<EdgeChain> cycles;           // 2g absolute cycles
  std::vector<EdgeChain> relative_cycles;  // sigma-1 paths from vertex orbit 0
  std::vector<EdgeChain> cocycles;         // integer cochains dual to `cycles`
  Eigen::MatrixXi intersection;            // cycles[i] . cycles[j]
  Eigen::MatrixXi cup;                     // integral of cocycles[i] ^ cocycles[j]
  std::vector<int> tree_edges;
  std::vector<int> cotree_edges;
  std::vector<int> generator_edges;
  int num_edge_classes = 0;

  int genus() const { return static_cast<int>(cycles.size()) / 2; }
  std::string describe() const;
};

HomologyBasis homology_basis(const TranslationSurface& s);

// Integrals of h = dx + i dy over the absolute then the relative cycles.
std::vector<Complex> period_map(const TranslationSurface& s, const HomologyBasis& basis);

// Symplectic pairing of two classes given by coordinates on `basis.cycles`
// (homology) or by their periods on those cycles (cohomology).
double homology_pairing(const HomologyBasis& basis, const Eigen::VectorXd& a, const Eigen::VectorXd& b);
double cohomology_pairing(const HomologyBasis& basis, const Eigen::VectorXd& a, const Eigen::VectorXd& b);

// Cochain value on every edge class of the closed cochain whose periods on
// `basis.cycles` are `periods`.
Eigen::VectorXd cochain_from_periods(const HomologyBasis& basis, const Eigen::VectorXd& periods);

// Real and imaginary parts of the absolute periods (cohomology coordinates of
// [Re h] and [Im h]).
Eigen::VectorXd re_h_class(const TranslationSurface& s, const HomologyBasis& basis);
Eigen::VectorXd im_h_class(const TranslationSurface& s, const HomologyBasis& basis);

}  // namespace flatline
