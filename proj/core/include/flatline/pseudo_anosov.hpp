#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "flatline/iet.hpp"

namespace flatline {

struct PseudoAnosov {
  Permutation perm;
  std::vector<MoveType> loop;
  Eigen::MatrixXd action;            // product of the loop's move matrices
  double dilation = 0.0;             // Perron eigenvalue
  double rho = 0.0;                  // largest |eigenvalue| off the top one
  double effective_exponent_raw = 0.0;  // 1 - log rho / log dilation
  double effective_exponent = 0.0;      // capped at 1
  bool dilation_simple = false;
  bool inverse_simple = false;       // 1/dilation is a simple eigenvalue
  Eigen::VectorXd length_eigenvector;  // positive, normalized to sum 1
};

// Parses words over {T, B} (case-insensitive, separators ignored).
std::vector<MoveType> parse_word(const std::string& word);
std::string word_string(const std::vector<MoveType>& loop);

// Loop of Rauzy moves from perm back to itself whose matrix is Perron.
PseudoAnosov pseudo_anosov_from_loop(const Permutation& perm, const std::vector<MoveType>& loop);
// Same analysis for an explicit nonnegative integer matrix (no loop check).
PseudoAnosov pseudo_anosov_from_matrix(const Eigen::MatrixXi& m);

// Shortest word (then lexicographically first) of length <= max_len giving a
// pseudo-Anosov loop at perm; NotPeriodicLoop if none.
PseudoAnosov find_periodic_loop(const Permutation& perm, int max_len = 12);

}  // namespace flatline
