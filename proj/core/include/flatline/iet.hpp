#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

namespace flatline {

// Pair of orderings of the labels 0..d-1: `top[k]` is the label of the k-th
// interval before the exchange, `bottom[k]` after it.
struct Permutation {
  std::vector<int> top;
  std::vector<int> bottom;

  int size() const { return static_cast<int>(top.size()); }
  bool irreducible() const;
  bool operator==(const Permutation&) const = default;
  // Monodromy form: "4 3 2 1" means top = (1 2 3 4), bottom = (4 3 2 1),
  // labels shifted to start at 0.
  static Permutation parse(const std::string& text);
  static Permutation reversal(int d);
  std::string str() const;
};

enum class MoveType { Top, Bottom };
const char* to_string(MoveType t);

// lambda = matrix * lambda'. Move type is the row of the winning (longer)
// last interval.
struct RauzyMove {
  MoveType type = MoveType::Top;
  int winner = -1;
  int loser = -1;
  Eigen::MatrixXi matrix;
};

struct RauzyBatch {
  MoveType type = MoveType::Top;
  int winner = -1;
  int moves = 0;
  Eigen::VectorXi loser_counts;  // matrix = I + e_winner * loser_counts^T
  Eigen::MatrixXi matrix() const;
};

inline constexpr double kKeaneTol = 1e-13;

struct Iet {
  std::vector<double> lengths;  // indexed by label
  Permutation perm;
  double log_scale = 0.0;       // sum of -log of the renormalization factors

  int size() const { return perm.size(); }
  double total() const;
  void normalize();
};

// Validated IET with lengths normalized to total 1.
Iet make_iet(const Permutation& perm, std::vector<double> lengths);

// Single Rauzy-Veech move on the unnormalized lengths; KeaneViolation on a tie.
RauzyMove rauzy_step(Iet& iet);
// Permutation after one move of the given type, lengths ignored.
Permutation rauzy_move_permutation(const Permutation& p, MoveType type);
// Maximal run of same-type moves, then renormalization to total length 1.
// Stops before a tie so that the run itself is always valid.
RauzyBatch zorich_step(Iet& iet);

// All permutations reachable by Rauzy moves from p.
std::vector<Permutation> rauzy_class(const Permutation& p);

}  // namespace flatline
