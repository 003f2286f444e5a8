#pragma once

#include <vector>

namespace flatline {

// T = sum m[k] * scales[k] + remainder, remainder < scales[0].
struct OstrowskiDecomposition {
  std::vector<double> scales;
  std::vector<long> m;
  double remainder = 0.0;
  int top = -1;               // largest k with scales[k] <= T
  double reconstruct() const;
  bool satisfies_constraint() const;  // m[k] scales[k] <= scales[k+1] for k < top
};

// Greedy decomposition over strictly increasing positive scales.
OstrowskiDecomposition ostrowski_decompose(double T, const std::vector<double>& scales);

}  // namespace flatline
