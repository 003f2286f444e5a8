#pragma once

#include <vector>

#include "flatline/flow.hpp"
#include "flatline/observable.hpp"

namespace flatline {

struct SpectralMeasure {
  std::vector<double> grid;
  std::vector<double> times;
  std::vector<std::vector<double>> estimate;  // [time][grid]: |twisted integral|^2 / T
  double median_last = 0.0;                   // grid median at the largest T
  std::vector<int> candidates;                // grid indices flagged as eigenvalue candidates
};

struct SpectralOptions {
  double peak_factor = 10.0;
};

// Periodogram of f along one orbit, at several times in a single pass.
// Candidates exceed peak_factor times the grid median at the largest T and
// grow faster than sqrt(T) between every pair of consecutive times, and are
// not explained as sidelobes of a stronger candidate.
SpectralMeasure spectral_measure_estimate(const TranslationSurface& s, double theta, const Observable& f,
                                          const std::vector<double>& grid, const std::vector<double>& times,
                                          SurfacePoint start, const SpectralOptions& options = {});

}  // namespace flatline
