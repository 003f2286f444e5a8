#pragma once

#include <cstdint>
#include <vector>

namespace flatline {

struct FitOptions {
  double discard_fraction = 0.1;  // leading samples dropped as transient
  int min_samples = 8;
  int bootstrap = 200;
  std::uint64_t seed = 20240601;
  double confidence = 0.95;
};

struct ExponentFit {
  double value = 0.0;     // the reported exponent
  double ci_low = 0.0;
  double ci_high = 0.0;
  double slope = 0.0;     // of log magnitude against log T
  double intercept = 0.0;
  double residual_rms = 0.0;
  int used = 0;
  bool ci_excludes_zero() const { return ci_low > 0.0 || ci_high < 0.0; }
};

// Least squares of log magnitude on log T with a residual bootstrap interval.
ExponentFit fit_power_law(const std::vector<double>& T, const std::vector<double>& magnitude, const FitOptions& options = {});

// alpha = 1 - slope for twisted integrals bounded by T^(1 - alpha).
ExponentFit decay_exponent(const std::vector<double>& T, const std::vector<double>& magnitude, const FitOptions& options = {});

// nu = slope for Birkhoff integral deviations |int_0^T f| ~ T^nu. The
// observable must have zero mean.
ExponentFit deviation_exponent(const std::vector<double>& T, const std::vector<double>& magnitude, bool zero_mean,
                               const FitOptions& options = {});

}  // namespace flatline
