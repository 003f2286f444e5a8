#pragma once

#include <vector>

#include "flatline/surface.hpp"

namespace flatline {

struct RecurrenceSample {
  double t = 0.0;
  double systole = 0.0;
};

// Systole of g_t R_{-theta} s for t = 0, dt, ..., t_max, so that direction
// theta becomes horizontal and is contracted by g_t. Saddle connections
// longer than `bound` are not searched for.
std::vector<RecurrenceSample> recurrence_series(const TranslationSurface& s, double theta, double t_max, double dt,
                                                double bound = 4.0);

// Fraction of samples with systole >= delta.
double visit_frequency(const std::vector<RecurrenceSample>& series, double delta);

}  // namespace flatline
