#pragma once

#include <vector>

#include "flatline/flow.hpp"
#include "flatline/iet.hpp"

namespace flatline {

// Straight segment from a to b inside one polygon.
struct Transversal {
  int polygon = 0;
  Vec2 a;
  Vec2 b;
  double length() const { return (b - a).norm(); }
};

struct FirstReturn {
  Iet iet;                            // lengths in units of transversal length, unnormalized
  std::vector<double> starts;         // left end of each top interval, by label
  std::vector<double> return_times;   // roof function, by label
  std::vector<double> translations;   // image offset along the transversal, by label
};

inline constexpr long kMaxReturnCrossings = 1'000'000;

// First-return map of the flow in direction theta to t. Cut points come from
// the incoming separatrices of genuine cone points and from the transversal
// endpoints, traced backwards.
FirstReturn first_return_iet(const TranslationSurface& s, double theta, const Transversal& t);

// Transversal perpendicular to the flow from a genuine cone point, cut where
// the first incoming separatrix meets it, so the induced IET has the minimal
// number 2g + sigma - 1 of intervals.
Transversal separatrix_transversal(const TranslationSurface& s, double theta);

}  // namespace flatline
