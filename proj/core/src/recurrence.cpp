#include "flatline/recurrence.hpp"

#include <cmath>

#include "flatline/error.hpp"
#include "flatline/systole.hpp"

namespace flatline {

std::vector<RecurrenceSample> recurrence_series(const TranslationSurface& s, double theta, double t_max, double dt,
                                                double bound) {
  if (!(dt > 0.0) || !(t_max >= 0.0)) throw Error(ErrorCode::InvalidArgument, "need dt > 0 and t_max >= 0");
  const TranslationSurface base = apply_gl2(Mat2::rotation(-theta), s);
  std::vector<RecurrenceSample> out;
  const auto n = static_cast<long>(std::floor(t_max / dt + 1e-9));
  for (long i = 0; i <= n; ++i) {
    const double t = static_cast<double>(i) * dt;
    const TranslationSurface st = i == 0 ? base : apply_gl2(teichmuller(t), base);
    out.push_back({t, systole(st, bound)});
  }
  return out;
}

double visit_frequency(const std::vector<RecurrenceSample>& series, double delta) {
  if (series.empty()) return 0.0;
  long hits = 0;
  for (const auto& r : series)
    if (r.systole >= delta) ++hits;
  return static_cast<double>(hits) / static_cast<double>(series.size());
}

}  // namespace flatline
