#include "flatline/ostrowski.hpp"

#include <cmath>

#include "flatline/error.hpp"

namespace flatline {

double OstrowskiDecomposition::reconstruct() const {
  long double s = remainder;
  for (std::size_t k = 0; k < m.size(); ++k) s += static_cast<long double>(m[k]) * scales[k];
  return static_cast<double>(s);
}

bool OstrowskiDecomposition::satisfies_constraint() const {
  for (int k = 0; k < top; ++k)
    if (static_cast<long double>(m[static_cast<std::size_t>(k)]) * scales[static_cast<std::size_t>(k)] >
        scales[static_cast<std::size_t>(k + 1)] * (1.0L + 1e-12L))
      return false;
  return true;
}

OstrowskiDecomposition ostrowski_decompose(double T, const std::vector<double>& scales) {
  if (scales.empty()) throw Error(ErrorCode::InvalidScales, "no scales");
  for (std::size_t k = 0; k < scales.size(); ++k)
    if (!(scales[k] > 0.0) || !std::isfinite(scales[k]) || (k > 0 && !(scales[k] > scales[k - 1])))
      throw Error(ErrorCode::InvalidScales, "scales must be positive, finite and strictly increasing");
  if (!(T >= scales[0]) || !std::isfinite(T)) throw Error(ErrorCode::InvalidScales, "T is below the smallest scale");

  OstrowskiDecomposition d;
  d.scales = scales;
  d.m.assign(scales.size(), 0);
  while (d.top + 1 < static_cast<int>(scales.size()) && scales[static_cast<std::size_t>(d.top + 1)] <= T) ++d.top;
  long double rem = T;
  for (int k = d.top; k >= 0; --k) {
    const long double s = scales[static_cast<std::size_t>(k)];
    long c = static_cast<long>(std::floor(rem / s));
    // Guard against rounding pushing the remainder negative.
    while (c > 0 && rem - c * s < 0.0L) --c;
    d.m[static_cast<std::size_t>(k)] = c;
    rem -= c * s;
  }
  d.remainder = static_cast<double>(std::max(rem, 0.0L));
  return d;
}

}  // namespace flatline
