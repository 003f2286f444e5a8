#include "flatline/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "flatline/error.hpp"

namespace flatline {

namespace {

void line_fit(const std::vector<double>& x, const std::vector<double>& y, double& slope, double& intercept) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) sx += x[i], sy += y[i];
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) sxx += (x[i] - mx) * (x[i] - mx), sxy += (x[i] - mx) * (y[i] - my);
  slope = sxy / sxx;
  intercept = my - slope * mx;
}

double quantile(std::vector<double> v, double q) {
  std::sort(v.begin(), v.end());
  const double pos = q * static_cast<double>(v.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, v.size() - 1);
  return v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

}  // namespace

ExponentFit fit_power_law(const std::vector<double>& T, const std::vector<double>& magnitude, const FitOptions& options) {
  if (T.size() != magnitude.size()) throw Error(ErrorCode::InvalidArgument, "time and magnitude series differ in length");
  if (static_cast<int>(T.size()) < options.min_samples)
    throw Error(ErrorCode::InsufficientSamples, "need at least " + std::to_string(options.min_samples) + " samples, got " +
                                                    std::to_string(T.size()));
  for (std::size_t i = 0; i < T.size(); ++i) {
    if (!(T[i] > 0.0) || (i > 0 && !(T[i] > T[i - 1])))
      throw Error(ErrorCode::InvalidArgument, "times must be positive and strictly increasing");
    if (!(magnitude[i] > 0.0) || !std::isfinite(magnitude[i]))
      throw Error(ErrorCode::InvalidArgument, "magnitudes must be positive and finite");
  }
  const auto skip = static_cast<std::size_t>(std::floor(options.discard_fraction * static_cast<double>(T.size())));
  std::vector<double> x, y;
  for (std::size_t i = skip; i < T.size(); ++i) x.push_back(std::log(T[i])), y.push_back(std::log(magnitude[i]));
  if (x.size() < 3) throw Error(ErrorCode::InsufficientSamples, "too few samples after discarding the transient");

  ExponentFit fit;
  fit.used = static_cast<int>(x.size());
  line_fit(x, y, fit.slope, fit.intercept);
  std::vector<double> res(x.size());
  double ss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    res[i] = y[i] - (fit.intercept + fit.slope * x[i]);
    ss += res[i] * res[i];
  }
  fit.residual_rms = std::sqrt(ss / static_cast<double>(x.size()));

  std::mt19937_64 rng(options.seed);
  std::uniform_int_distribution<std::size_t> pick(0, x.size() - 1);
  std::vector<double> slopes;
  std::vector<double> yb(x.size());
  for (int b = 0; b < options.bootstrap; ++b) {
    for (std::size_t i = 0; i < x.size(); ++i) yb[i] = fit.intercept + fit.slope * x[i] + res[pick(rng)];
    double s = 0, c = 0;
    line_fit(x, yb, s, c);
    slopes.push_back(s);
  }
  const double a = 0.5 * (1.0 - options.confidence);
  fit.value = fit.slope;
  fit.ci_low = slopes.empty() ? fit.slope : quantile(slopes, a);
  fit.ci_high = slopes.empty() ? fit.slope : quantile(slopes, 1.0 - a);
  return fit;
}

ExponentFit decay_exponent(const std::vector<double>& T, const std::vector<double>& magnitude, const FitOptions& options) {
  ExponentFit fit = fit_power_law(T, magnitude, options);
  const double lo = 1.0 - fit.ci_high, hi = 1.0 - fit.ci_low;
  fit.value = 1.0 - fit.slope;
  fit.ci_low = lo;
  fit.ci_high = hi;
  return fit;
}

ExponentFit deviation_exponent(const std::vector<double>& T, const std::vector<double>& magnitude, bool zero_mean,
                               const FitOptions& options) {
  if (!zero_mean) throw Error(ErrorCode::ZeroMeanRequired, "deviation exponents need a zero-mean observable");
  return fit_power_law(T, magnitude, options);
}

}  // namespace flatline
