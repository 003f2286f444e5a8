#include "flatline/spectral_measure.hpp"

#include <algorithm>
#include <cmath>

#include "flatline/error.hpp"

namespace flatline {

SpectralMeasure spectral_measure_estimate(const TranslationSurface& s, double theta, const Observable& f,
                                          const std::vector<double>& grid, const std::vector<double>& times,
                                          SurfacePoint start, const SpectralOptions& options) {
  if (!f.zero_mean() && !f.has_zero_mean(s)) throw Error(ErrorCode::ZeroMeanRequired, "spectral measure needs a zero-mean observable");
  if (grid.empty() || times.empty()) throw Error(ErrorCode::InvalidArgument, "empty frequency grid or time list");
  for (std::size_t k = 0; k < times.size(); ++k)
    if (!(times[k] > 0.0) || (k > 0 && !(times[k] > times[k - 1])))
      throw Error(ErrorCode::InvalidArgument, "times must be positive and strictly increasing");

  SpectralMeasure out;
  out.grid = grid;
  out.times = times;
  std::vector<Complex> acc(grid.size(), Complex{0.0, 0.0});
  std::size_t next = 0;
  auto add = [&](Vec2 p, Vec2 u, double t0, double len) {
    for (std::size_t j = 0; j < grid.size(); ++j) {
      const double w = 2.0 * M_PI * grid[j];
      acc[j] += std::exp(Complex{0.0, w * t0}) * f.segment_integral(p, u, len, w);
    }
  };
  auto snapshot = [&]() {
    std::vector<double> row(grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j) row[j] = std::norm(acc[j]) / times[next];
    out.estimate.push_back(std::move(row));
    ++next;
  };
  TraceOptions topt;
  topt.record_crossings = false;
  const auto seg = trace_orbit(s, theta, start, times.back(), topt, [&](int, Vec2 p, Vec2 u, double t0, double len) {
    double done = 0.0;
    while (next < times.size() && t0 + len >= times[next]) {
      const double part = times[next] - (t0 + done);
      if (part > 0.0) add(p + u * done, u, t0 + done, part);
      done += std::max(part, 0.0);
      snapshot();
    }
    if (len > done) add(p + u * done, u, t0 + done, len - done);
  });
  if (seg.hit_singularity) throw Error(ErrorCode::SingularOrbit, "orbit meets a cone point");
  while (next < times.size()) snapshot();

  std::vector<double> last = out.estimate.back();
  std::nth_element(last.begin(), last.begin() + static_cast<long>(last.size() / 2), last.end());
  out.median_last = last[last.size() / 2];
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double v = out.estimate.back()[j];
    // Atoms grow like T; sidelobes of nearby atoms do not.
    bool grows = true;
    for (std::size_t k = 1; k < out.estimate.size(); ++k)
      grows = grows && out.estimate[k][j] > out.estimate[k - 1][j] * std::sqrt(times[k] / times[k - 1]);
    if (v > options.peak_factor * out.median_last && grows) out.candidates.push_back(static_cast<int>(j));
  }
  // Drop points lying under the Fejer envelope mu / (pi^2 delta^2 T) of a
  // stronger candidate, with mu estimated as its value over T.
  const auto& v = out.estimate.back();
  const double T = times.back();
  std::sort(out.candidates.begin(), out.candidates.end(), [&](int a, int b) { return v[static_cast<std::size_t>(a)] > v[static_cast<std::size_t>(b)]; });
  std::vector<int> kept;
  for (int j : out.candidates) {
    bool sidelobe = false;
    for (int k : kept) {
      const double delta = grid[static_cast<std::size_t>(j)] - grid[static_cast<std::size_t>(k)];
      const double bound = v[static_cast<std::size_t>(k)] / (M_PI * M_PI * delta * delta * T * T);
      if (v[static_cast<std::size_t>(j)] <= bound) sidelobe = true;
    }
    if (!sidelobe) kept.push_back(j);
  }
  std::sort(kept.begin(), kept.end());
  out.candidates = std::move(kept);
  return out;
}

}  // namespace flatline
