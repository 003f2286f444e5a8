#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "args.hpp"
#include "commands.hpp"
#include "flatline/error.hpp"
#include "flatline/fitting.hpp"
#include "flatline/flow.hpp"
#include "flatline/iet.hpp"
#include "flatline/observable.hpp"
#include "flatline/ostrowski.hpp"
#include "flatline/spectral_measure.hpp"
#include "flatline/veech.hpp"

namespace flatline::cli {

namespace {

struct Series {
  std::vector<double> T, value;
};

// Two numeric columns; comment lines and a header row are skipped.
Series read_series(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open series " + path);
  Series s;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::stringstream ls(line);
    std::string a, b;
    if (!std::getline(ls, a, ',') || !std::getline(ls, b, ',')) throw Error(ErrorCode::ConfigParse, "series rows need two columns");
    char* end = nullptr;
    const double t = std::strtod(a.c_str(), &end);
    if (end == a.c_str()) {
      if (s.T.empty()) continue;  // header
      throw Error(ErrorCode::ConfigParse, "bad series row '" + line + "'");
    }
    s.T.push_back(t);
    s.value.push_back(parse_real(b, "series value"));
  }
  return s;
}

FitOptions fit_options(const Config& cfg) {
  FitOptions o;
  o.discard_fraction = cfg.real("discard", o.discard_fraction);
  o.bootstrap = static_cast<int>(cfg.integer("bootstrap", o.bootstrap));
  o.seed = seed(cfg);
  return o;
}

Json fit_json(const ExponentFit& f) {
  return {{"value", f.value}, {"ci_low", f.ci_low}, {"ci_high", f.ci_high}, {"slope", f.slope},
          {"residual_rms", f.residual_rms}, {"samples_used", f.used}};
}

// |integral| (or its running sup) at dyadic T from one orbit.
Series orbit_series(const Config& cfg, double lambda, bool sup, bool& zero_mean, Json& info) {
  const auto ls = load_surface(cfg);
  const double theta = cfg.real("theta");
  auto f = Observable::parse(cfg.str("f"));
  if (cfg.has("center") && cfg.flag("center")) f = f.centered(ls.surface);
  zero_mean = f.has_zero_mean(ls.surface);
  const auto start = start_point(cfg, ls.surface);
  const auto times = dyadic_times(static_cast<int>(cfg.integer("tmin_exp", 0)), static_cast<int>(cfg.integer("tmax_exp", 16)));
  Series s;
  s.T = times;
  if (lambda == 0.0 && !zero_mean) return s;  // rejected by the caller
  const auto series = twisted_integral_series(ls.surface, theta, f, lambda, start, times);
  for (std::size_t i = 0; i < times.size(); ++i) s.value.push_back(sup ? series.sup_abs[i] : std::abs(series.values[i]));
  info = {{"surface", ls.source}, {"theta", theta}, {"f", f.text()}, {"lambda", lambda},
          {"start", {{"polygon", start.polygon}, {"x", start.pos.x}, {"y", start.pos.y}}}};
  return s;
}

Table series_table(const Series& s) {
  Table t{{"T", "value"}, {}};
  for (std::size_t i = 0; i < s.T.size(); ++i) t.add({fmt(s.T[i]), fmt(s.value[i])});
  return t;
}

std::vector<double> parse_scales(const std::string& spec) {
  std::vector<double> out;
  if (spec.rfind("fib:", 0) == 0) {
    const long n = parse_integer(spec.substr(4), "scales");
    double a = 1, b = 2;
    for (long i = 0; i < n; ++i) {
      out.push_back(a);
      const double c = a + b;
      a = b;
      b = c;
    }
    return out;
  }
  if (spec.rfind("pow2:", 0) == 0) {
    const long n = parse_integer(spec.substr(5), "scales");
    for (long i = 0; i < n; ++i) out.push_back(std::ldexp(1.0, static_cast<int>(i)));
    return out;
  }
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_real(item, "scales"));
  return out;
}

std::vector<double> parse_grid(const std::string& spec) {
  if (const auto c1 = spec.find(':'); c1 != std::string::npos) {
    const auto c2 = spec.find(':', c1 + 1);
    if (c2 == std::string::npos) throw Error(ErrorCode::ConfigParse, "grid must be lo:hi:step or a list");
    const double lo = parse_real(spec.substr(0, c1), "grid"), hi = parse_real(spec.substr(c1 + 1, c2 - c1 - 1), "grid");
    const double step = parse_real(spec.substr(c2 + 1), "grid");
    if (!(step > 0.0) || hi < lo) throw Error(ErrorCode::InvalidArgument, "bad grid range");
    std::vector<double> g;
    const auto n = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
    for (long i = 0; i <= n; ++i) g.push_back(lo + static_cast<double>(i) * step);
    return g;
  }
  std::vector<double> g;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) g.push_back(parse_real(item, "grid"));
  return g;
}

}  // namespace

Record spectral_veech(const Config& cfg) {
  const auto perm = Permutation::parse(cfg.str("perm", "4 3 2 1"));
  const auto lambda = Frequency::parse(cfg.str("lambda"));
  const long steps = cfg.integer("steps");
  VeechOptions vo;
  vo.delta_lattice = cfg.real("delta_lattice", vo.delta_lattice);
  vo.terminal_fraction = cfg.real("terminal_fraction", vo.terminal_fraction);
  vo.attracted_share = cfg.real("attracted_share", vo.attracted_share);
  VeechResult res;
  if (cfg.has("lengths")) {
    std::vector<std::int64_t> heights;
    if (cfg.has("heights"))
      for (double h : cfg.reals("heights")) heights.push_back(static_cast<std::int64_t>(h));
    res = veech_orbit(make_iet(perm, cfg.reals("lengths")), lambda, steps, heights, vo);
  } else {
    res = veech_orbit_random(perm, lambda, steps, seed(cfg), vo);
  }
  const double floor_dist = cfg.real("dist_floor", 0.05);
  const auto window = static_cast<std::size_t>(std::min<long>(cfg.integer("window", 10000), static_cast<long>(res.states.size())));
  std::size_t above = 0;
  for (std::size_t i = res.states.size() - window; i < res.states.size(); ++i) above += res.states[i].dist >= floor_dist;

  Record r;
  r.command = "spectral veech";
  Table t{{"t", "dist"}, {}};
  for (const auto& s : res.states) t.add({fmt(s.t), fmt(s.dist)});
  r.table = t;
  r.values = {{"perm", perm.str()}, {"lambda", lambda.str()}, {"exact", lambda.exact.has_value()}, {"steps", steps},
              {"final_dist", res.states.back().dist}, {"horizon", res.horizon}};
  r.verdict = Json{{"lattice_attracted", res.lattice_attracted},
                   {"delta_lattice", vo.delta_lattice},
                   {"terminal_fraction", vo.terminal_fraction},
                   {"attracted_share", vo.attracted_share},
                   {"dist_floor", floor_dist},
                   {"window", window},
                   {"share_at_or_above_floor", window ? static_cast<double>(above) / static_cast<double>(window) : 0.0},
                   {"precision_horizon", res.horizon}};
  if (res.horizon >= 0) r.warnings.push_back("fixed-point precision horizon reached at step " + std::to_string(res.horizon));
  return r;
}

Record spectral_decay(const Config& cfg) {
  Series s;
  Json info = Json::object();
  if (cfg.has("series")) {
    s = read_series(cfg.str("series"));
  } else {
    bool zm = false;
    s = orbit_series(cfg, cfg.real("lambda"), false, zm, info);
  }
  const auto fit = decay_exponent(s.T, s.value, fit_options(cfg));
  const double alpha_min = cfg.real("alpha_min", 0.05);
  Record r;
  r.command = "spectral decay";
  r.table = series_table(s);
  r.values = info;
  r.values["alpha"] = fit_json(fit);
  r.verdict = Json{{"alpha", fit.value}, {"ci_low", fit.ci_low}, {"ci_high", fit.ci_high}, {"alpha_min", alpha_min},
                   {"polynomial_decay", fit.value > alpha_min && fit.ci_low > 0.0}};
  return r;
}

Record spectral_deviation(const Config& cfg) {
  Series s;
  Json info = Json::object();
  bool zero_mean = false;
  const std::string statistic = cfg.str("statistic", "sup");
  if (statistic != "sup" && statistic != "abs") throw Error(ErrorCode::ConfigParse, "statistic must be sup or abs");
  if (cfg.has("series")) {
    s = read_series(cfg.str("series"));
    zero_mean = cfg.flag("zero_mean");
  } else {
    s = orbit_series(cfg, 0.0, statistic == "sup", zero_mean, info);
  }
  const auto fit = deviation_exponent(s.T, s.value, zero_mean, fit_options(cfg));
  Record r;
  r.command = "spectral deviation";
  r.table = series_table(s);
  r.values = info;
  r.values["statistic"] = statistic;
  r.values["nu"] = fit_json(fit);
  r.verdict = Json{{"nu", fit.value}, {"ci_low", fit.ci_low}, {"ci_high", fit.ci_high},
                   {"average_decay_exponent", fit.value - 1.0}};
  return r;
}

Record spectral_ostrowski(const Config& cfg) {
  const double T = cfg.real("T");
  const auto d = ostrowski_decompose(T, parse_scales(cfg.str("scales")));
  Record r;
  r.command = "spectral ostrowski";
  Table t{{"k", "scale", "m"}, {}};
  for (std::size_t k = 0; k < d.scales.size(); ++k) t.add({fmt(static_cast<long>(k)), fmt(d.scales[k]), fmt(d.m[k])});
  r.table = t;
  r.values = {{"T", T}, {"m", d.m}, {"remainder", d.remainder}, {"top", d.top}, {"reconstructed", d.reconstruct()},
              {"constraint_ok", d.satisfies_constraint()}};
  return r;
}

Record spectral_measure(const Config& cfg) {
  const auto ls = load_surface(cfg);
  const double theta = cfg.real("theta");
  const auto f = Observable::parse(cfg.str("f"));
  const auto grid = parse_grid(cfg.str("grid"));
  const auto times = cfg.has("times") ? cfg.reals("times") : std::vector<double>{cfg.real("T")};
  SpectralOptions so;
  so.peak_factor = cfg.real("peak_factor", so.peak_factor);
  const auto sm = spectral_measure_estimate(ls.surface, theta, f, grid, times, start_point(cfg, ls.surface), so);
  Record r;
  r.command = "spectral measure";
  Table t{{"lambda", "estimate"}, {}};
  double mass = 0.0, peak = 0.0;
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double v = sm.estimate.back()[j];
    t.add({fmt(grid[j]), fmt(v)});
    peak = std::max(peak, v);
    if (j + 1 < grid.size()) mass += v * (grid[j + 1] - grid[j]);
  }
  r.table = t;
  Json cands = Json::array();
  for (int j : sm.candidates) cands.push_back(grid[static_cast<std::size_t>(j)]);
  Json maxima = Json::array();
  for (const auto& row : sm.estimate) maxima.push_back(*std::max_element(row.begin(), row.end()));
  r.values = {{"surface", ls.source}, {"theta", theta}, {"f", f.text()}, {"times", times}, {"grid_points", grid.size()},
              {"max_estimate_per_time", maxima}, {"grid_mass", mass}, {"l2_norm_squared", f.l2_norm_squared(ls.surface)}};
  r.verdict = Json{{"peak_factor", so.peak_factor}, {"median_last", sm.median_last}, {"max_last", peak},
                   {"candidates", cands}};
  return r;
}

}  // namespace flatline::cli
