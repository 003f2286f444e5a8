#include <cmath>

#include "args.hpp"
#include "commands.hpp"
#include "flatline/error.hpp"
#include "flatline/homology.hpp"
#include "flatline/observable.hpp"

namespace flatline::cli {

namespace {

Json point_json(const SurfacePoint& p) { return {{"polygon", p.polygon}, {"x", p.pos.x}, {"y", p.pos.y}}; }

// Dyadic times up to T, plus T itself; `times` overrides.
std::vector<double> sample_times(const Config& cfg) {
  if (cfg.has("times")) return cfg.reals("times");
  const double T = cfg.real("T");
  if (!(T >= 1.0)) throw Error(ErrorCode::InvalidArgument, "T must be at least 1");
  std::vector<double> out;
  for (double t = 1.0; t <= T; t *= 2.0) out.push_back(t);
  if (out.back() < T) out.push_back(T);
  return out;
}

Record integral_record(const Config& cfg, const std::string& command, double lambda) {
  const auto ls = load_surface(cfg);
  const double theta = cfg.real("theta");
  const auto f = Observable::parse(cfg.str("f"));
  const auto start = start_point(cfg, ls.surface);
  const auto series = twisted_integral_series(ls.surface, theta, f, lambda, start, sample_times(cfg));
  Record r;
  r.command = command;
  Table t{{"T", "value_re", "value_im"}, {}};
  for (std::size_t i = 0; i < series.times.size(); ++i)
    t.add({fmt(series.times[i]), fmt(series.values[i].real()), fmt(series.values[i].imag())});
  r.table = t;
  const Complex last = series.values.back();
  r.values = {{"surface", ls.source}, {"theta", theta}, {"f", f.text()}, {"lambda", lambda}, {"start", point_json(start)},
              {"T", series.times.back()}, {"value_re", last.real()}, {"value_im", last.imag()},
              {"abs_over_T", std::abs(last) / series.times.back()}, {"sup_abs", series.sup_abs.back()}};
  return r;
}

}  // namespace

Record flow_trace(const Config& cfg) {
  const auto ls = load_surface(cfg);
  const double theta = cfg.real("theta");
  const double T = cfg.real("T");
  const auto start = start_point(cfg, ls.surface);
  const auto seg = trace_orbit(ls.surface, theta, start, T);
  if (seg.hit_singularity) throw Error(ErrorCode::SingularOrbit, "orbit meets a cone point at t = " + fmt(seg.duration));
  Record r;
  r.command = "flow trace";
  Table t{{"time", "gluing", "sign"}, {}};
  for (const auto& c : seg.crossings) t.add({fmt(c.time), fmt(c.gluing), fmt(c.sign)});
  r.table = t;
  r.values = {{"surface", ls.source}, {"theta", theta}, {"T", T}, {"start", point_json(start)}, {"end", point_json(seg.end)},
              {"crossings", seg.crossings.size()}};
  const auto basis = homology_basis(ls.surface);
  const Eigen::VectorXi cls = orbit_homology_class(ls.surface, seg, basis);
  Json jc = Json::array(), jf = Json::array();
  for (Eigen::Index i = 0; i < cls.size(); ++i) {
    jc.push_back(cls[i]);
    jf.push_back(cls[i] / T);
  }
  r.values["homology_class"] = jc;
  r.values["flux"] = jf;
  return r;
}

Record flow_birkhoff(const Config& cfg) { return integral_record(cfg, "flow birkhoff", 0.0); }

Record flow_twisted(const Config& cfg) { return integral_record(cfg, "flow twisted", cfg.real("lambda")); }

}  // namespace flatline::cli
