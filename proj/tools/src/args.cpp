#include "args.hpp"

#include <cstdlib>
#include <random>
#include <sstream>
#include <thread>

#include "flatline/error.hpp"

namespace flatline::cli {

LoadedSurface load_surface(const Config& cfg, const std::string& key) {
  LoadedSurface out;
  out.source = cfg.str(key);
  if (out.source == "@torus") {
    out.surface = square_torus();
    out.spec.name = "torus";
  } else if (out.source == "@octagon") {
    out.surface = regular_octagon_surface();
    out.spec.name = "octagon";
  } else {
    out.spec = load_surface_spec(out.source);
    out.surface = surface_from_spec(out.spec);
  }
  return out;
}

SurfacePoint start_point(const Config& cfg, const TranslationSurface& s) {
  if (cfg.has("start")) {
    const auto xy = cfg.reals("start");
    if (xy.size() != 2) throw Error(ErrorCode::ConfigParse, "start must be x,y");
    const long p = cfg.integer("polygon", 0);
    if (p < 0 || p >= static_cast<long>(s.polygons().size())) throw Error(ErrorCode::InvalidArgument, "polygon index out of range");
    return {static_cast<int>(p), {xy[0], xy[1]}};
  }
  std::mt19937_64 rng(seed(cfg));
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return random_point(s, [&] { return u(rng); });
}

Eigen::VectorXd class_periods(const std::string& spec, const FlatMesh& mesh) {
  const auto n = static_cast<Eigen::Index>(mesh.basis().cycles.size());
  std::string s = spec;
  double scale = 1.0;
  if (const auto star = s.find('*'); star != std::string::npos) {
    scale = parse_real(s.substr(0, star), "class scale");
    s = s.substr(star + 1);
  }
  if (s == "reh") return scale * mesh.re_h();
  if (s == "imh") return scale * mesh.im_h();
  std::vector<double> v;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) v.push_back(parse_real(item, "class"));
  if (static_cast<Eigen::Index>(v.size()) != n)
    throw Error(ErrorCode::InvalidArgument, "class needs " + std::to_string(n) + " periods, got " + std::to_string(v.size()));
  Eigen::VectorXd out(n);
  for (Eigen::Index i = 0; i < n; ++i) out[i] = scale * v[static_cast<std::size_t>(i)];
  return out;
}

std::uint64_t seed(const Config& cfg) {
  const long s = cfg.integer("seed", 1);
  if (s < 0) throw Error(ErrorCode::ConfigParse, "seed must be nonnegative");
  return static_cast<std::uint64_t>(s);
}

int thread_count(const Config& cfg) {
  long n = 0;
  if (cfg.has("threads")) {
    n = cfg.integer("threads");
  } else if (const char* env = std::getenv("FLATLINE_THREADS"); env && *env) {
    n = parse_integer(env, "FLATLINE_THREADS");
  } else {
    n = static_cast<long>(std::thread::hardware_concurrency());
  }
  return static_cast<int>(std::max(1L, n));
}

}  // namespace flatline::cli
