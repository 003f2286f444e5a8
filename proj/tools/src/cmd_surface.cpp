#include <cmath>
#include <sstream>

#include "args.hpp"
#include "commands.hpp"
#include "flatline/billiard.hpp"
#include "flatline/error.hpp"
#include "flatline/homology.hpp"

namespace flatline::cli {

namespace {

Json surface_summary(const LoadedSurface& ls) {
  const auto& s = ls.surface;
  Json v = Json::object();
  v["name"] = ls.spec.name;
  v["source"] = ls.source;
  v["polygons"] = s.polygons().size();
  v["genus"] = s.genus();
  v["stratum"] = s.stratum().str();
  v["kappa"] = s.stratum().kappa;
  v["area"] = s.area();
  Json cones = Json::array();
  for (const auto& c : s.cone_points()) cones.push_back({{"angle_over_pi", c.total_angle / M_PI}, {"kappa", c.kappa()}});
  v["cone_points"] = cones;
  const auto basis = homology_basis(s);
  Json inter = Json::array();
  for (Eigen::Index i = 0; i < basis.intersection.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < basis.intersection.cols(); ++j) row.push_back(basis.intersection(i, j));
    inter.push_back(row);
  }
  v["intersection_matrix"] = inter;
  if (ls.spec.billiard) {
    const auto& b = *ls.spec.billiard;
    const auto rat = b.angles.empty() ? rational_angles(PlanarPolygon{"P", b.vertices}) : b.angles;
    v["billiard_genus"] = billiard_genus(rat);
    Json angles = Json::array();
    for (const auto& a : rat) angles.push_back(a.str());
    v["billiard_angles"] = angles;
  }
  return v;
}

Record spec_record(const std::string& command, const LoadedSurface& ls) {
  Record r;
  r.command = command;
  r.values = surface_summary(ls);
  std::ostringstream out;
  write_surface_spec(out, ls.surface, ls.spec.name.empty() ? "surface" : ls.spec.name);
  r.text = out.str();
  return r;
}

}  // namespace

Record surface_build(const Config& cfg) { return spec_record("surface build", load_surface(cfg)); }

Record surface_unfold(const Config& cfg) {
  const auto ls = load_surface(cfg);
  if (!ls.spec.billiard) throw Error(ErrorCode::InvalidArgument, "unfold needs a billiard block");
  return spec_record("surface unfold", ls);
}

Record surface_info(const Config& cfg) {
  Record r;
  r.command = "surface info";
  r.values = surface_summary(load_surface(cfg));
  return r;
}

}  // namespace flatline::cli
