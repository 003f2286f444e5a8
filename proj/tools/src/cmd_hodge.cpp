#include <cmath>

#include "args.hpp"
#include "commands.hpp"
#include "flatline/error.hpp"
#include "flatline/hodge.hpp"
#include "flatline/twisted.hpp"

namespace flatline::cli {

namespace {

struct MeshContext {
  LoadedSurface ls;
  FlatMesh mesh;
  HodgeOptions options;
};

MeshContext mesh_context(const Config& cfg) {
  MeshContext c{load_surface(cfg), {}, {}};
  MeshOptions mo;
  mo.grading_strength = cfg.real("grading", mo.grading_strength);
  mo.grading_radius = cfg.real("grading_radius", mo.grading_radius);
  mo.angle_floor_deg = cfg.real("angle_floor", mo.angle_floor_deg);
  c.mesh = FlatMesh::build(c.ls.surface, static_cast<int>(cfg.integer("level", 1)), mo);
  c.options.solver_tol = cfg.real("solver_tol", c.options.solver_tol);
  c.options.tol_closed = cfg.real("tol_closed", c.options.tol_closed);
  return c;
}

Json mesh_stats(const MeshContext& c) {
  return {{"level", c.mesh.level()},
          {"vertices", c.mesh.num_vertices()},
          {"edges", c.mesh.num_edges()},
          {"triangles", c.mesh.num_triangles()},
          {"min_angle_deg", c.mesh.min_angle_deg()},
          {"max_edge_length", c.mesh.max_edge_length()},
          {"solver_tol", c.options.solver_tol},
          {"tol_closed", c.options.tol_closed}};
}

Json vec_json(const Eigen::VectorXd& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

Record base(const std::string& command, const MeshContext& c) {
  Record r;
  r.command = command;
  r.values = {{"surface", c.ls.source}, {"mesh", mesh_stats(c)}};
  return r;
}

TwistedOptions twisted_options(const Config& cfg) {
  TwistedOptions t;
  t.zero_tol = cfg.real("zero_tol", t.zero_tol);
  t.indeterminate_tol = cfg.real("indeterminate_tol", t.indeterminate_tol);
  return t;
}

}  // namespace

Record hodge_norm(const Config& cfg) {
  const auto c = mesh_context(cfg);
  const auto cls = class_periods(cfg.str("class", "reh"), c.mesh);
  const auto rep = HodgeSolver(c.mesh, c.options).harmonic_representative(cls);
  Record r = base("hodge norm", c);
  r.values["class"] = vec_json(cls);
  r.values["norm"] = std::sqrt(rep.energy);
  r.values["energy"] = rep.energy;
  r.values["residual"] = rep.residual;
  return r;
}

Record hodge_bform(const Config& cfg) {
  const auto c = mesh_context(cfg);
  const auto cls = class_periods(cfg.str("class", "reh"), c.mesh);
  const auto rep = HodgeSolver(c.mesh, c.options).harmonic_representative(cls);
  const Complex b = b_form2(c.mesh, rep, rep);
  Record r = base("hodge bform", c);
  r.values["class"] = vec_json(cls);
  r.values["b_re"] = b.real();
  r.values["b_im"] = b.imag();
  r.values["abs_b_over_norm2"] = rep.energy > 0.0 ? std::abs(b) / rep.energy : 0.0;
  r.values["residual"] = rep.residual;
  return r;
}

Record hodge_lambda(const Config& cfg) {
  const auto c = mesh_context(cfg);
  const auto res = lambda_max(HodgeSolver(c.mesh, c.options));
  Record r = base("hodge lambda", c);
  r.values["lambda"] = res.value;
  r.values["theta"] = res.theta;
  r.values["maximizer"] = vec_json(res.maximizer);
  return r;
}

Record hodge_variation(const Config& cfg) {
  const auto c = mesh_context(cfg);
  const auto cls = class_periods(cfg.str("class", "reh"), c.mesh);
  const auto fv = first_variation_check(c.mesh, cls, cfg.real("dt", 1e-4), c.options);
  Record r = base("hodge variation", c);
  r.values["class"] = vec_json(cls);
  r.values["finite_difference"] = fv.finite_difference;
  r.values["two_re_b"] = fv.two_re_b;
  r.values["relative_mismatch"] = fv.mismatch();
  return r;
}

Record hodge_twisted_rank(const Config& cfg) {
  const auto c = mesh_context(cfg);
  const auto eta = class_periods(cfg.str("eta"), c.mesh);
  const auto topt = twisted_options(cfg);
  const auto tr = twisted_rank(c.mesh, eta, topt);
  Record r = base("hodge twisted-rank", c);
  r.values["eta"] = vec_json(eta);
  r.values["rank"] = tr.rank;
  r.values["rank_d0"] = tr.rank_d0;
  r.values["rank_d1"] = tr.rank_d1;
  r.values["smallest_kept_relative_sv"] = tr.gap;
  r.values["largest_zero_relative_sv"] = tr.largest_zero;
  r.values["zero_tol"] = topt.zero_tol;
  r.values["indeterminate_tol"] = topt.indeterminate_tol;
  return r;
}

Record hodge_lambda_sharp(const Config& cfg) {
  const auto c = mesh_context(cfg);
  const auto eta = class_periods(cfg.str("eta"), c.mesh);
  const auto ls = lambda_sharp(c.mesh, eta, twisted_options(cfg));
  Record r = base("hodge lambda-sharp", c);
  r.values["eta"] = vec_json(eta);
  r.values["lambda_sharp"] = ls.value;
  r.values["twisted_rank"] = ls.rank;
  return r;
}

}  // namespace flatline::cli
