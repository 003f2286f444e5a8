#include <iostream>
#include <map>
#include <memory>
#include <optional>

#include "CLI11.hpp"
#include "config.hpp"
#include "dispatch.hpp"
#include "exit_codes.hpp"
#include "flatline/error.hpp"

using namespace flatline;
using namespace flatline::cli;

namespace {

struct CommandSpec {
  std::string group, name, help;
  std::vector<std::string> keys;
};

const std::vector<std::string> kSurface = {"surface"};
const std::vector<std::string> kOrbit = {"surface", "theta", "T", "times", "start", "polygon", "f"};
const std::vector<std::string> kMesh = {"surface", "level", "grading", "grading_radius", "angle_floor", "solver_tol", "tol_closed"};

std::vector<std::string> join(std::vector<std::string> a, const std::vector<std::string>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

const std::vector<CommandSpec>& command_specs() {
  static const std::vector<CommandSpec> specs = {
      {"surface", "build", "validate a spec and write the glued surface", kSurface},
      {"surface", "unfold", "unfold a rational billiard table", kSurface},
      {"surface", "info", "genus, stratum, cone points, intersection form", kSurface},
      {"flow", "trace", "trace one orbit and record edge crossings", {"surface", "theta", "T", "start", "polygon"}},
      {"flow", "birkhoff", "Birkhoff integrals at sample times", kOrbit},
      {"flow", "twisted", "twisted integrals at sample times", join(kOrbit, {"lambda"})},
      {"renorm", "lyapunov", "Kontsevich-Zorich exponents by Zorich induction", {"perm", "steps", "k", "seeds"}},
      {"renorm", "loop", "pseudo-Anosov from a matrix, a Rauzy word or a search", {"matrix", "perm", "word", "max_len"}},
      {"renorm", "recurrence", "systole along the Teichmuller orbit", {"surface", "theta", "tmax", "dt", "bound", "delta"}},
      {"hodge", "norm", "Hodge norm of a class", join(kMesh, {"class"})},
      {"hodge", "bform", "B form of a class", join(kMesh, {"class"})},
      {"hodge", "lambda", "max |B|/norm^2 off the tautological plane", kMesh},
      {"hodge", "variation", "finite-difference first variation of the Hodge norm", join(kMesh, {"class", "dt"})},
      {"hodge", "twisted-rank", "dimension of twisted cohomology", join(kMesh, {"eta", "zero_tol", "indeterminate_tol"})},
      {"hodge", "lambda-sharp", "twisted spectral gap function", join(kMesh, {"eta", "zero_tol", "indeterminate_tol"})},
      {"spectral", "veech", "Veech criterion orbit distance to the lattice",
       {"perm", "lambda", "steps", "lengths", "heights", "delta_lattice", "terminal_fraction", "attracted_share",
        "dist_floor", "window"}},
      {"spectral", "decay", "decay exponent of twisted integrals",
       {"surface", "theta", "f", "lambda", "start", "polygon", "tmin_exp", "tmax_exp", "series", "discard", "bootstrap",
        "alpha_min", "center"}},
      {"spectral", "deviation", "deviation exponent of ergodic integrals",
       {"surface", "theta", "f", "start", "polygon", "tmin_exp", "tmax_exp", "series", "zero_mean", "statistic",
        "discard", "bootstrap", "center"}},
      {"spectral", "ostrowski", "Ostrowski decomposition of a time", {"T", "scales"}},
      {"spectral", "measure", "spectral measure estimate on a frequency grid",
       {"surface", "theta", "f", "grid", "times", "T", "start", "polygon", "peak_factor"}},
  };
  return specs;
}

// Options shared by every leaf command.
struct Common {
  bool json = false;
  std::string seed, threads, out, verdict;
  std::vector<std::string> sets;

  void attach(CLI::App* app) {
    app->add_flag("--json", json, "write JSON instead of CSV");
    app->add_option("--seed", seed, "random seed");
    app->add_option("--threads", threads, "worker threads (default FLATLINE_THREADS or hardware)");
    app->add_option("--out,-o", out, "output path, - for stdout");
    app->add_option("--verdict", verdict, "also write the verdict JSON here");
    app->add_option("--set", sets, "extra key=value settings")->take_all();
  }

  void apply(Config& cfg) const {
    for (const auto& kv : sets) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw Error(ErrorCode::ConfigParse, "--set expects key=value, got '" + kv + "'");
      cfg.set(kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (json) cfg.set("json", "true");
    if (!seed.empty()) cfg.set("seed", seed);
    if (!threads.empty()) cfg.set("threads", threads);
    if (!out.empty()) cfg.set("out", out);
    if (!verdict.empty()) cfg.set("verdict", verdict);
  }
};

struct Leaf {
  CLI::App* app;
  std::string command;
  std::map<std::string, std::string> values;
  Common common;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"flatline: translation surfaces, renormalization and weak mixing"};
  app.set_version_flag("--version", std::string("flatline ") + FLATLINE_VERSION);
  app.require_subcommand(1);

  std::vector<std::unique_ptr<Leaf>> leaves;
  std::map<std::string, CLI::App*> groups;
  for (const auto& spec : command_specs()) {
    auto& group = groups[spec.group];
    if (!group) group = app.add_subcommand(spec.group)->require_subcommand(1);
    auto leaf = std::make_unique<Leaf>();
    leaf->command = spec.group + " " + spec.name;
    leaf->app = group->add_subcommand(spec.name, spec.help);
    for (const auto& key : spec.keys) leaf->app->add_option("--" + key, leaf->values[key]);
    leaf->common.attach(leaf->app);
    leaves.push_back(std::move(leaf));
  }

  Leaf corpus_leaf;
  corpus_leaf.command = "corpus";
  corpus_leaf.app = app.add_subcommand("corpus", "surface checks over a list file or directory of specs");
  corpus_leaf.app->add_option("list", corpus_leaf.values["list"], "list file or directory")->required();
  corpus_leaf.common.attach(corpus_leaf.app);

  std::string run_path;
  Common run_common;
  auto* run = app.add_subcommand("run", "execute a key = value config file");
  run->add_option("config", run_path, "config file")->required();
  run_common.attach(run);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    Config cfg;
    if (run->parsed()) {
      cfg = Config::load(run_path);
      run_common.apply(cfg);
      return execute(cfg);
    }
    Leaf* chosen = corpus_leaf.app->parsed() ? &corpus_leaf : nullptr;
    for (auto& leaf : leaves)
      if (leaf->app->parsed()) chosen = leaf.get();
    if (!chosen) return kUsage;
    cfg.set("command", chosen->command);
    for (const auto& [key, value] : chosen->values)
    {
      const auto* opt = chosen->app->get_option_no_throw(key == "list" ? key : "--" + key);
      if (opt && opt->count() > 0) cfg.set(key, value);
    }
    chosen->common.apply(cfg);
    return execute(cfg);
  } catch (const Error& e) {
    std::cerr << "flatline: " << e.what() << '\n';
    return exit_code(e.code());
  }
}
