#include "dispatch.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <map>

#include "commands.hpp"
#include "exit_codes.hpp"
#include "flatline/error.hpp"
#include "output.hpp"

namespace flatline::cli {

namespace {

using Handler = std::function<Record(const Config&)>;

const std::map<std::string, Handler>& handlers() {
  static const std::map<std::string, Handler> table = {
      {"surface build", surface_build},
      {"surface unfold", surface_unfold},
      {"surface info", surface_info},
      {"flow trace", flow_trace},
      {"flow birkhoff", flow_birkhoff},
      {"flow twisted", flow_twisted},
      {"renorm lyapunov", renorm_lyapunov},
      {"renorm loop", renorm_loop},
      {"renorm recurrence", renorm_recurrence},
      {"hodge norm", hodge_norm},
      {"hodge bform", hodge_bform},
      {"hodge lambda", hodge_lambda},
      {"hodge variation", hodge_variation},
      {"hodge twisted-rank", hodge_twisted_rank},
      {"hodge lambda-sharp", hodge_lambda_sharp},
      {"spectral veech", spectral_veech},
      {"spectral decay", spectral_decay},
      {"spectral deviation", spectral_deviation},
      {"spectral ostrowski", spectral_ostrowski},
      {"spectral measure", spectral_measure},
      {"corpus", corpus},
  };
  return table;
}

}  // namespace

std::vector<std::string> command_names() {
  std::vector<std::string> names;
  for (const auto& [name, handler] : handlers()) names.push_back(name);
  return names;
}

int execute(const Config& cfg) {
  try {
    if (!cfg.has("command")) throw Error(ErrorCode::ConfigParse, "missing key 'command'");
    const std::string command = cfg.str("command");
    const auto it = handlers().find(command);
    if (it == handlers().end()) throw Error(ErrorCode::ConfigParse, "unknown command '" + command + "'");

    const auto t0 = std::chrono::steady_clock::now();
    Record r = it->second(cfg);
    Meta meta;
    meta.command = command;
    meta.config_hash = cfg.hash_hex();
    if (cfg.has("seed")) meta.seed = cfg.str("seed");
    meta.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    std::string content;
    if (cfg.has("json") && cfg.flag("json"))
      content = render_json(meta, r);
    else if (r.text)
      content = *r.text;
    else if (r.table)
      content = render_csv(meta, *r.table);
    else
      content = render_json(meta, r);
    write_atomic(cfg.str("out", "-"), content);

    if (cfg.has("verdict")) {
      Record v = r;
      v.table.reset();
      v.text.reset();
      write_atomic(cfg.str("verdict"), render_json(meta, v));
    }
    for (const auto& w : r.warnings) std::cerr << "warning: " << w << '\n';
    return kOk;
  } catch (const Error& e) {
    std::cerr << "flatline: " << e.what() << '\n';
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "flatline: unexpected error: " << e.what() << '\n';
    return kUnexpected;
  }
}

}  // namespace flatline::cli
