#include <cmath>
#include <sstream>

#include "args.hpp"
#include "commands.hpp"
#include "flatline/error.hpp"
#include "flatline/lyapunov.hpp"
#include "flatline/pseudo_anosov.hpp"
#include "flatline/recurrence.hpp"

namespace flatline::cli {

namespace {

Eigen::MatrixXi parse_matrix(const std::string& text) {
  std::vector<std::vector<int>> rows;
  std::stringstream ss(text);
  std::string row;
  while (std::getline(ss, row, ';')) {
    std::stringstream rs(row);
    std::vector<int> r;
    std::string tok;
    while (rs >> tok) r.push_back(static_cast<int>(parse_integer(tok, "matrix")));
    if (!r.empty()) rows.push_back(r);
  }
  if (rows.empty()) throw Error(ErrorCode::ConfigParse, "empty matrix");
  Eigen::MatrixXi m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows[0].size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows[0].size()) throw Error(ErrorCode::ConfigParse, "ragged matrix");
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
  }
  return m;
}

}  // namespace

Record renorm_lyapunov(const Config& cfg) {
  const auto perm = Permutation::parse(cfg.str("perm"));
  const long steps = cfg.integer("steps");
  const int k = static_cast<int>(cfg.integer("k", perm.size()));
  const long count = cfg.integer("seeds", 1);
  if (count < 1) throw Error(ErrorCode::InvalidArgument, "seeds must be positive");
  std::vector<std::uint64_t> seeds;
  for (long i = 0; i < count; ++i) seeds.push_back(seed(cfg) + static_cast<std::uint64_t>(i));
  const auto results = lyapunov_replicas(perm, k, steps, seeds, thread_count(cfg));

  Record r;
  r.command = "renorm lyapunov";
  Table t;
  t.columns.push_back("seed");
  for (int i = 1; i <= k; ++i) t.columns.push_back("exponent_" + std::to_string(i));
  t.columns.push_back("zero_count");
  t.columns.push_back("converged");
  std::vector<double> mean(static_cast<std::size_t>(k), 0.0);
  bool all_converged = true;
  for (const auto& res : results) {
    std::vector<std::string> row{fmt(static_cast<long>(res.seed))};
    for (int i = 0; i < k; ++i) {
      row.push_back(fmt(res.exponents[static_cast<std::size_t>(i)]));
      mean[static_cast<std::size_t>(i)] += res.exponents[static_cast<std::size_t>(i)] / static_cast<double>(results.size());
    }
    row.push_back(fmt(res.zero_count));
    row.push_back(res.converged ? "true" : "false");
    t.add(row);
    all_converged = all_converged && res.converged;
  }
  r.table = t;
  r.values = {{"perm", perm.str()}, {"steps", steps}, {"k", k}, {"seeds", count}, {"mean_exponents", mean},
              {"converged", all_converged}};
  if (!all_converged)
    r.warnings.push_back(std::string(to_string(ErrorCode::NonConvergence)) +
                         ": batch-means standard error above threshold or fewer than 1e5 steps");
  return r;
}

Record renorm_loop(const Config& cfg) {
  PseudoAnosov pa;
  if (cfg.has("matrix")) {
    pa = pseudo_anosov_from_matrix(parse_matrix(cfg.str("matrix")));
  } else if (cfg.has("word")) {
    pa = pseudo_anosov_from_loop(Permutation::parse(cfg.str("perm")), parse_word(cfg.str("word")));
  } else {
    pa = find_periodic_loop(Permutation::parse(cfg.str("perm")), static_cast<int>(cfg.integer("max_len", 12)));
  }
  Record r;
  r.command = "renorm loop";
  r.values = {{"perm", pa.perm.size() ? pa.perm.str() : ""},
              {"word", word_string(pa.loop)},
              {"dilation", pa.dilation},
              {"rho", pa.rho},
              {"effective_exponent", pa.effective_exponent},
              {"effective_exponent_raw", pa.effective_exponent_raw},
              {"dilation_simple", pa.dilation_simple},
              {"inverse_simple", pa.inverse_simple}};
  return r;
}

Record renorm_recurrence(const Config& cfg) {
  const auto ls = load_surface(cfg);
  const double theta = cfg.real("theta");
  const auto series = recurrence_series(ls.surface, theta, cfg.real("tmax"), cfg.real("dt"), cfg.real("bound", 4.0));
  const double delta = cfg.real("delta", 0.2);
  Record r;
  r.command = "renorm recurrence";
  Table t{{"t", "systole"}, {}};
  double lo = INFINITY;
  for (const auto& s : series) {
    t.add({fmt(s.t), fmt(s.systole)});
    lo = std::min(lo, s.systole);
  }
  r.table = t;
  r.values = {{"surface", ls.source}, {"theta", theta}, {"samples", series.size()}, {"min_systole", lo},
              {"delta", delta}, {"visit_frequency", visit_frequency(series, delta)}};
  return r;
}

}  // namespace flatline::cli
