#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <thread>

#include "args.hpp"
#include "commands.hpp"
#include "flatline/billiard.hpp"
#include "flatline/error.hpp"

namespace flatline::cli {

namespace fs = std::filesystem;

namespace {

// Spec paths from a directory (*.surf, sorted) or a list file (one path per
// line, relative to the list's directory; '#' comments).
std::vector<std::string> corpus_entries(const std::string& where) {
  std::vector<std::string> out;
  std::error_code ec;
  if (fs::is_directory(where, ec)) {
    for (const auto& e : fs::directory_iterator(where))
      if (e.is_regular_file() && e.path().extension() == ".surf") out.push_back(e.path().string());
    std::sort(out.begin(), out.end());
    return out;
  }
  std::ifstream in(where);
  if (!in) throw Error(ErrorCode::Io, "cannot open corpus " + where);
  const fs::path base = fs::path(where).parent_path();
  std::string line;
  while (std::getline(in, line)) {
    line.erase(0, line.find_first_not_of(" \t"));
    line.erase(line.find_last_not_of(" \t\r") + 1);
    if (line.empty() || line[0] == '#') continue;
    const fs::path p(line);
    out.push_back(p.is_absolute() || line[0] == '@' ? line : (base / p).string());
  }
  return out;
}

std::string csv_field(std::string s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

std::vector<std::string> corpus_row(const std::string& path) {
  Config one;
  one.set("surface", path);
  try {
    const auto ls = load_surface(one);
    const auto& s = ls.surface;
    std::string bg;
    if (ls.spec.billiard) {
      const auto& b = *ls.spec.billiard;
      bg = fmt(billiard_genus(b.angles.empty() ? rational_angles(PlanarPolygon{"P", b.vertices}) : b.angles));
    }
    int kappa_sum = 0;
    for (int k : s.stratum().kappa) kappa_sum += k;
    const bool gauss_bonnet = kappa_sum == 2 * s.genus() - 2;
    return {csv_field(path), "ok", fmt(s.genus()), bg, csv_field(s.stratum().str()), fmt(s.area()),
            gauss_bonnet ? "true" : "false", ""};
  } catch (const std::exception& e) {
    return {csv_field(path), "failed", "", "", "", "", "", csv_field(e.what())};
  }
}

}  // namespace

Record corpus(const Config& cfg) {
  const auto entries = corpus_entries(cfg.str("list"));
  std::vector<std::vector<std::string>> rows(entries.size());
  const auto workers = static_cast<std::size_t>(std::max(1, thread_count(cfg)));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next++) < entries.size();) rows[i] = corpus_row(entries[i]);
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < std::min(workers, entries.size()); ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();

  Record r;
  r.command = "corpus";
  Table t{{"file", "status", "genus", "billiard_genus", "stratum", "area", "gauss_bonnet", "error"}, {}};
  std::size_t failed = 0;
  for (auto& row : rows) {
    failed += row[1] == "failed";
    t.add(std::move(row));
  }
  r.table = t;
  r.values = {{"surfaces", entries.size()}, {"failed", failed}};
  if (failed) r.warnings.push_back(std::to_string(failed) + " corpus entries failed");
  return r;
}

}  // namespace flatline::cli
