#include "output.hpp"

#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "flatline/error.hpp"

namespace flatline::cli {

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}
std::string fmt(long x) { return std::to_string(x); }
std::string fmt(int x) { return std::to_string(x); }

Json Table::to_json() const {
  Json out = Json::array();
  for (const auto& row : rows) {
    Json o = Json::object();
    for (std::size_t i = 0; i < columns.size() && i < row.size(); ++i) {
      // Numbers stay numbers.
      char* end = nullptr;
      const double v = std::strtod(row[i].c_str(), &end);
      if (!row[i].empty() && end == row[i].c_str() + row[i].size())
        o[columns[i]] = v;
      else
        o[columns[i]] = row[i];
    }
    out.push_back(std::move(o));
  }
  return out;
}

std::string header_lines(const Meta& meta, const std::string& prefix) {
  std::string out;
  out += prefix + "flatline " FLATLINE_VERSION "\n";
  out += prefix + "command = " + meta.command + "\n";
  out += prefix + "config_hash = " + meta.config_hash + "\n";
  out += prefix + "seed = " + meta.seed + "\n";
  return out;
}

std::string render_json(const Meta& meta, const Record& r) {
  Json doc = Json::object();
  doc["meta"] = {{"tool", "flatline"},
                 {"version", FLATLINE_VERSION},
                 {"command", meta.command},
                 {"config_hash", meta.config_hash},
                 {"seed", meta.seed},
                 {"wall_time_s", meta.wall_time}};
  doc["values"] = r.values;
  if (r.verdict) doc["verdict"] = *r.verdict;
  if (r.table) doc["series"] = r.table->to_json();
  doc["warnings"] = r.warnings;
  return doc.dump(2) + "\n";
}

std::string render_csv(const Meta& meta, const Table& t) {
  std::string out = header_lines(meta, "# ");
  for (std::size_t i = 0; i < t.columns.size(); ++i) out += (i ? "," : "") + t.columns[i];
  out += "\n";
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + row[i];
    out += "\n";
  }
  return out;
}

void write_atomic(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content << std::flush;
    return;
  }
  namespace fs = std::filesystem;
  const fs::path target(path);
  const fs::path tmp = target.parent_path() / (target.filename().string() + ".tmp." + std::to_string(::getpid()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::Io, "cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw Error(ErrorCode::Io, "short write to " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Error(ErrorCode::Io, "cannot rename into " + path);
  }
}

}  // namespace flatline::cli
