#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace flatline::cli {

using Json = nlohmann::ordered_json;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  void add(std::vector<std::string> row) { rows.push_back(std::move(row)); }
  Json to_json() const;
};

std::string fmt(double x);
std::string fmt(long x);
std::string fmt(int x);

// What a command produced. `values` always exists; `table` is written as
// CSV unless JSON output was requested; `text` replaces both (surface specs).
struct Record {
  std::string command;
  Json values = Json::object();
  std::optional<Table> table;
  std::optional<std::string> text;
  std::optional<Json> verdict;
  std::vector<std::string> warnings;
};

struct Meta {
  std::string command;
  std::string config_hash;
  std::string seed = "none";
  double wall_time = 0.0;
};

std::string header_lines(const Meta& meta, const std::string& prefix);
std::string render_json(const Meta& meta, const Record& r);
std::string render_csv(const Meta& meta, const Table& t);

// Write-then-rename into `path`; "-" or empty means stdout.
void write_atomic(const std::string& path, const std::string& content);

}  // namespace flatline::cli
