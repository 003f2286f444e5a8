#include "config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "flatline/error.hpp"

namespace flatline::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t\r\n") - b + 1);
}

const std::set<std::string> kNonSemantic = {"out", "verdict", "threads", "json"};

}  // namespace

double parse_real(const std::string& text, const std::string& what) {
  const std::string t = trim(text);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(t, &used);
  } catch (...) {
    used = 0;
  }
  if (used == 0 || used != t.size() || !std::isfinite(v))
    throw Error(ErrorCode::ConfigParse, what + ": expected a number, got '" + text + "'");
  return v;
}

long parse_integer(const std::string& text, const std::string& what) {
  const double v = parse_real(text, what);
  if (v != std::floor(v) || std::abs(v) > 9e18) throw Error(ErrorCode::ConfigParse, what + ": expected an integer, got '" + text + "'");
  return static_cast<long>(v);
}

Config Config::parse(const std::string& text) {
  Config c;
  std::istringstream in(text);
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    ++n;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw Error(ErrorCode::ConfigParse, "line " + std::to_string(n) + ": expected key = value");
    const std::string key = trim(t.substr(0, eq));
    if (key.empty()) throw Error(ErrorCode::ConfigParse, "line " + std::to_string(n) + ": empty key");
    if (c.has(key)) throw Error(ErrorCode::ConfigParse, "line " + std::to_string(n) + ": duplicate key '" + key + "'");
    c.values_[key] = trim(t.substr(eq + 1));
  }
  return c;
}

Config Config::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open config " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

void Config::set(const std::string& key, const std::string& value) {
  if (key.empty() || key.find_first_of("=#\n") != std::string::npos || value.find('\n') != std::string::npos)
    throw Error(ErrorCode::ConfigParse, "config entries must be single-line key = value");
  values_[key] = trim(value);
}

std::string Config::str(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) throw Error(ErrorCode::ConfigParse, "missing required key '" + key + "'");
  return it->second;
}

std::string Config::str(const std::string& key, const std::string& fallback) const {
  const auto it = values_.find(key);
  return it == values_.end() ? fallback : it->second;
}

double Config::real(const std::string& key) const { return parse_real(str(key), key); }
double Config::real(const std::string& key, double fallback) const { return has(key) ? real(key) : fallback; }
long Config::integer(const std::string& key) const { return parse_integer(str(key), key); }
long Config::integer(const std::string& key, long fallback) const { return has(key) ? integer(key) : fallback; }

bool Config::flag(const std::string& key) const {
  const std::string v = str(key, "false");
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no" || v.empty()) return false;
  throw Error(ErrorCode::ConfigParse, key + ": expected true or false, got '" + v + "'");
}

std::vector<double> Config::reals(const std::string& key) const {
  std::vector<double> out;
  std::stringstream ss(str(key));
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_real(item, key));
  return out;
}

std::string Config::serialize() const {
  std::string out;
  for (const auto& [k, v] : values_) out += k + " = " + v + "\n";
  return out;
}

std::string Config::canonical() const {
  std::string out;
  for (const auto& [k, v] : values_)
    if (!kNonSemantic.count(k)) out += k + " = " + v + "\n";
  return out;
}

std::uint64_t Config::hash() const {
  // FNV-1a, 64 bit.
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : canonical()) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string Config::hash_hex() const {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash()));
  return buf;
}

}  // namespace flatline::cli
