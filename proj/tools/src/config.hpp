#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace flatline::cli {

// Flat key = value experiment configuration. Subcommand flags and `run`
// config files both end up here, so the same experiment hashes the same way
// regardless of how it was launched.
class Config {
 public:
  static Config parse(const std::string& text);
  static Config load(const std::string& path);

  void set(const std::string& key, const std::string& value);
  bool has(const std::string& key) const { return values_.count(key) > 0; }
  const std::map<std::string, std::string>& values() const { return values_; }

  std::string str(const std::string& key) const;
  std::string str(const std::string& key, const std::string& fallback) const;
  double real(const std::string& key) const;
  double real(const std::string& key, double fallback) const;
  long integer(const std::string& key) const;
  long integer(const std::string& key, long fallback) const;
  bool flag(const std::string& key) const;
  std::vector<double> reals(const std::string& key) const;

  // Every key, sorted; parse(serialize()) == *this.
  std::string serialize() const;
  // Keys that affect results only (no output paths or thread counts).
  std::string canonical() const;
  std::uint64_t hash() const;
  std::string hash_hex() const;

  bool operator==(const Config&) const = default;

 private:
  std::map<std::string, std::string> values_;
};

double parse_real(const std::string& text, const std::string& what);
long parse_integer(const std::string& text, const std::string& what);

}  // namespace flatline::cli
