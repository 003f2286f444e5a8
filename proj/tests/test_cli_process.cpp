// Runs the installed-layout binary end to end: exit codes, files, corpus.
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>
#include <sys/wait.h>

#include "doctest.h"

namespace fs = std::filesystem;

namespace {

std::string bin() { return std::getenv("FLATLINE_BIN") ? std::getenv("FLATLINE_BIN") : "flatline"; }
std::string data() { return std::getenv("FLATLINE_DATA") ? std::getenv("FLATLINE_DATA") : "data"; }

fs::path scratch() {
  const auto d = fs::temp_directory_path() / "flatline_process_test";
  fs::create_directories(d);
  return d;
}

int run(const std::string& args) {
  const std::string cmd = bin() + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

int count_lines(const std::string& s, bool skip_comments) {
  std::istringstream in(s);
  std::string line;
  int n = 0;
  while (std::getline(in, line))
    if (!(skip_comments && !line.empty() && line[0] == '#')) ++n;
  return n;
}

}  // namespace

TEST_SUITE("cli-process") {

TEST_CASE("exit codes") {
  CHECK(run("--help") == 0);
  CHECK(run("") == 2);
  CHECK(run("surface bogus") == 2);
  CHECK(run("surface info --surface @octagon") == 0);
  CHECK(run("surface info --surface /no/such/file.surf") == 4);
  CHECK(run("surface info --surface " + data() + "/malformed.surf") == 10);
  CHECK(run("flow trace --surface @torus --theta 0.3 --T 1 --start 0,0") == 11);
  CHECK(run("renorm loop --perm \"4 3 2 1\" --word T") == 12);
  CHECK(run("hodge lambda --surface @torus") == 13);
  CHECK(run("spectral deviation --surface @torus --theta 0.6 --f 1 --tmax_exp 10") == 14);
  CHECK(run("flow trace --surface @torus") == 3);
  CHECK(run("spectral ostrowski --T 5 --scales \"1,2,x\"") == 3);
  CHECK(run("spectral ostrowski --T 5 --scales \"3,2,1\"") == 14);
}

TEST_CASE("files carry the header and match across runs") {
  const auto d = scratch();
  const std::string args = "flow birkhoff --surface @octagon --theta 0.7 --f \"cos(2pi x)\" --T 64 --seed 5 --out ";
  REQUIRE(run(args + (d / "a.csv").string()) == 0);
  REQUIRE(run(args + (d / "b.csv").string()) == 0);
  const auto a = slurp(d / "a.csv"), b = slurp(d / "b.csv");
  CHECK(a.rfind("# flatline ", 0) == 0);
  CHECK(a.find("# config_hash = ") != std::string::npos);
  CHECK(a.find("# seed = 5") != std::string::npos);
  CHECK(a == b);
}

TEST_CASE("run executes a config file and writes a verdict") {
  const auto d = scratch();
  std::ofstream(d / "exp.cfg") << "command = spectral veech\nperm = 4 3 2 1\nlambda = 2\nsteps = 40\nseed = 1\n";
  REQUIRE(run("run " + (d / "exp.cfg").string() + " --out " + (d / "v.csv").string() + " --verdict " +
              (d / "v.json").string()) == 0);
  const auto v = slurp(d / "v.json");
  CHECK(v.find("\"lattice_attracted\": true") != std::string::npos);
  CHECK(slurp(d / "v.csv").find("t,dist") != std::string::npos);
  std::ofstream(d / "bad.cfg") << "command = nope\n";
  CHECK(run("run " + (d / "bad.cfg").string()) == 3);
}

TEST_CASE("corpus isolates failures and handles an empty list") {
  const auto d = scratch();
  REQUIRE(run("corpus " + data() + "/corpus_mixed.txt --threads 2 --out " + (d / "c.csv").string()) == 0);
  const auto c = slurp(d / "c.csv");
  CHECK(count_lines(c, true) == 1 + 23);
  CHECK(c.find(",failed,") != std::string::npos);
  std::istringstream in(c);
  std::string line;
  int ok = 0;
  while (std::getline(in, line)) {
    if (line.find(",ok,") == std::string::npos) continue;
    ++ok;
    std::vector<std::string> f;
    std::string cell;
    bool quoted = false;
    for (char ch : line) {
      if (ch == '"') quoted = !quoted;
      else if (ch == ',' && !quoted) f.push_back(std::exchange(cell, {}));
      else cell += ch;
    }
    f.push_back(cell);
    CHECK(f[2] == f[3]);
    CHECK(f[6] == "true");
  }
  CHECK(ok == 22);
  REQUIRE(run("corpus " + data() + "/corpus_empty.txt --out " + (d / "e.csv").string()) == 0);
  CHECK(count_lines(slurp(d / "e.csv"), true) == 1);
  fs::remove_all(d);
}

}  // TEST_SUITE
