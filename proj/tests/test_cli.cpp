#include <filesystem>
#include <fstream>
#include <sstream>

#include "commands.hpp"
#include "config.hpp"
#include "doctest.h"
#include "exit_codes.hpp"
#include "flatline/error.hpp"
#include "output.hpp"

using namespace flatline;
using namespace flatline::cli;

TEST_SUITE("cli") {

TEST_CASE("config parsing") {
  const auto c = Config::parse("# comment\ncommand = flow trace\ntheta = 0.5 \n\nT=10\n");
  CHECK(c.str("command") == "flow trace");
  CHECK(c.real("theta") == 0.5);
  CHECK(c.integer("T") == 10);
  CHECK(c.real("missing", 2.0) == 2.0);
  CHECK_THROWS_AS(c.str("missing"), Error);
  CHECK_THROWS_AS(Config::parse("a = 1\na = 2\n"), Error);
  CHECK_THROWS_AS(Config::parse("just words\n"), Error);
  CHECK_THROWS_AS(c.integer("theta"), Error);
}

TEST_CASE("config round trip and hash") {
  auto c = Config::parse("command = hodge norm\nsurface = @torus\nlevel = 2\n");
  CHECK(Config::parse(c.serialize()) == c);
  const auto h = c.hash_hex();
  c.set("out", "x.csv");
  c.set("threads", "4");
  c.set("json", "true");
  CHECK(c.hash_hex() == h);
  c.set("level", "3");
  CHECK(c.hash_hex() != h);
  CHECK(h.size() == 16);
}

TEST_CASE("exit codes are distinct per family") {
  CHECK(exit_code(ErrorCode::ConfigParse) == kConfigParse);
  CHECK(exit_code(ErrorCode::Io) == kIo);
  CHECK(exit_code(ErrorCode::UnmatchedEdge) == kSurface);
  CHECK(exit_code(ErrorCode::SingularOrbit) == kFlow);
  CHECK(exit_code(ErrorCode::KeaneViolation) == kRenorm);
  CHECK(exit_code(ErrorCode::GenusOne) == kHodge);
  CHECK(exit_code(ErrorCode::ZeroMeanRequired) == kSpectral);
}

TEST_CASE("CSV output has a self-describing header") {
  Meta meta{"flow trace", "0123456789abcdef", "7", 0.1};
  Table t{{"a", "b"}, {}};
  t.add({"1", "2"});
  const auto csv = render_csv(meta, t);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line.rfind("# flatline ", 0) == 0);
  CHECK(csv.find("# config_hash = 0123456789abcdef") != std::string::npos);
  CHECK(csv.find("# seed = 7") != std::string::npos);
  CHECK(csv.find("a,b\n1,2\n") != std::string::npos);
}

TEST_CASE("JSON output leads with meta") {
  Record r;
  r.command = "x";
  r.values = {{"v", 1}};
  const auto j = Json::parse(render_json(Meta{"x", "h", "none", 0.0}, r));
  CHECK(j.begin().key() == "meta");
  CHECK(j["meta"]["tool"] == "flatline");
  CHECK(j["values"]["v"] == 1);
}

TEST_CASE("atomic write leaves no temporary behind") {
  const auto dir = std::filesystem::temp_directory_path() / "flatline_cli_test";
  std::filesystem::create_directories(dir);
  const auto path = (dir / "out.txt").string();
  write_atomic(path, "hello\n");
  std::ifstream in(path);
  std::string s;
  std::getline(in, s);
  CHECK(s == "hello");
  for (const auto& e : std::filesystem::directory_iterator(dir)) CHECK(e.path().filename() == "out.txt");
  std::filesystem::remove_all(dir);
  CHECK_THROWS_AS(write_atomic("/nonexistent-dir/x/y.csv", "z"), Error);
}

TEST_CASE("surface info through a command") {
  auto c = Config::parse("command = surface info\nsurface = @octagon\n");
  const auto r = surface_info(c);
  CHECK(r.values["genus"] == 2);
  CHECK(r.values["stratum"] == "H(2)");
}

TEST_CASE("identical configs give identical deterministic records") {
  const auto c = Config::parse("command = flow birkhoff\nsurface = @octagon\ntheta = 0.7\nf = cos(2pi x)\nT = 64\nseed = 3\n");
  const auto a = flow_birkhoff(c), b = flow_birkhoff(c);
  CHECK(a.table->rows == b.table->rows);
}

TEST_CASE("short Lyapunov runs are flagged") {
  const auto c = Config::parse("command = renorm lyapunov\nperm = 4 3 2 1\nsteps = 1000\nseed = 1\nthreads = 1\n");
  const auto r = renorm_lyapunov(c);
  REQUIRE_FALSE(r.warnings.empty());
  CHECK(r.warnings[0].find("NonConvergence") != std::string::npos);
}

}  // TEST_SUITE
