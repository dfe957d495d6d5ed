#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli/run.hpp"

using namespace coprime::cli;

namespace {

struct Result {
  int status;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "coprime");
  std::ostringstream out;
  std::ostringstream err;
  const int status = run(args, out, err);
  return {status, out.str(), err.str()};
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::filesystem::path scratch_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("coprime_cli_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("weights table") {
  const Result r = invoke({"weights", "-M", "4", "-N", "3", "--range", "full"});
  REQUIRE(r.status == kExitOk);
  const auto lines = lines_of(r.out);
  REQUIRE(lines.size() == 49);
  CHECK(lines[0].rfind("# command=weights M=4 N=3 range=full", 0) == 0);
  CHECK(lines[1] == "lag,count");
  CHECK(lines[2] == "-23,0");
  CHECK(lines[25] == "0,10");
  CHECK(lines[48] == "23,0");
}

TEST_CASE("json output") {
  const Result r = invoke({"complexity", "--format", "json"});
  REQUIRE(r.status == kExitOk);
  const auto doc = nlohmann::json::parse(r.out);
  const auto& rows = doc["tables"]["complexity"];
  REQUIRE(rows.size() == 4);
  CHECK(rows[1]["scheme"] == "extended-full");
  CHECK(rows[1]["multiplications"] == 55);
  CHECK(rows[1]["additions"] == 36);
}

TEST_CASE("configuration errors exit with status 2") {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"weights", "-M", "4", "-N", "6"},
           {"weights", "-M", "1"},
           {"bias", "--grid", "1000"},
           {"bias", "--grid", "1023"},
           {"frobnicate"},
           {},
           {"weights", "--range", "middle"},
           {"weights", "--bogus", "1"},
           {"estimate", "--freq", "1.5"},
           {"estimate", "--snapshots", "0"},
       }) {
    const Result r = invoke(args);
    CHECK(r.status == kExitConfig);
    const auto record = nlohmann::json::parse(lines_of(r.err).at(0));
    CHECK(record["error"] == "config");
    CHECK(record["exit_code"] == 2);
    CHECK(r.out.empty());
  }
}

TEST_CASE("config file is merged under command-line flags") {
  const auto dir = scratch_dir("config");
  const auto file = dir / "run.cfg";
  {
    std::ofstream cfg(file);
    cfg << "# comment\ncommand = weights\nM = 5\nN = 3\nrange = continuous\n";
  }
  const RunConfig c = parse_command_line({"coprime", "--config", file.string(), "-N", "2"});
  CHECK(c.command == Command::Weights);
  CHECK(c.M == 5);
  CHECK(c.N == 2);
  CHECK(c.range == coprime::RangeKind::Continuous);

  const RunConfig d = parse_command_line({"coprime", "bias", "--config", file.string()});
  CHECK(d.command == Command::Bias);
  CHECK(d.M == 5);
  CHECK(d.resolved_grid_size() == 4096);
  CHECK(d.resolved_sb_mode() == SbMode::Unit);

  CHECK(invoke({"--config", (dir / "missing.cfg").string()}).status == kExitConfig);
  std::filesystem::remove_all(dir);
}

TEST_CASE("output directory from the environment") {
  const auto dir = scratch_dir("env");
  ::setenv(kOutputDirEnv, dir.string().c_str(), 1);
  const Result r = invoke({"diffset", "--kind", "C"});
  ::unsetenv(kOutputDirEnv);
  REQUIRE(r.status == kExitOk);
  CHECK(r.out.empty());
  std::ifstream in(dir / "diffset.csv");
  REQUIRE(in);
  std::stringstream text;
  text << in.rdbuf();
  const auto lines = lines_of(text.str());
  CHECK(lines[1] == "set,lag,multiplicity");
  CHECK(lines.back() == "C,37,37");
  std::filesystem::remove_all(dir);
}

TEST_CASE("unwritable output exits with status 4") {
  const Result r = invoke({"weights", "-o", "/nonexistent-dir/x/weights.csv"});
  CHECK(r.status == kExitIo);
  CHECK(nlohmann::json::parse(lines_of(r.err).at(0))["error"] == "io");
}

TEST_CASE("estimate is deterministic and finds the tone") {
  const std::vector<std::string> args = {"estimate", "-M", "3", "-N", "7", "--snapshots", "10",
                                         "--seed", "1", "--grid", "1024", "--peaks", "1"};
  const Result a = invoke(args);
  const Result b = invoke(args);
  REQUIRE(a.status == kExitOk);
  CHECK(a.out == b.out);
  const auto lines = lines_of(a.out);
  const std::string& peak = lines.back();
  const double omega = std::stod(peak.substr(peak.find(',') + 1));
  // Well inside the main lobe of the Full-range window, pi / (2MN) wide.
  CHECK(std::abs(omega - 0.4 * 3.141592653589793) < 3.141592653589793 / 42);
}

TEST_CASE("tables report reference relative amplitudes") {
  const Result r = invoke({"tables", "--max", "8", "--format", "json"});
  REQUIRE(r.status == kExitOk);
  const auto doc = nlohmann::json::parse(r.out);
  const auto& t2 = doc["tables"]["table2"];
  REQUIRE(t2.size() == 6);
  CHECK(std::abs(t2[0]["f"].get<double>() - 0.508) < 0.01);
  CHECK(std::abs(t2[0]["swapped_f"].get<double>() - 0.683) < 0.01);
  CHECK(doc["tables"]["table3"].size() == 6);
  for (const auto& row : doc["tables"]["table1"]) {
    CHECK(row["extended_closed_form"] == row["extended_enumerated"]);
    CHECK(row["prototype_closed_form"] == row["prototype_enumerated"]);
  }
}

TEST_CASE("remaining commands run") {
  const Result bias = invoke({"bias", "--grid", "1024", "--range", "prototype"});
  REQUIRE(bias.status == kExitOk);
  CHECK(lines_of(bias.out)[1] == "omega,a,b,c,d,total");
  CHECK(lines_of(bias.out).size() == 1026);
  const Result unbiased = invoke({"bias", "--grid", "1024", "--window", "unbiased"});
  REQUIRE(unbiased.status == kExitOk);
  CHECK(lines_of(unbiased.out)[1] == "omega,value");
  const Result variance = invoke({"variance", "--max", "3"});
  REQUIRE(variance.status == kExitOk);
  const auto v = lines_of(variance.out);
  CHECK(v.size() == 2 + 9);
  CHECK(v[1] == "M,N,coprime,f_c,f_p");
  const Result three = invoke({"estimate", "--preset", "spread", "--grid", "1024", "--peaks", "3"});
  CHECK(three.status == kExitOk);
}
