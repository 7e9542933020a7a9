#include <cstdio>
#include <fstream>
#include <sstream>

#include "demon/cli.hpp"
#include "doctest.h"
#include "json.hpp"

using namespace demon::cli;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run_args(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> with_workers(std::vector<std::string> args, unsigned workers) {
  args.insert(args.begin(), {"--workers", std::to_string(workers)});
  return args;
}

}  // namespace

TEST_CASE("formatting helpers") {
  CHECK(format_float(0.625) == "6.25000000000e-01");
  CHECK(format_float(1.0 / 3.0) == "3.33333333333e-01");
  CHECK(fnv1a64("") == 0xcbf29ce484222325ull);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cull);

  Table t;
  t.columns = {"a", "b", "c"};
  t.add({std::string("x,y"), 0.5, true});
  t.preamble.push_back("note");
  std::ostringstream csv, json;
  write_csv(t, csv);
  write_json_lines(t, json);
  CHECK(csv.str() == "# note\na,b,c\n\"x,y\",5.00000000000e-01,true\n");
  const auto obj = nlohmann::json::parse(json.str());
  CHECK(obj["a"] == "x,y");
  CHECK(obj["b"] == 0.5);
  CHECK(obj["c"] == true);
  CHECK_THROWS(t.add({std::string("short")}));
}

TEST_CASE("recursion command emits exact fractions") {
  const auto r = run_args({"embed", "recursion", "--M", "2", "--n", "2"});
  CHECK(r.code == kOk);
  CHECK(r.out.rfind("n,M,value,value_float\n", 0) == 0);
  CHECK(r.out.find("2,2,5/8,") != std::string::npos);
  const auto manifest = nlohmann::json::parse(r.err);
  CHECK(manifest["version"] == version());
  CHECK(manifest["outputs"][0]["bytes"] == r.out.size());
}

TEST_CASE("usage errors exit 2") {
  CHECK(run_args({"embed", "recursion", "--bogus"}).code == kUsageError);
  CHECK(run_args({"embed"}).code == kUsageError);
  CHECK(run_args({"nonsense"}).code == kUsageError);
  CHECK(run_args({"--format", "xml", "embed", "roots"}).code == kUsageError);
  CHECK(run_args({"embed", "decide", "--v", "01a", "--y", "0101"}).code == kUsageError);
  CHECK(run_args({"embed", "exact", "--v", "0101010101010", "--M", "2"}).code == kUsageError);
  CHECK(run_args({"--help"}).code == kOk);
}

TEST_CASE("worker count does not change output") {
  const std::vector<std::vector<std::string>> commands{
      {"--seed", "7", "--replicas", "300", "compat", "mc", "--n", "10", "20", "40"},
      {"--seed", "7", "--replicas", "300", "schedule", "curve", "--M", "3", "--depths", "0", "5", "20"},
      {"--seed", "7", "--replicas", "200", "schedule", "coupling", "--M", "2", "--k", "2", "--depth", "20"},
      {"--seed", "7", "--replicas", "200", "embed", "mc", "--M", "3", "--n", "12"},
      {"--seed", "7", "--replicas", "100", "lattice", "abscan", "--box", "20"},
      {"--seed", "7", "--replicas", "20", "lattice", "embed2d", "--depth", "10"},
      {"--seed", "7", "--replicas", "200", "env", "column", "--mu", "0.3:0.5,0.8:0.5", "--n", "10"},
      {"embed", "scan", "--n", "4", "--M", "2"},
  };
  for (const auto& cmd : commands) {
    const auto one = run_args(with_workers(cmd, 1));
    const auto eight = run_args(with_workers(cmd, 8));
    REQUIRE(one.code == kOk);
    CHECK(one.out == eight.out);
  }
}

TEST_CASE("output files and manifest") {
  const std::string path = "cli_test_output.csv";
  const auto r = run_args({"--out", path, "--format", "json", "compat", "decide", "--x", "101", "--y", "011"});
  REQUIRE(r.code == kOk);
  std::ifstream data(path), manifest(path + ".manifest.json");
  std::stringstream body;
  body << data.rdbuf();
  const auto row = nlohmann::json::parse(body.str());
  CHECK(row["compatible"] == false);
  const auto m = nlohmann::json::parse(manifest);
  CHECK(m["outputs"][0]["path"] == path);
  CHECK(m["config"]["format"] == "json");
  std::remove(path.c_str());
  std::remove((path + ".manifest.json").c_str());
}

TEST_CASE("scan table layout") {
  const auto r = run_args({"embed", "scan", "--n", "2", "--M", "2"});
  REQUIRE(r.code == kOk);
  CHECK(r.out == "w,probability_num,probability_den\n00,9,16\n10,5,8\n01,5,8\n11,9,16\n");
}
