#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli.hpp"

namespace {

int run(std::vector<std::string> args) {
  args.insert(args.begin(), "hdecay");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  return hdecay::cli::run(static_cast<int>(argv.size()), argv.data());
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::filesystem::path scratch() {
  auto dir = std::filesystem::temp_directory_path() / "hdecay_cli_test";
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("validate passes and detects an injected fault") {
  const auto dir = scratch();
  CHECK(run({"validate", "--out", (dir / "v").string()}) == 0);
  const auto js = nlohmann::json::parse(slurp(dir / "v.json"));
  CHECK(js["passed"] == true);
  CHECK(js.contains("tool_version"));
  CHECK(js["criteria"].size() == 6);
  CHECK(run({"validate", "--inject-fault", "image-sign", "--out", (dir / "vf").string()}) == 1);
  const auto bad = nlohmann::json::parse(slurp(dir / "vf.json"));
  CHECK(bad["passed"] == false);
}

TEST_CASE("empty config applies defaults") {
  const auto dir = scratch();
  { std::ofstream(dir / "empty.ini"); }
  CHECK(run({"--config", (dir / "empty.ini").string(), "kernel-bound", "--out", (dir / "k").string()}) == 0);
}

TEST_CASE("config sections feed subcommands") {
  const auto dir = scratch();
  {
    std::ofstream ini(dir / "opt.ini");
    ini << "[optimality]\np = [\"inf\"]\nm-list = [16, 32]\n";
  }
  CHECK(run({"--config", (dir / "opt.ini").string(), "optimality", "--out", (dir / "o").string()}) == 0);
  const auto js = nlohmann::json::parse(slurp(dir / "o.json"));
  CHECK(js["config"]["m_list"] == nlohmann::json::array({16, 32}));
  CHECK(js["rows"][0]["p"] == "inf");
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run({"decay", "--t-lo", "10", "--t-hi", "1"}) == 2);
  CHECK(run({"decay", "--p", "0.5"}) == 2);
  CHECK(run({"decay", "--datum", "unknown"}) == 2);
  CHECK(run({"optimality", "--m-list", "0"}) == 2);
  CHECK(run({"kernel-bound", "--m", "100"}) == 2);
  CHECK(run({"no-such-command"}) == 2);
  CHECK(run({}) == 2);
}

TEST_CASE("kernel bound output is deterministic") {
  const auto dir = scratch();
  CHECK(run({"kernel-bound", "--m", "100000", "--out", (dir / "k1").string()}) == 0);
  CHECK(run({"kernel-bound", "--m", "100000", "--out", (dir / "k2").string()}) == 0);
  const auto a = slurp(dir / "k1.csv");
  CHECK(a == slurp(dir / "k2.csv"));
  CHECK(a.rfind("r,s,m_times_K,", 0) == 0);
  const auto js = nlohmann::json::parse(slurp(dir / "k1.json"));
  CHECK(js["min_scaled"].get<double>() > 0.01);
}

TEST_CASE("optimality and decay subcommands") {
  const auto dir = scratch();
  CHECK(run({"optimality", "--p", "2,inf", "--out", (dir / "o2").string()}) == 0);
  const auto csv = slurp(dir / "o2.csv");
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 2 * 5);
  CHECK(run({"decay", "--p", "6", "--datum", "indicator", "--t-lo", "1", "--t-hi", "1e4", "--per-decade", "4", "--out",
             (dir / "d").string()}) == 0);
  const auto js = nlohmann::json::parse(slurp(dir / "d.json"));
  CHECK(js["rows"][0]["slope_ok"] == true);
  CHECK(js["rows"][0]["sup_long"].get<double>() > 0.0);
}
