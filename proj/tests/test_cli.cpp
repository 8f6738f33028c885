#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "remedysim/cli.hpp"
#include "remedysim/report_io.hpp"
#include "support.hpp"

using namespace testing;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& text) {
  auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << text;
  return path.string();
}

}  // namespace

TEST_CASE("validate") {
  CHECK(cli({"validate", fixture("fig2.scn")}).code == kOk);
  auto bad = temp_file("remedysim_bad.scn", "[goods]\ng\n[agents]\nc in g=1 h=2\n");
  auto r = cli({"validate", bad});
  CHECK(r.code == kSemantic);
  CHECK(r.out.find("unknown good") != std::string::npos);
  auto garbled = temp_file("remedysim_garbled.scn", "[goods]\ng\n[nope]\n");
  r = cli({"validate", garbled});
  CHECK(r.code == kParse);
  CHECK(r.err.find("line 3") != std::string::npos);
  CHECK(cli({"validate", "/nonexistent/file.scn"}).code == kRuntime);
}

TEST_CASE("usage errors") {
  CHECK(cli({}).code == kUsage);
  CHECK(cli({"frobnicate"}).code == kUsage);
  CHECK(cli({"clear", fixture("fig2.scn")}).code == kUsage);
  CHECK(cli({"remedies", fixture("fig2.scn"), "--breach", "x,c3,0"}).code == kUsage);
  CHECK(cli({"--help"}).code == kOk);
}

TEST_CASE("clear") {
  auto r = cli({"clear", fixture("fig2.scn"), "--good", "g5"});
  CHECK(r.code == kOk);
  CHECK(r.out.find("price 12") != std::string::npos);
  CHECK(r.out.find("trade s5 -> c3") != std::string::npos);
  CHECK(cli({"clear", fixture("fig2.scn"), "--good", "zz"}).code == kSemantic);
}

TEST_CASE("remedies on Fig. 2") {
  auto r = cli({"remedies", fixture("fig2.scn"), "--breach", "0,c3,0,no", "--jsonl"});
  REQUIRE(r.code == kOk);
  auto record = dispute_from_json(json::parse(r.out));
  CHECK(verify_record(record));
  auto amount = [&](const RemedyRegime& regime) {
    for (const auto& a : record.awards)
      if (a.regime == regime) return a.amount;
    return Money{-1};
  };
  CHECK(amount(Expectation{}) == 1);
  CHECK(amount(OpportunityCost{}) == 0);
  CHECK(amount(Reliance{false}) == 0);

  CHECK(cli({"remedies", fixture("fig2.scn"), "--breach", "5,c3,0"}).code == kSemantic);
  CHECK(cli({"remedies", fixture("fig2.scn"), "--breach", "0,s6,0"}).code == kSemantic);
}

TEST_CASE("simulate") {
  auto r = cli({"simulate", fixture("fig2.scn"), "--jsonl"});
  CHECK(r.code == kOk);
  CHECK(r.out.find("\"breaches\":0") != std::string::npos);
  auto path = (std::filesystem::temp_directory_path() / "remedysim_export.jsonl").string();
  auto again = cli({"simulate", fixture("chain.scn"), "--seed", "3", "--export", path});
  CHECK(again.code == kOk);
  std::ifstream f(path);
  std::stringstream text;
  text << f.rdbuf();
  auto s = load_scenario(fixture("chain.scn"));
  s.seed = 3;
  CHECK(text.str() == export_jsonl(run(s)));
}

TEST_CASE("sweep") {
  auto r = cli({"sweep", fixture("perturbed.scn"), "--axis", "regime"});
  CHECK(r.code == kOk);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 5);
  CHECK(r.out == cli({"sweep", fixture("perturbed.scn"), "--axis", "regime", "--serial"}).out);
  CHECK(cli({"sweep", fixture("fig2.scn"), "--axis", "weather"}).code == kSemantic);
}

TEST_CASE("suggest") {
  auto r = cli({"suggest", fixture("fig2.scn"), "--offer", "s5:500"});
  CHECK(r.code == kOk);
  CHECK(r.out.find("no mutually beneficial breach") != std::string::npos);
  CHECK(cli({"suggest", fixture("fig2.scn")}).code == kUsage);
  CHECK(cli({"suggest", fixture("fig2.scn"), "--shock", "nope:3"}).code == kSemantic);
}
