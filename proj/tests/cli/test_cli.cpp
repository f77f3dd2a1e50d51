#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "drinfeld/ore.hpp"
#include "drinfeld/places.hpp"
#include "drinfeld/text.hpp"
#include "json.hpp"

using namespace drinfeld;
using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + (env.empty() ? "" : " ") + DRINFELD_CLI + std::string(" ") + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf;
  while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  for (std::string l; std::getline(is, l);) out.push_back(l);
  return out;
}

// lines that are not "# ..." header comments
std::vector<std::string> body(const std::string& s) {
  std::vector<std::string> out;
  for (auto& l : lines(s))
    if (l.rfind("# ", 0) != 0) out.push_back(l);
  return out;
}

json header(const std::string& s) {
  for (const auto& l : lines(s))
    if (l.rfind("# config: ", 0) == 0) return json::parse(l.substr(10));
  return nullptr;
}

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() / ("drinfeld_cli_" + std::to_string(std::random_device{}()));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string operator/(const char* s) const { return (path_ / s).string(); }

 private:
  fs::path path_;
};

}  // namespace

TEST(Cli, CvalueCarlitzAtT) {
  auto r = run("cvalue --model carlitz --q 3 --place t --base 1");
  ASSERT_EQ(r.code, 0);
  auto j = json::parse(r.out);
  EXPECT_EQ(j["c"], 0);
  EXPECT_EQ(j["torsion"], false);
  EXPECT_EQ(j["config"]["field"]["q"], 3);
}

TEST(Cli, UnitOfSmallModel) {
  auto r = run("unit --model \"t + (t^3)*tau\" --q 3");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(body(r.out), std::vector<std::string>{"1 + T"});
  EXPECT_EQ(header(r.out)["args"]["model"], "t + (t^3)*tau");
}

TEST(Cli, CheckEulerCarlitz) {
  auto r = run("check euler --model carlitz --q 2 --max-degree 3");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(body(r.out).back(), "pass");
  EXPECT_EQ(body(r.out).size(), 6u);  // 5 places of degree <= 3, then the verdict
  auto j = json::parse(run("check euler --model carlitz --q 3 --max-degree 2 --format json").out);
  EXPECT_EQ(j["result"], "pass");
  EXPECT_EQ(j["places"].size(), 3u + 3u);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("cvalue --q 6 --place t").code, 2);
  EXPECT_EQ(run("cvalue --q 3 --place \"t^2+2\"").code, 2);  // reducible: (t+1)(t+2)
  EXPECT_EQ(run("cvalue --q 3 --place t --model \"t + (t*tau\"").code, 2);
  EXPECT_EQ(run("stats --q 3 --samples 5 --exhaustive").code, 2);
  EXPECT_EQ(run("check no-such-suite").code, 2);
  EXPECT_EQ(run("--help").code, 0);
  // a genuine mathematical failure is reported with 1
  EXPECT_EQ(run("check twist-shift").code, 1);
  EXPECT_EQ(run("check residue").code, 0);
}

TEST(Cli, ParseErrorsCarryPosition) {
  const std::string cmd = std::string(DRINFELD_CLI) + " cvalue --q 3 --place \"t^2 +* 1\" 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  ASSERT_NE(pipe, nullptr);
  std::array<char, 512> buf{};
  std::string err;
  while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) err.append(buf.data(), n);
  pclose(pipe);
  EXPECT_NE(err.find("position"), std::string::npos) << err;
}

TEST(Cli, PrintedPolynomialsRoundTrip) {
  const Field& f = Field::get(4);
  auto r = run("places --q 4 --modulus \"z^2+z+1\" --max-degree 3");
  ASSERT_EQ(r.code, 0);
  auto got = body(r.out);
  ASSERT_EQ(got.size(), count_places(4, 1) + count_places(4, 2) + count_places(4, 3));
  std::vector<std::string> expected;
  for (const auto& p : places_up_to(f, 3)) expected.push_back(to_string(p.poly()));
  EXPECT_EQ(got, expected);
  for (const auto& s : got) EXPECT_EQ(to_string(parse_poly(f, s)), s);

  auto m = json::parse(run("cvalue --q 3 --place \"t^2+1\" --model \"t + (2*t^2 + 1)*tau + tau^2\"").out);
  const std::string printed = m["config"]["args"]["model"];
  EXPECT_EQ(to_string(parse_model(Field::get(3), printed)), printed);
}

TEST(Cli, SearchCsvAndResume) {
  TempDir dir;
  const std::string ck = dir / "ck.json", csv = dir / "hits.csv";
  auto a = run("search --q 3 --max-degree 6 --checkpoint " + ck + " --out " + csv);
  ASSERT_EQ(a.code, 0);
  std::ifstream in(csv);
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(body(ss.str()), (std::vector<std::string>{"degree,place,wieferich,verified_twice",
                                                       "6,t^6 + t^4 + t^3 + t^2 + 2*t + 2,1,true"}));
  EXPECT_EQ(header(ss.str())["args"]["model"], "t + tau");

  auto b = run("search --resume --checkpoint " + ck + " --max-degree 9");
  ASSERT_EQ(b.code, 0);
  auto full = run("search --q 3 --max-degree 9");
  EXPECT_EQ(body(b.out), body(full.out));
  EXPECT_EQ(body(full.out).size(), 3u);

  // the stored model is checked on reuse
  EXPECT_EQ(run("search --q 5 --max-degree 2 --checkpoint " + ck).code, 2);
}

TEST(Cli, StatsFormats) {
  auto csv = run("stats --q 2 --rank 1 --degrees 1..3 --exact-rank --format csv");
  ASSERT_EQ(csv.code, 0);
  EXPECT_EQ(body(csv.out), (std::vector<std::string>{"q,rank,degree,column,value,n_samples,mode,seed",
                                                       "2,1,1,all,1.14,7,exhaustive,20240501",
                                                       "2,1,1,non_torsion,1.00,7,exhaustive,20240501",
                                                       "2,1,2,all,1.71,7,exhaustive,20240501",
                                                       "2,1,2,non_torsion,0.00,7,exhaustive,20240501",
                                                       "2,1,3,all,3.43,7,exhaustive,20240501",
                                                       "2,1,3,non_torsion,0.00,7,exhaustive,20240501"}));
  auto tab = run("stats --q 3 --rank 1 --degrees 5 --exact-rank");
  EXPECT_EQ(body(tab.out)[1], "     5     9.11     0.00");  // reference cell

  auto mc = json::parse(run("stats --q 3 --rank 3 --degrees 1 --samples 200 --seed 11 --format json").out);
  EXPECT_EQ(mc["cells"][0]["mode"], "monte_carlo");
  EXPECT_EQ(mc["cells"][0]["n_samples"], 200);
  EXPECT_EQ(mc["config"]["seed"], 11);
  EXPECT_EQ(json::parse(run("stats --q 3 --rank 3 --degrees 1 --samples 200 --seed 11 --format json --workers 3").out)["cells"],
            mc["cells"]);
}

TEST(Cli, BudgetsFromEnvironment) {
  auto j = json::parse(run("cvalue --q 3 --place t", "DRINFELD_C_MAX=5").out);
  EXPECT_EQ(j["config"]["budgets"]["c_max"], 5);
  // the flag wins over the environment
  j = json::parse(run("cvalue --q 3 --place t --cmax 7", "DRINFELD_C_MAX=5").out);
  EXPECT_EQ(j["config"]["budgets"]["c_max"], 7);
  // c = 1 exactly at this place (Wieferich in base 1); a cap of 0 saturates
  j = json::parse(run("cvalue --q 3 --place \"t^6 + t^4 + t^3 + t^2 + 2*t + 2\" --cross-check").out);
  EXPECT_EQ(j["c"], 1);
  EXPECT_EQ(j["cross_check"], "pass");
  j = json::parse(run("cvalue --q 3 --place \"t^6 + t^4 + t^3 + t^2 + 2*t + 2\"", "DRINFELD_C_MAX=0").out);
  EXPECT_EQ(j["c"], 0);
  EXPECT_EQ(j["saturated"], true);
}

TEST(Cli, LvalueJson) {
  auto j = json::parse(run("lvalue --model carlitz --q 3 --place \"t^2+1\" --prec 5").out);
  for (const char* k : {"valuation", "unit_digits", "precision", "certified", "config"}) EXPECT_TRUE(j.contains(k)) << k;
  EXPECT_EQ(j["precision"], 5);
  EXPECT_EQ(j["valuation"], 0);
  const std::string u = j["unit_digits"];
  EXPECT_EQ(to_string(parse_poly(Field::get(3), u)), u);
  auto s = json::parse(run("lvalue --model \"t + t*tau\" --q 3 --place \"t+1\" --prec 5 --special").out);
  EXPECT_EQ(s["valuation"], s["expected_valuation"]);
}
