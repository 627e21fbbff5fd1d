#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace {

struct Run {
  int status;
  std::string out;
};

Run run(const std::string& args, bool merge_stderr = true) {
  const std::string cmd = std::string(DIAMOND_CLI_PATH) + " " + args + (merge_stderr ? " 2>&1" : " 2>/dev/null");
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
  const int st = pclose(p);
  return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

std::string first_line(const std::string& s, int skip = 0) {
  std::istringstream in(s);
  std::string line;
  for (int i = 0; i <= skip; ++i) std::getline(in, line);
  return line;
}

}  // namespace

TEST_CASE("map: centre of the diamond is the wedge corner") {
  const auto r = run("map --alpha 1 --lambda 2 --from diamond --to rindler --point 0,0", false);
  REQUIRE(r.status == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["region"] == "D");
  CHECK(j["wedge"] == "R");
  CHECK(j["output"]["c1"].get<double>() == doctest::Approx(0.0));
  CHECK(j["output"]["c2"].get<double>() == doctest::Approx(1.0));
  CHECK(j["conformal_factor"].get<double>() == doctest::Approx(4.0));
}

TEST_CASE("map: eta-xi round trip through the CLI") {
  const auto a = run("map --alpha 2 --from diamond --to eta-xi --point 0.3,-0.4", false);
  REQUIRE(a.status == 0);
  const auto j = nlohmann::json::parse(a.out);
  const double eta = j["output"]["c1"], xi = j["output"]["c2"];
  char pt[128];
  std::snprintf(pt, sizeof pt, "%.17g,%.17g", eta, xi);
  const auto b = run(std::string("map --alpha 2 --from eta-xi --to diamond --region D --point ") + pt, false);
  REQUIRE(b.status == 0);
  const auto k = nlohmann::json::parse(b.out);
  CHECK(k["output"]["c1"].get<double>() == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(k["output"]["c2"].get<double>() == doctest::Approx(-0.4).epsilon(1e-12));
}

TEST_CASE("numeric failures exit 1 with a JSON error record") {
  const auto r = run("map --alpha 1 --from diamond --to rindler --point 0.5,0.5", false);
  CHECK(r.status == 1);
  const auto e = run("map --alpha 1 --from diamond --to rindler --point 0.5,0.5");
  const auto j = nlohmann::json::parse(e.out);
  CHECK(j["error"]["kind"] == "SingularPoint");
  CHECK(run("map --alpha 1 --from diamond --to eta-xi --point 0.25,-0.75").status == 1);
  CHECK(run("entanglement --r-grid 0:200:100").status == 1);
}

TEST_CASE("usage errors exit 2") {
  CHECK(run("").status == 2);
  CHECK(run("frobnicate").status == 2);
  CHECK(run("map --point").status == 2);
  CHECK(run("map --point 1,2 --from nowhere").status == 2);
  CHECK(run("bogoliubov --region ext --method closed").status == 2);
  CHECK(run("selftest --inject bogus").status == 2);
  CHECK(run("state --r 1 --omega-hat 1").status == 2);
}

TEST_CASE("bogoliubov: closed form and quadrature agree") {
  const auto r = run("bogoliubov --alpha 1 --omega-hat 1.3 --k-hat 2.1 --kind beta --method both", false);
  REQUIRE(r.status == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["deviation"].get<double>() < 1e-6);
}

TEST_CASE("modes: CSV output") {
  const auto r = run("modes --family g-int --freq-hat 2 --grid -0.5:0.5:0.25", false);
  REQUIRE(r.status == 0);
  CHECK(first_line(r.out) == "null_coord,re,im");
  CHECK(run("modes --family g-int --freq-hat 2 --grid 0.5:1.5:0.25 --strict").status == 1);
}

TEST_CASE("state: blocks dump and dense dump") {
  const auto b = run("state --r 0.5 --nmax 3 --dump blocks", false);
  CHECK(b.status == 0);
  CHECK_FALSE(b.out.empty());
  const auto d = run("state --r 0.5 --nmax 3 --dump dense --partial-transpose", false);
  CHECK(d.status == 0);
  CHECK_FALSE(d.out.empty());
  CHECK(run("state --r 1 --nmax 2 --tol 1e-9").status == 1);
}

TEST_CASE("entanglement: CSV header, JSON, and determinism") {
  const auto a = run("entanglement --r-grid 0:2:0.5", false);
  REQUIRE(a.status == 0);
  CHECK(first_line(a.out) == "r,neg_log,negativity,s_a,s_d,s_ad,mutual_info,n_max_used,tail_bound");
  CHECK(first_line(a.out, 1).rfind("0,1,0.5,1,1,0,2,", 0) == 0);
  const auto b = run("entanglement --r-grid 0:2:0.5", false);
  CHECK(a.out == b.out);
  setenv("DIAMOND_NUM_THREADS", "3", 1);
  const auto c = run("entanglement --r-grid 0:2:0.5", false);
  unsetenv("DIAMOND_NUM_THREADS");
  CHECK(a.out == c.out);

  const auto js = run("entanglement --r-grid 0.5:1:0.5 --format json", false);
  REQUIRE(js.status == 0);
  const auto j = nlohmann::json::parse(js.out);
  REQUIRE(j.is_array());
  CHECK(j.size() == 2);
  CHECK(j[0]["r"].get<double>() == 0.5);

  const auto lt = run("entanglement --lifetime-grid 1:3:1 --omega 0.5", false);
  CHECK(lt.status == 0);
}

TEST_CASE("figures: curves start at the vacuum values") {
  const auto dir = std::filesystem::temp_directory_path() / "diamond_cli_figures";
  std::filesystem::create_directories(dir);
  const auto r = run("figures --out-dir " + dir.string(), false);
  REQUIRE(r.status == 0);
  const auto f3 = slurp(dir / "fig3.csv");
  const auto f4 = slurp(dir / "fig4.csv");
  CHECK(first_line(f3) == "r,neg_log");
  CHECK(first_line(f3, 1) == "0,1");
  CHECK(first_line(f4) == "r,mutual_info");
  CHECK(first_line(f4, 1) == "0,2");
  std::filesystem::remove_all(dir);
}

TEST_CASE("selftest: deterministic output and fault injection") {
  const auto a = run("selftest", false);
  const auto b = run("selftest", false);
  CHECK(a.out == b.out);
  CHECK(a.status == 1);  // the entropy-endpoint check does not pass
  CHECK(a.out.find("PASS [1]") != std::string::npos);
  CHECK(a.out.find("FAIL [9]") != std::string::npos);
  CHECK(a.out.find("8/9 checks passed") != std::string::npos);
  const auto f = run("selftest --inject bogoliubov", false);
  CHECK(f.status == 1);
  CHECK(f.out.find("FAIL [5]") != std::string::npos);
}
