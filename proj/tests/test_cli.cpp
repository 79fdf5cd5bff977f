#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

using nlohmann::json;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string &args) {
  const std::string cmd = std::string(PIGP_CLI_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE *f = popen(cmd.c_str(), "r");
  REQUIRE(f);
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, f)) > 0)
    r.out.append(buf, n);
  const int status = pclose(f);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::vector<json> lines(const std::string &s) {
  std::vector<json> out;
  std::istringstream in(s);
  std::string line;
  while (std::getline(in, line))
    if (!line.empty())
      out.push_back(json::parse(line));
  return out;
}

} // namespace

TEST_CASE("count") {
  auto r = run("count --group 'cyclic(1458)' -p 3");
  REQUIRE(r.code == 0);
  auto j = json::parse(r.out);
  CHECK(j["count"] == 2916);
  CHECK(j["method"] == "abelian");
  CHECK(j["representatives"].size() == 2916);

  r = run("count --group quaternion8 -p 5");
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["count"] == 0);
  r = run("count --group 'cyclic(1)' -p 7");
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["count"] == 1);

  r = run("count --group Heis27 -p 3 --method lifting --debug-dual-lift");
  REQUIRE(r.code == 0);
  j = json::parse(r.out);
  CHECK(j["count"] == 1);
  CHECK(j.contains("dual_count"));

  r = run("count --group GD54 -p 3 --h-seed 5");
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["count"] == 0);
}

TEST_CASE("csv output and json file") {
  const auto path = std::filesystem::temp_directory_path() / "pigp_cli_test.json";
  const auto r = run("count --group 'cyclic(9)' -p 3 --format csv --json " + path.string());
  REQUIRE(r.code == 0);
  std::istringstream in(r.out);
  std::string header, row;
  std::getline(in, header);
  std::getline(in, row);
  CHECK(header.find("count") != std::string::npos);
  CHECK(row.rfind("12,", 0) == 0);
  std::ifstream f(path);
  REQUIRE(f);
  std::stringstream ss;
  ss << f.rdbuf();
  CHECK(ss.str() == r.out);
  std::filesystem::remove(path);
}

TEST_CASE("potential") {
  auto r = run("potential --tame-order 6 -p 5");
  REQUIRE(r.code == 0);
  const auto ls = lines(r.out);
  CHECK(ls.size() == 2);
  for (const auto &l : ls)
    CHECK(l["potentially_realizable"] == true);

  r = run("potential --group 'abelian(7,7)' -p 3");
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["potentially_realizable"] == false);
  r = run("potential --group 'abelian(3,3,3)' -p 3");
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(j["potentially_realizable"] == true);
  CHECK(j["witness"].is_object());
}

TEST_CASE("survey") {
  auto r = run("survey -p 3 --max-order 26");
  REQUIRE(r.code == 0);
  auto ls = lines(r.out);
  REQUIRE(!ls.empty());
  const auto summary = ls.back();
  ls.pop_back();
  for (const auto &l : ls)
    if (l["potentially_realizable"] == true)
      CHECK_MESSAGE(l["count"].get<int>() >= 1, l["group"]);
  CHECK(summary["groups"] == ls.size());
  int prev = 1 << 30;
  for (const auto &h : summary["histogram"]) {
    CHECK(h["f"].get<int>() <= prev);
    prev = h["f"].get<int>();
  }

  // Zero counts among potentially realizable groups up to order 54.
  r = run("survey -p 3 --max-order 54");
  REQUIRE(r.code == 0);
  std::set<std::string> zero;
  for (const auto &l : lines(r.out))
    if (l.contains("count") && l["potentially_realizable"] == true && l["count"] == 0)
      zero.insert(l["group"]);
  CHECK(zero == std::set<std::string>{"C3xC3xC3", "F9sdC4", "C2xC3xC3xC3", "GD54"});

  r = run("survey -p 3 --max-order 54 --realizability");
  REQUIRE(r.code == 0);
  std::set<std::string> minimal;
  for (const auto &l : lines(r.out))
    if (l.contains("minimally_unrealizable") && l["minimally_unrealizable"] == true)
      minimal.insert(l["group"]);
  CHECK(minimal == std::set<std::string>{"C3xC3xC3", "F9sdC4", "GD54"});

  const auto empty = std::filesystem::temp_directory_path() / "pigp_empty_catalog.txt";
  std::ofstream(empty).close();
  r = run("survey -p 3 --catalog " + empty.string());
  REQUIRE(r.code == 0);
  ls = lines(r.out);
  REQUIRE(ls.size() == 1);
  CHECK(ls[0]["groups"] == 0);
  CHECK(ls[0]["histogram"].empty());
  std::filesystem::remove(empty);
}

TEST_CASE("verify suites") {
  for (const char *args : {"verify shafarevich -p 3 --max-order 243",
                           "verify abelian-cross -p 5 --max-order 100", "verify props -p 3",
                           "verify n-independence -p 3", "verify complement -p 5"}) {
    const auto r = run(args);
    CHECK_MESSAGE(r.code == 0, args);
    const auto j = json::parse(r.out);
    CHECK(j["failures"].empty());
    CHECK(j["checks"].get<int>() > 0);
  }
}

TEST_CASE("catalog check") {
  const auto r = run("catalog check --require-complete");
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(j["complete"] == true);
  CHECK(j["duplicates"].empty());
}

TEST_CASE("exit codes") {
  CHECK(run("count --group nope -p 3").code == 3);
  CHECK(run("count --group Q8 -p 4").code == 3);
  CHECK(run("count --group 'cyclic(3' -p 3").code == 3);
  CHECK(run("count").code == 3);
  CHECK(run("verify nonsense").code == 3);
  CHECK(run("count --group Heis27 -p 3 --method lifting --aut-budget 5").code == 2);
  CHECK(run("--help").code == 0);

  // The same name in two catalogs.
  const auto dup = std::filesystem::temp_directory_path() / "pigp_dup_catalog.txt";
  std::ofstream(dup) << "group Q8 construct cyclic(8)\nend\n";
  CHECK(run("survey -p 3 --catalog " + dup.string() + " --catalog " + dup.string()).code == 3);
  std::filesystem::remove(dup);
}
