#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

const fs::path& work_dir() {
  static const fs::path dir = [] {
    const auto d = fs::temp_directory_path() / "hypmoments-cli-test";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

int run(const std::string& args) {
  const std::string cmd = "cd '" + work_dir().string() + "' && '" HYPMOMENTS_CLI_PATH "' --cache-dir cache " + args +
                          " > stdout.txt 2> stderr.txt";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& name) {
  std::ifstream in(work_dir() / name);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::size_t line_count(const std::string& text) {
  std::size_t n = 0;
  for (const char c : text) n += c == '\n' ? 1 : 0;
  return n;
}

}  // namespace

TEST_CASE("sweep writes a cache entry") {
  CHECK(run("sweep --family legendre --p 101") == 0);
  CHECK(run("cache list") == 0);
  CHECK(slurp("stdout.txt").find("legendre") != std::string::npos);
  CHECK(run("sweep --family nope --p 101") == 2);
  CHECK(run("sweep --family legendre --p 100") == 2);
  CHECK(run("sweep --family legendre") == 2);
}

TEST_CASE("moments rows and limits") {
  CHECK(run("moments --theorem 1 --d 2 --p 1009 --m 0..6") == 0);
  const auto csv = slurp("stdout.txt");
  CHECK(csv.rfind("n,m,empirical,limit,deviation,excluded\n", 0) == 0);
  CHECK(line_count(csv) == 8);

  CHECK(run("moments --theorem 2 --pair legendre,legendre_neg --p 1009 --n 2 --m 2 --format json") == 0);
  const auto rows = nlohmann::json::parse(slurp("stdout.txt"));
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].at("limit") == "1");

  CHECK(run("-o t4.json moments --theorem 4 --p 1009 --m 2 --format json") == 0);
  CHECK(nlohmann::json::parse(slurp("t4.json"))[0].at("limit") == "1");
}

TEST_CASE("histogram and density exports") {
  CHECK(run("-o hist.csv histogram --theorem 1 --d 2 --p 1009 --bins 20 --svg hist.svg") == 0);
  CHECK(line_count(slurp("hist.csv")) == 21);
  CHECK(slurp("hist.svg").find("<svg") == 0);

  CHECK(run("-o sc.csv density --kind semicircle --grid 41") == 0);
  const auto sc = slurp("sc.csv");
  CHECK(sc.rfind("t,pdf,cdf\n", 0) == 0);
  CHECK(line_count(sc) == 42);
}

TEST_CASE("verify and cache clear") {
  CHECK(run("verify --suite combinatorics --max-order 12") == 0);
  const auto suites = nlohmann::json::parse(slurp("stdout.txt"));
  REQUIRE(suites.size() == 1);
  for (const auto& check : suites[0].at("checks")) CHECK(check.at("status") == "pass");
  CHECK(run("verify --suite identities --primes 13,37") == 0);
  CHECK(run("verify --suite nonsense") == 2);
  CHECK(run("cache clear") == 0);
  CHECK(run("cache list") == 0);
  CHECK(slurp("stdout.txt").empty());
}
