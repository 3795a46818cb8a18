#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "hypmoments/error.hpp"
#include "hypmoments/sweep_cache.hpp"

using namespace hypmoments;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("hypmoments-test-" + std::to_string(std::rand()) + "-" +
                                        std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

template <typename F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::CheckFailure;
}

}  // namespace

TEST_CASE("sweep CSV round trip") {
  const PrimeFieldContext ctx(31);
  const auto family = builtin_family("legendre");
  const auto sweep = trace_sweep(family, ctx);
  std::stringstream buf;
  write_sweep_csv(buf, sweep);
  const std::string text = buf.str();
  CHECK(text.rfind("lambda,a,bad\n0,,1\n1,,1\n", 0) == 0);
  const auto back = read_sweep_csv(buf, 31, family.name(), family.content_hash());
  CHECK(back == sweep);
}

TEST_CASE("malformed CSV") {
  const auto read = [](const std::string& text, std::uint32_t p) {
    std::istringstream in(text);
    return read_sweep_csv(in, p, "x", "h");
  };
  CHECK(code_of([&] { read("lambda,a\n", 5); }) == ErrorCode::CacheCorrupt);
  CHECK(code_of([&] { read("lambda,a,bad\n0,,1\n1,2,1\n", 2); }) == ErrorCode::CacheCorrupt);
  CHECK(code_of([&] { read("lambda,a,bad\n0,,1\n2,1,0\n", 2); }) == ErrorCode::CacheCorrupt);
  CHECK(code_of([&] { read("lambda,a,bad\n0,,1\n", 2); }) == ErrorCode::CacheCorrupt);
  CHECK(code_of([&] { read("lambda,a,bad\n0,x,0\n", 1); }) == ErrorCode::CacheCorrupt);
}

TEST_CASE("family JSON") {
  const auto family = builtin_family("d6");
  const auto j = family_to_json(family);
  CHECK(j.at("a6").at("denominator") == "432");
  CHECK(j.at("a6").at("coefficients") == nlohmann::json::array({"0", "-1"}));
  const auto back = family_from_json(j);
  CHECK(back.content_hash() == family.content_hash());
  CHECK(back.name() == "d6");

  auto bad = j;
  bad["a5"] = j.at("a6");
  CHECK(code_of([&] { family_from_json(bad); }) == ErrorCode::InvalidInput);
  CHECK(code_of([] { family_from_json(nlohmann::json::parse(R"({"name": "z"})")); }) == ErrorCode::SingularFamily);

  // Integer coefficients may be given as numbers; missing keys are zero.
  const auto leg = family_from_json(nlohmann::json::parse(
      R"({"name": "leg", "a2": {"coefficients": [1, 1]}, "a4": {"denominator": 1, "coefficients": ["0", "1"]}})"));
  CHECK(leg.content_hash() == builtin_family("legendre").content_hash());
}

TEST_CASE("family files") {
  TempDir dir;
  const auto path = dir.path / "pair.json";
  nlohmann::json pair = {{"families", {family_to_json(builtin_family("legendre")),
                                       family_to_json(builtin_family("legendre_neg"))}}};
  std::ofstream(path) << pair.dump();
  const auto families = families_from_file(path);
  REQUIRE(families.size() == 2);
  CHECK(families[1].name() == "legendre_neg");

  std::ofstream(dir.path / "broken.json") << "{not json";
  CHECK(code_of([&] { families_from_file(dir.path / "broken.json"); }) == ErrorCode::InvalidInput);
  CHECK(code_of([&] { families_from_file(dir.path / "missing.json"); }) == ErrorCode::InvalidInput);
}

TEST_CASE("cache store, load and verification") {
  TempDir dir;
  const SweepCache cache(dir.path);
  const PrimeFieldContext ctx(101);
  const auto family = builtin_family("legendre");

  CHECK_FALSE(cache.load(family, 101).has_value());
  bool computed = false;
  const auto first = cache.get_or_compute(family, ctx, 1, &computed);
  CHECK(computed);
  CHECK(fs::exists(cache.csv_path(family, 101)));
  CHECK(cache.csv_path(family, 101).filename().string() == "legendre-" + family.short_hash() + "-101.csv");
  const auto second = cache.get_or_compute(family, ctx, 1, &computed);
  CHECK_FALSE(computed);
  CHECK(first == second);

  const auto meta = nlohmann::json::parse(std::ifstream(cache.meta_path(family, 101)));
  CHECK(meta.at("hash") == family.content_hash());
  CHECK(meta.at("p") == 101);
  CHECK(meta.at("version") == kArtifactVersion);
  CHECK(meta.at("coefficients").contains("a4"));

  // A different family under the same file name is refused.
  auto tampered = meta;
  tampered["hash"] = std::string(64, '0');
  std::ofstream(cache.meta_path(family, 101)) << tampered.dump();
  CHECK(code_of([&] { cache.load(family, 101); }) == ErrorCode::CacheCorrupt);

  const auto other = builtin_family("clausen");
  CHECK(code_of([&] { cache.store(other, first); }) == ErrorCode::SweepMismatch);

  cache.get_or_compute(other, ctx, 1);
  CHECK(cache.list().size() == 2);
  CHECK(cache.list()[0].family == "clausen");
  CHECK(cache.clear() == 4);
  CHECK(cache.list().empty());
}

TEST_CASE("cache directory from the environment") {
  ::setenv("HYPMOMENTS_CACHE", "/tmp/from-env", 1);
  CHECK(resolve_cache_dir("fallback") == fs::path("/tmp/from-env"));
  ::unsetenv("HYPMOMENTS_CACHE");
  CHECK(resolve_cache_dir("fallback") == fs::path("fallback"));
}
