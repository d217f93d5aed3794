#include <doctest.h>

#include <fstream>
#include <sstream>

#include "hypb/io.hpp"

using namespace hypb;
namespace fs = std::filesystem;

namespace {
std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}
}  // namespace

TEST_CASE("fmt15 precision") {
  CHECK(fmt15(0.5) == "0.5");
  CHECK(fmt15(1.0 / 3.0) == "0.333333333333333");
  CHECK(fmt15(3.0) == "3");
}

TEST_CASE("csv writer") {
  fs::path dir = fs::temp_directory_path() / "hypb_test_csv";
  fs::remove_all(dir);
  {
    CsvWriter csv(dir / "t.csv", {"a", "b"});
    csv.cell(std::string("x")).cell(0.25);
    csv.end_row();
    CHECK_THROWS_AS((csv.cell(1.0), csv.end_row()), std::logic_error);
    csv.cell(2.0);
    csv.end_row();
  }
  std::string text = slurp(dir / "t.csv");
  CHECK(text == "a,b\nx,0.25\n1,2\n");
  fs::remove_all(dir);
}

TEST_CASE("summary json") {
  fs::path dir = fs::temp_directory_path() / "hypb_test_json";
  fs::remove_all(dir);
  Summary s{"demo"};
  s.check_le("small", 0.5, 1.0);
  s.check("exact", 3.0, 3.0, true, "note");
  CHECK(s.all_pass());
  write_summary(dir / "s.json", s);
  auto j = nlohmann::json::parse(slurp(dir / "s.json"));
  CHECK(j["experiment"] == "demo");
  CHECK(j["pass"] == true);
  CHECK(j["assertions"]["small"]["pass"] == true);
  CHECK(j["assertions"]["exact"]["note"] == "note");
  s.check_le("fails", 2.0, 1.0);
  CHECK(!s.all_pass());
  fs::remove_all(dir);
}

TEST_CASE("metric cache roundtrip") {
  fs::path dir = fs::temp_directory_path() / "hypb_test_cache";
  fs::remove_all(dir);
  MetricSpec spec = MetricSpec::parse("green:srw");
  Metric fresh = solve_metric_cached(spec, dir);
  // a cache file exists and contains the closed-form values
  fs::path file;
  for (const auto& e : fs::directory_iterator(dir)) file = e.path();
  REQUIRE(!file.empty());
  std::string bytes1 = slurp(file);
  CHECK(bytes1.find("0.33333333333") != std::string::npos);
  CHECK(bytes1.find("0.75") != std::string::npos);

  // second solve hits the cache bit for bit
  Metric again = solve_metric_cached(spec, dir);
  CHECK(slurp(file) == bytes1);
  CHECK(again.growth().theta == fresh.growth().theta);
  CHECK(again.growth().omega == fresh.growth().omega);
  CHECK(again.letter_lengths() == fresh.letter_lengths());
  CHECK(again.green()->first_passage == fresh.green()->first_passage);

  // corrupt cache is recomputed with the same values
  {
    std::ofstream out(file, std::ios::binary);
    out << "{not json";
  }
  Metric recovered = solve_metric_cached(spec, dir);
  CHECK(recovered.growth().theta == fresh.growth().theta);
  CHECK(slurp(file) == bytes1);
  fs::remove_all(dir);
}

TEST_CASE("cache dir resolution") {
  CHECK(resolve_cache_dir("explicit", "out") == fs::path("explicit"));
  unsetenv("HYPBOUNDARY_CACHE_DIR");
  CHECK(resolve_cache_dir("", "out") == fs::path("out") / "cache");
  setenv("HYPBOUNDARY_CACHE_DIR", "/tmp/envcache", 1);
  CHECK(resolve_cache_dir("", "out") == fs::path("/tmp/envcache"));
  unsetenv("HYPBOUNDARY_CACHE_DIR");
}
