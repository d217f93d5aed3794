#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "hypb/metric.hpp"

namespace hypb {

/// Formats a double with 15 significant digits (the report precision).
std::string fmt15(double x);

/// CSV table with a header row; numeric cells at 15 significant digits.
class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header);
  ~CsvWriter();

  CsvWriter& cell(const std::string& s);
  CsvWriter& cell(double x);
  CsvWriter& cell(std::int64_t x);
  CsvWriter& cell(std::uint64_t x);
  void end_row();

 private:
  std::string buffer_;
  std::filesystem::path path_;
  std::size_t columns_;
  std::size_t in_row_ = 0;
};

/// Assertion bundle for the JSON summary: name -> {observed, bound, pass}.
struct Assertion {
  std::string name;
  double observed = 0;
  double bound = 0;
  bool pass = false;
  std::string note;
};

struct Summary {
  std::string experiment;
  std::vector<Assertion> assertions;

  void check(const std::string& name, double observed, double bound, bool pass,
             const std::string& note = "");
  /// observed <= bound convenience form.
  void check_le(const std::string& name, double observed, double bound,
                const std::string& note = "");
  bool all_pass() const;
};

void write_summary(const std::filesystem::path& path, const Summary& summary,
                   const nlohmann::json* extra = nullptr);

/// Cache directory resolution: explicit argument, else $HYPBOUNDARY_CACHE_DIR,
/// else <out>/cache.
std::filesystem::path resolve_cache_dir(const std::string& flag,
                                        const std::filesystem::path& out_dir);

/// Solved metric with a JSON file cache keyed by the spec's canonical string.
/// Exact fields are stored as decimal strings, so a cache hit reproduces the
/// solve bit for bit. A corrupt cache file is recomputed with a warning.
Metric solve_metric_cached(const MetricSpec& spec, const std::filesystem::path& cache_dir);

}  // namespace hypb
