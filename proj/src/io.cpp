#include "hypb/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>

namespace hypb {

namespace fs = std::filesystem;
using nlohmann::json;

std::string fmt15(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

namespace {

/// Shortest-roundtrip decimal string, for exact cache storage.
std::string exact_str(double x) {
  char buf[40];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, p);
}

std::vector<std::string> exact_strs(const std::vector<double>& xs) {
  std::vector<std::string> out;
  out.reserve(xs.size());
  for (double x : xs) out.push_back(exact_str(x));
  return out;
}

double parse_exact(const json& j) { return std::stod(j.get<std::string>()); }

std::vector<double> parse_exacts(const json& j) {
  std::vector<double> out;
  for (const auto& v : j) out.push_back(parse_exact(v));
  return out;
}

std::string cache_key(const MetricSpec& spec) {
  std::string key = spec.canonical();
  for (char& c : key)
    if (c == ':' || c == ',' || c == '=' || c == '.') c = '_';
  return key;
}

}  // namespace

CsvWriter::CsvWriter(const fs::path& path, const std::vector<std::string>& header)
    : path_(path), columns_(header.size()) {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) buffer_ += ',';
    buffer_ += header[i];
  }
  buffer_ += '\n';
}

CsvWriter::~CsvWriter() {
  if (!path_.parent_path().empty()) fs::create_directories(path_.parent_path());
  std::ofstream out(path_, std::ios::binary);
  out << buffer_;
}

CsvWriter& CsvWriter::cell(const std::string& s) {
  if (in_row_) buffer_ += ',';
  buffer_ += s;
  ++in_row_;
  return *this;
}
CsvWriter& CsvWriter::cell(double x) { return cell(fmt15(x)); }
CsvWriter& CsvWriter::cell(std::int64_t x) { return cell(std::to_string(x)); }
CsvWriter& CsvWriter::cell(std::uint64_t x) { return cell(std::to_string(x)); }

void CsvWriter::end_row() {
  if (in_row_ != columns_)
    throw std::logic_error("CsvWriter: row has " + std::to_string(in_row_) + " of " +
                           std::to_string(columns_) + " cells");
  buffer_ += '\n';
  in_row_ = 0;
}

void Summary::check(const std::string& name, double observed, double bound, bool pass,
                    const std::string& note) {
  assertions.push_back(Assertion{name, observed, bound, pass, note});
}

void Summary::check_le(const std::string& name, double observed, double bound,
                       const std::string& note) {
  check(name, observed, bound, observed <= bound, note);
}

bool Summary::all_pass() const {
  for (const Assertion& a : assertions)
    if (!a.pass) return false;
  return true;
}

void write_summary(const fs::path& path, const Summary& summary, const json* extra) {
  json j;
  j["experiment"] = summary.experiment;
  json checks = json::object();
  bool all = true;
  for (const Assertion& a : summary.assertions) {
    json c = {{"observed", fmt15(a.observed)}, {"bound", fmt15(a.bound)}, {"pass", a.pass}};
    if (!a.note.empty()) c["note"] = a.note;
    checks[a.name] = c;
    all = all && a.pass;
  }
  j["assertions"] = checks;
  j["pass"] = all;
  if (extra) j["data"] = *extra;
  if (!path.parent_path().empty()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  out << j.dump(2) << '\n';
}

fs::path resolve_cache_dir(const std::string& flag, const fs::path& out_dir) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("HYPBOUNDARY_CACHE_DIR")) return env;
  return out_dir / "cache";
}

Metric solve_metric_cached(const MetricSpec& spec, const fs::path& cache_dir) {
  fs::path file = cache_dir / (cache_key(spec) + ".json");
  if (fs::exists(file)) {
    try {
      json j;
      std::ifstream in(file);
      in >> j;
      if (j.at("spec").get<std::string>() != spec.canonical())
        throw std::runtime_error("spec mismatch");
      GrowthData growth;
      growth.theta = parse_exact(j.at("theta"));
      growth.omega = parse_exact(j.at("omega"));
      growth.eps = parse_exact(j.at("eps"));
      growth.dim = parse_exact(j.at("dim"));
      growth.perron_right = parse_exacts(j.at("perron_right"));
      growth.perron_left = parse_exacts(j.at("perron_left"));
      std::vector<double> ell = parse_exacts(j.at("ell"));
      std::optional<GreenSolve> green;
      if (j.contains("first_passage")) {
        GreenSolve gs;
        gs.first_passage = parse_exacts(j.at("first_passage"));
        gs.convergence = parse_exacts(j.at("convergence"));
        gs.iterations = j.at("iterations").get<int>();
        green = std::move(gs);
      }
      return Metric(spec, std::move(ell), std::move(green), std::move(growth));
    } catch (const std::exception& e) {
      std::cerr << "warning: corrupt cache file " << file << " (" << e.what()
                << "); recomputing\n";
    }
  }
  Metric metric = solve_metric(spec);
  json j;
  j["spec"] = spec.canonical();
  const GrowthData& g = metric.growth();
  j["theta"] = exact_str(g.theta);
  j["omega"] = exact_str(g.omega);
  j["eps"] = exact_str(g.eps);
  j["dim"] = exact_str(g.dim);
  j["perron_right"] = exact_strs(g.perron_right);
  j["perron_left"] = exact_strs(g.perron_left);
  j["ell"] = exact_strs(metric.letter_lengths());
  if (metric.green()) {
    j["first_passage"] = exact_strs(metric.green()->first_passage);
    j["convergence"] = exact_strs(metric.green()->convergence);
    j["iterations"] = metric.green()->iterations;
  }
  fs::create_directories(cache_dir);
  std::ofstream out(file, std::ios::binary);
  out << j.dump(2) << '\n';
  return metric;
}

}  // namespace hypb
