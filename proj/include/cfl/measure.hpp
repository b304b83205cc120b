#pragma once

#include <string>
#include <utility>
#include <vector>

namespace cfl {

struct SizeStats {
  std::size_t count = 0;
  std::size_t min = 0;
  std::size_t max = 0;
  std::size_t total = 0;
  double mean = 0;
  std::size_t p50 = 0;
  std::size_t p90 = 0;
  std::size_t p99 = 0;
};

/// Nearest-rank percentiles over the per-label bit counts.
SizeStats summarize(const std::vector<std::size_t>& bits);

/// Size report: one SizeStats per element class ("vertex", "color", ...).
struct SizeReport {
  std::vector<std::pair<std::string, SizeStats>> classes;

  void add(const std::string& name, const std::vector<std::size_t>& bits);
  const SizeStats* find(const std::string& name) const;
  /// Lines "<class>.<stat>=<value>".
  std::string key_values() const;
  std::string json() const;
};

/// Least-squares slope of log y against log x.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace cfl
