#include "cfl/measure.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace cfl {

SizeStats summarize(const std::vector<std::size_t>& bits) {
  SizeStats s;
  s.count = bits.size();
  if (bits.empty()) return s;
  std::vector<std::size_t> sorted = bits;
  std::sort(sorted.begin(), sorted.end());
  s.min = sorted.front();
  s.max = sorted.back();
  s.total = std::accumulate(sorted.begin(), sorted.end(), std::size_t{0});
  s.mean = static_cast<double>(s.total) / static_cast<double>(s.count);
  auto rank = [&](double q) {
    std::size_t idx = static_cast<std::size_t>(std::ceil(q * static_cast<double>(s.count)));
    return sorted[std::clamp<std::size_t>(idx, 1, s.count) - 1];
  };
  s.p50 = rank(0.50);
  s.p90 = rank(0.90);
  s.p99 = rank(0.99);
  return s;
}

void SizeReport::add(const std::string& name, const std::vector<std::size_t>& bits) {
  classes.emplace_back(name, summarize(bits));
}

const SizeStats* SizeReport::find(const std::string& name) const {
  for (const auto& [n, s] : classes)
    if (n == name) return &s;
  return nullptr;
}

std::string SizeReport::key_values() const {
  std::ostringstream out;
  for (const auto& [name, s] : classes) {
    out << name << ".count=" << s.count << '\n'
        << name << ".max=" << s.max << '\n'
        << name << ".min=" << s.min << '\n'
        << name << ".mean=" << s.mean << '\n'
        << name << ".p50=" << s.p50 << '\n'
        << name << ".p90=" << s.p90 << '\n'
        << name << ".p99=" << s.p99 << '\n'
        << name << ".total=" << s.total << '\n';
  }
  return out.str();
}

std::string SizeReport::json() const {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [name, s] : classes)
    j[name] = {{"count", s.count}, {"max", s.max},   {"min", s.min}, {"mean", s.mean},
               {"p50", s.p50},     {"p90", s.p90},   {"p99", s.p99}, {"total", s.total}};
  return j.dump(2);
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("need at least two points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double k = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (k * sxy - sx * sy) / (k * sxx - sx * sx);
}

}  // namespace cfl
