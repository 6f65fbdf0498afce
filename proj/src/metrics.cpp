#include "sarsa_arena/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sarsa_arena {

std::optional<double> kd_ratio(std::uint64_t kills, std::uint64_t deaths_by_others, std::uint64_t suicides) {
  std::uint64_t deaths = deaths_by_others + suicides;
  if (deaths == 0) return std::nullopt;
  return static_cast<double>(kills) / static_cast<double>(deaths);
}

std::optional<double> hit_percentage(double hits, double misses) {
  double shots = hits + misses;
  if (!(shots > 0.0)) return std::nullopt;
  return 100.0 * hits / shots;
}

std::vector<double> centred_moving_average(std::span<const double> series, int window) {
  if (window < 1 || window % 2 == 0) throw std::invalid_argument("window must be odd and >= 1");
  const auto w = static_cast<std::size_t>(window);
  std::vector<double> out;
  if (series.size() < w) return out;
  out.reserve(series.size() - w + 1);
  // Summed per window rather than as a running sum so every output is the
  // plain mean of its samples, free of accumulated rounding.
  for (std::size_t i = 0; i + w <= series.size(); ++i) {
    double sum = 0.0;
    for (std::size_t j = i; j < i + w; ++j) sum += series[j];
    out.push_back(sum / static_cast<double>(w));
  }
  return out;
}

Summary summarize(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("summarize needs at least one value");
  Summary s;
  s.count = values.size();
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / static_cast<double>(s.count);
  double ss = 0.0;
  for (double v : values) ss += (v - s.mean) * (v - s.mean);
  s.stddev = std::sqrt(ss / static_cast<double>(s.count));
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  s.min = sorted.front();
  s.max = sorted.back();
  s.median = sorted[(sorted.size() - 1) / 2];
  return s;
}

Interval bootstrap_mean(std::span<const double> values, int resamples, double confidence, Rng& rng) {
  if (values.empty()) throw std::invalid_argument("bootstrap needs at least one value");
  if (resamples < 1) throw std::invalid_argument("resamples must be >= 1");
  if (!(confidence > 0.0 && confidence < 1.0)) throw std::invalid_argument("confidence must be in (0, 1)");
  const int n = static_cast<int>(values.size());
  std::vector<double> means;
  means.reserve(static_cast<std::size_t>(resamples));
  for (int r = 0; r < resamples; ++r) {
    double sum = 0.0;
    for (int i = 0; i < n; ++i) sum += values[static_cast<std::size_t>(rng.below(n))];
    means.push_back(sum / n);
  }
  std::sort(means.begin(), means.end());
  auto at = [&](double q) {
    auto idx = static_cast<std::size_t>(std::floor(q * (resamples - 1) + 0.5));
    return means[std::min(idx, means.size() - 1)];
  };
  double tail = (1.0 - confidence) / 2.0;
  return {summarize(values).mean, at(tail), at(1.0 - tail)};
}

}  // namespace sarsa_arena
