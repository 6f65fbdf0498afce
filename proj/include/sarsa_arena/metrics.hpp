#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "sarsa_arena/common.hpp"

namespace sarsa_arena {

/// kills / (deaths_by_others + suicides); absent when there were no deaths.
std::optional<double> kd_ratio(std::uint64_t kills, std::uint64_t deaths_by_others, std::uint64_t suicides);

/// 100 * hits / (hits + misses); absent when there were no shots. Takes
/// doubles so per-life averages can be passed directly.
std::optional<double> hit_percentage(double hits, double misses);

/// Centred moving average over odd `window`. Output index i is the mean of
/// series[i .. i + window - 1], i.e. it belongs to input index
/// i + window / 2. Empty when the series is shorter than the window.
/// Throws std::invalid_argument for an even or non-positive window.
std::vector<double> centred_moving_average(std::span<const double> series, int window = 11);

struct Summary {
  std::size_t count = 0;
  double mean = 0.0;
  /// Population standard deviation.
  double stddev = 0.0;
  double min = 0.0;
  double max = 0.0;
  /// Lower middle element for even counts.
  double median = 0.0;
};

/// Throws std::invalid_argument on empty input.
Summary summarize(std::span<const double> values);

struct Interval {
  double estimate = 0.0;
  double lower = 0.0;
  double upper = 0.0;
};

/// Percentile bootstrap of the mean of `values`.
Interval bootstrap_mean(std::span<const double> values, int resamples, double confidence, Rng& rng);

}  // namespace sarsa_arena
