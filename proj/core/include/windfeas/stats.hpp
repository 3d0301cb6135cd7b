#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "windfeas/wind_ingest.hpp"

namespace windfeas::stats {

struct WeibullFit {
  double scale = 0.0;  // lambda, m/s
  double shape = 0.0;  // k
  std::size_t n_samples = 0;
  double log_likelihood = 0.0;
  int iterations = 0;
};

inline constexpr std::size_t kMinWeibullSamples = 100;

/// Two-parameter Weibull maximum-likelihood fit. Non-positive values are
/// dropped first; at least 100 positive samples must remain. The shape is
/// found by Newton iteration on the profile-likelihood equation
///   sum(x^k ln x) / sum(x^k) - 1/k - mean(ln x) = 0
/// and the scale follows in closed form. Throws DomainError for too few or
/// all-equal samples and ConvergenceError after 500 iterations.
WeibullFit fit_weibull(std::span<const double> speeds);

/// Non-missing speeds of a series.
std::vector<double> observed_speeds(const ingest::WindSeries& series);

struct WindroseTable {
  std::size_t n_sectors = 16;
  double speed_bin_width = 2.0;
  std::size_t n_speed_bins = 11;  // last bin is open-ended (>= 20 m/s by default)
  std::size_t n_samples = 0;      // directed, non-missing samples
  std::vector<double> frequency;  // per sector
  std::vector<std::vector<std::size_t>> counts;  // [sector][speed bin]

  bool empty() const noexcept { return n_samples == 0; }
  double sector_width() const { return 360.0 / static_cast<double>(n_sectors); }
};

/// Sector of a direction: floor(((dir + width/2) mod 360) / width); sector 0 is north.
std::size_t direction_sector(double direction_deg, std::size_t n_sectors);

/// Direction/speed histogram. Returns an empty table (n_samples == 0) when
/// the series carries no direction data.
WindroseTable windrose(const ingest::WindSeries& series, std::size_t n_sectors = 16,
                       double speed_bin_width = 2.0, double open_bin_from = 20.0);

struct SummaryStats {
  std::size_t n = 0;
  double mean = 0.0;
  double std = 0.0;  // population
  double min = 0.0;
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double max = 0.0;
};

/// Moments and quartiles (linear interpolation between order statistics).
/// Throws AllMissingError for an empty input.
SummaryStats summary_stats(std::span<const double> values);
SummaryStats summary_stats(const ingest::WindSeries& series);

}  // namespace windfeas::stats
