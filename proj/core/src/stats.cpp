#include "windfeas/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "windfeas/error.hpp"

namespace windfeas::stats {

namespace {

constexpr int kMaxIterations = 500;
constexpr double kShapeTolerance = 1e-10;

struct PowerSums {
  double s0 = 0.0;  // sum y^k
  double s1 = 0.0;  // sum y^k ln y
  double s2 = 0.0;  // sum y^k (ln y)^2
};

PowerSums power_sums(const std::vector<double>& log_y, double k) {
  PowerSums s;
  for (const double l : log_y) {
    const double w = std::exp(k * l);
    s.s0 += w;
    s.s1 += w * l;
    s.s2 += w * l * l;
  }
  return s;
}

}  // namespace

WeibullFit fit_weibull(std::span<const double> speeds) {
  std::vector<double> x;
  x.reserve(speeds.size());
  for (const double v : speeds) {
    if (v > 0.0 && std::isfinite(v)) {
      x.push_back(v);
    }
  }
  if (x.size() < kMinWeibullSamples) {
    throw DomainError("Weibull fit needs at least " + std::to_string(kMinWeibullSamples) +
                      " positive samples, got " + std::to_string(x.size()));
  }
  const double x_max = *std::max_element(x.begin(), x.end());
  const double n = static_cast<double>(x.size());

  // Work on y = x / max(x) so y^k stays in (0, 1].
  std::vector<double> log_y(x.size());
  double mean_log = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    log_y[i] = std::log(x[i] / x_max);
    mean_log += log_y[i];
  }
  mean_log /= n;
  double var_log = 0.0;
  for (const double l : log_y) {
    var_log += (l - mean_log) * (l - mean_log);
  }
  var_log /= n;
  if (!(var_log > 0.0)) {
    throw DomainError("Weibull fit is degenerate: all samples are equal");
  }

  // Profile equation g(k) is strictly increasing in k; Newton with a bisection fallback.
  double k = std::numbers::pi / std::sqrt(6.0 * var_log);
  double lo = 0.0;
  double hi = std::numeric_limits<double>::infinity();
  int it = 0;
  bool converged = false;
  for (; it < kMaxIterations; ++it) {
    const auto s = power_sums(log_y, k);
    const double g = s.s1 / s.s0 - 1.0 / k - mean_log;
    const double dg = (s.s2 * s.s0 - s.s1 * s.s1) / (s.s0 * s.s0) + 1.0 / (k * k);
    if (g < 0.0) {
      lo = k;
    } else {
      hi = k;
    }
    double next = k - g / dg;
    if (!(next > lo && next < hi) || !std::isfinite(next)) {
      next = std::isfinite(hi) ? 0.5 * (lo + hi) : 2.0 * k;
    }
    if (std::abs(next - k) < kShapeTolerance) {
      k = next;
      converged = true;
      ++it;
      break;
    }
    k = next;
  }
  if (!converged) {
    throw ConvergenceError("Weibull shape iteration did not converge in " +
                           std::to_string(kMaxIterations) + " iterations");
  }

  const auto s = power_sums(log_y, k);
  const double scale = x_max * std::pow(s.s0 / n, 1.0 / k);

  WeibullFit fit;
  fit.shape = k;
  fit.scale = scale;
  fit.n_samples = x.size();
  fit.iterations = it;
  double sum_log_x = 0.0;
  double sum_pow = 0.0;
  for (const double v : x) {
    sum_log_x += std::log(v);
    sum_pow += std::pow(v / scale, k);
  }
  fit.log_likelihood = n * std::log(k) - n * k * std::log(scale) + (k - 1.0) * sum_log_x - sum_pow;
  return fit;
}

std::vector<double> observed_speeds(const ingest::WindSeries& series) {
  std::vector<double> out;
  out.reserve(series.size());
  for (const auto& s : series.samples()) {
    if (s.speed) {
      out.push_back(*s.speed);
    }
  }
  return out;
}

std::size_t direction_sector(double direction_deg, std::size_t n_sectors) {
  const double width = 360.0 / static_cast<double>(n_sectors);
  double shifted = std::fmod(direction_deg + width / 2.0, 360.0);
  if (shifted < 0.0) {
    shifted += 360.0;
  }
  const auto sector = static_cast<std::size_t>(std::floor(shifted / width));
  return std::min(sector, n_sectors - 1);
}

WindroseTable windrose(const ingest::WindSeries& series, std::size_t n_sectors,
                       double speed_bin_width, double open_bin_from) {
  if (n_sectors == 0) {
    throw DomainError("windrose needs at least one sector");
  }
  if (!(speed_bin_width > 0.0) || !(open_bin_from > 0.0)) {
    throw DomainError("windrose speed bins must be positive");
  }
  WindroseTable t;
  t.n_sectors = n_sectors;
  t.speed_bin_width = speed_bin_width;
  t.n_speed_bins = static_cast<std::size_t>(std::ceil(open_bin_from / speed_bin_width)) + 1;
  t.frequency.assign(n_sectors, 0.0);
  t.counts.assign(n_sectors, std::vector<std::size_t>(t.n_speed_bins, 0));
  for (const auto& s : series.samples()) {
    if (!s.speed || !s.direction) {
      continue;
    }
    const std::size_t sector = direction_sector(*s.direction, n_sectors);
    const auto bin = std::min(static_cast<std::size_t>(*s.speed / speed_bin_width),
                              t.n_speed_bins - 1);
    ++t.counts[sector][bin];
    ++t.n_samples;
  }
  if (t.n_samples > 0) {
    for (std::size_t i = 0; i < n_sectors; ++i) {
      std::size_t total = 0;
      for (const auto c : t.counts[i]) {
        total += c;
      }
      t.frequency[i] = static_cast<double>(total) / static_cast<double>(t.n_samples);
    }
  }
  return t;
}

namespace {

double quantile_sorted(const std::vector<double>& v, double p) {
  const double h = p * static_cast<double>(v.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const auto hi = std::min(lo + 1, v.size() - 1);
  return v[lo] + (h - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

}  // namespace

SummaryStats summary_stats(std::span<const double> values) {
  if (values.empty()) {
    throw AllMissingError("summary statistics need at least one observed value");
  }
  std::vector<double> v(values.begin(), values.end());
  SummaryStats s;
  s.n = v.size();
  double sum = 0.0;
  for (const double x : v) {
    sum += x;
  }
  s.mean = sum / static_cast<double>(s.n);
  double ss = 0.0;
  for (const double x : v) {
    ss += (x - s.mean) * (x - s.mean);
  }
  s.std = std::sqrt(ss / static_cast<double>(s.n));
  std::sort(v.begin(), v.end());
  s.min = v.front();
  s.max = v.back();
  s.q1 = quantile_sorted(v, 0.25);
  s.median = quantile_sorted(v, 0.5);
  s.q3 = quantile_sorted(v, 0.75);
  return s;
}

SummaryStats summary_stats(const ingest::WindSeries& series) {
  const auto v = observed_speeds(series);
  if (v.empty()) {
    throw AllMissingError("series '" + series.site_id() + "' has no observed wind speed");
  }
  return summary_stats(v);
}

}  // namespace windfeas::stats
