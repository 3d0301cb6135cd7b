#include "windfeas/shear.hpp"

#include <cmath>
#include <string>

#include "windfeas/error.hpp"

namespace windfeas::shear {

double extrapolate(double v0, double z0, double z, double alpha) {
  if (!(z0 > 0.0) || !(z > 0.0) || !std::isfinite(z0) || !std::isfinite(z)) {
    throw DomainError("shear heights must be positive and finite (z0=" + std::to_string(z0) +
                      ", z=" + std::to_string(z) + ")");
  }
  if (!std::isfinite(alpha)) {
    throw DomainError("shear exponent must be finite");
  }
  if (!(v0 >= 0.0) || !std::isfinite(v0)) {
    throw DomainError("wind speed must be finite and non-negative");
  }
  if (z == z0) {
    return v0;
  }
  return v0 * std::pow(z / z0, alpha);
}

ingest::WindSeries to_hub_height(const ingest::WindSeries& series, double hub_height_m,
                                 double alpha) {
  auto samples = series.samples();
  for (auto& s : samples) {
    s.speed = extrapolate(s.speed, s.height_m, hub_height_m, alpha);
    s.height_m = hub_height_m;
  }
  return ingest::WindSeries(series.site_id(), series.cadence(), std::move(samples), series.gaps(),
                            series.utc_offset());
}

}  // namespace windfeas::shear
