#pragma once

#include <optional>

#include "windfeas/wind_ingest.hpp"

namespace windfeas::shear {

inline constexpr double kOpenTerrainExponent = 0.143;

struct ShearParams {
  double alpha = kOpenTerrainExponent;
  double reference_height_m = 10.0;
};

/// Power-law (Hellmann) profile: v0 * (z / z0)^alpha.
/// Throws DomainError for non-positive heights, negative speed or non-finite alpha.
double extrapolate(double v0, double z0, double z, double alpha = kOpenTerrainExponent);

inline std::optional<double> extrapolate(std::optional<double> v0, double z0, double z,
                                         double alpha = kOpenTerrainExponent) {
  if (!v0) {
    return std::nullopt;
  }
  return extrapolate(*v0, z0, z, alpha);
}

/// Lifts every sample from its own measurement height to `hub_height_m`.
ingest::WindSeries to_hub_height(const ingest::WindSeries& series, double hub_height_m,
                                 double alpha = kOpenTerrainExponent);

}  // namespace windfeas::shear
