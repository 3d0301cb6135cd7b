#include <gtest/gtest.h>

#include <chrono>
#include <cmath>
#include <limits>
#include <random>

#include "windfeas/error.hpp"
#include "windfeas/shear.hpp"

using namespace windfeas;
using namespace std::chrono;

TEST(Shear, IdentityAtReferenceHeight) {
  EXPECT_EQ(shear::extrapolate(5.0, 20.0, 20.0, 0.143), 5.0);
}

TEST(Shear, ZeroSpeedStaysZero) {
  EXPECT_EQ(shear::extrapolate(0.0, 20.0, 134.0), 0.0);
  EXPECT_EQ(shear::extrapolate(0.0, 80.0, 3.0, 0.3), 0.0);
}

TEST(Shear, HubHeightValue) {
  // 5 * (134/20)^0.143 to 18 digits
  EXPECT_NEAR(shear::extrapolate(5.0, 20.0, 134.0, 0.143), 6.56294403896355530, 1e-12);
  EXPECT_NEAR(shear::extrapolate(5.0, 20.0, 134.0), 6.5630, 0.0005);
}

TEST(Shear, MissingPropagates) {
  EXPECT_FALSE(shear::extrapolate(std::optional<double>{}, 20.0, 134.0));
}

TEST(Shear, DomainErrors) {
  EXPECT_THROW(shear::extrapolate(5.0, 0.0, 134.0), DomainError);
  EXPECT_THROW(shear::extrapolate(5.0, 20.0, -1.0), DomainError);
  EXPECT_THROW(shear::extrapolate(-1.0, 20.0, 134.0), DomainError);
  EXPECT_THROW(shear::extrapolate(5.0, 20.0, 134.0, std::numeric_limits<double>::infinity()),
               DomainError);
}

TEST(Shear, Properties) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> speed(0.0, 30.0);
  std::uniform_real_distribution<double> height(1.0, 200.0);
  std::uniform_real_distribution<double> alpha(-0.2, 0.6);
  std::uniform_real_distribution<double> scale(0.1, 10.0);
  for (int i = 0; i < 1000; ++i) {
    const double v = speed(rng);
    const double z0 = height(rng);
    const double z1 = height(rng);
    const double z2 = height(rng);
    const double a = alpha(rng);
    EXPECT_EQ(shear::extrapolate(v, z1, z1, a), v);
    const double direct = shear::extrapolate(v, z0, z2, a);
    const double composed = shear::extrapolate(shear::extrapolate(v, z0, z1, a), z1, z2, a);
    EXPECT_NEAR(composed, direct, 1e-12 * std::max(direct, 1e-300));
    const double c = scale(rng);
    EXPECT_NEAR(shear::extrapolate(c * v, z0, z1, a), c * shear::extrapolate(v, z0, z1, a),
                1e-12 * c * shear::extrapolate(v, z0, z1, a) + 1e-300);
    if (a > 0) {
      const double lo = std::min(z1, z2);
      const double hi = std::max(z1, z2);
      EXPECT_GE(shear::extrapolate(v, z0, hi, a), shear::extrapolate(v, z0, lo, a));
    }
  }
}

TEST(Shear, SeriesToHubHeight) {
  const Timestamp t0 = sys_days{2018y / January / 1};
  std::vector<ingest::WindSample> s{{t0, 5.0, 90.0, 20.0}, {t0 + 60s, std::nullopt, std::nullopt, 20.0},
                                    {t0 + 120s, 4.0, std::nullopt, 10.0}};
  const auto hub = shear::to_hub_height(ingest::WindSeries("s", 60s, s), 134.0);
  EXPECT_DOUBLE_EQ(*hub.samples()[0].speed, shear::extrapolate(5.0, 20.0, 134.0));
  EXPECT_FALSE(hub.samples()[1].speed);
  EXPECT_DOUBLE_EQ(*hub.samples()[2].speed, shear::extrapolate(4.0, 10.0, 134.0));
  EXPECT_DOUBLE_EQ(hub.samples()[0].height_m, 134.0);
  EXPECT_DOUBLE_EQ(*hub.samples()[0].direction, 90.0);
}
