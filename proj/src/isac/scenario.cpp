#include "uavisac/isac/scenario.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace uavisac::isac {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

bool finite(double v) { return std::isfinite(v); }

}  // namespace

PhysicalConstants PhysicalConstants::make(double noise_power_mw,
                                          double ref_channel_gain,
                                          double bandwidth_hz,
                                          double light_speed_mps) {
  PhysicalConstants c;
  c.noise_power_mw = noise_power_mw;
  c.ref_channel_gain = ref_channel_gain;
  c.bandwidth_hz = bandwidth_hz;
  c.light_speed_mps = light_speed_mps;
  c.validate();
  const double pi = std::numbers::pi;
  c.xi = 8.0 * pi * pi * bandwidth_hz * bandwidth_hz /
         (noise_power_mw * light_speed_mps * light_speed_mps);
  return c;
}

void PhysicalConstants::validate() const {
  require(finite(noise_power_mw) && noise_power_mw > 0.0,
          "constants: noise power must be positive");
  require(finite(ref_channel_gain) && ref_channel_gain > 0.0,
          "constants: reference channel gain must be positive");
  require(finite(bandwidth_hz) && bandwidth_hz > 0.0,
          "constants: bandwidth must be positive");
  require(finite(light_speed_mps) && light_speed_mps > 0.0,
          "constants: propagation speed must be positive");
}

void Scenario::validate() const {
  require(num_uavs >= 1, "scenario: need at least one UAV");
  require(num_users >= 1, "scenario: need at least one user");
  require(finite(altitude_m) && altitude_m >= 0.0,
          "scenario: altitude must be non-negative");
  require(finite(area_min_m) && finite(area_max_m) && area_min_m < area_max_m,
          "scenario: area bounds must satisfy min < max");
  require(finite(p_min_mw) && finite(p_max_mw) && p_min_mw >= 0.0 &&
              p_min_mw < p_max_mw,
          "scenario: power bounds must satisfy 0 <= min < max");
  require(user_positions.size() == static_cast<std::size_t>(num_users),
          "scenario: user position count does not match num_users");
  for (const auto& w : user_positions)
    require(finite(w[0]) && finite(w[1]),
            "scenario: user positions must be finite");
  const auto want = static_cast<std::size_t>(num_uavs) * num_users * num_uavs;
  require(rcs_mag.size() == want,
          "scenario: reflection table must have num_uavs*num_users*num_uavs "
          "entries");
  for (double v : rcs_mag)
    require(finite(v) && v > 0.0,
            "scenario: reflection magnitudes must be positive");
  constants.validate();
}

namespace {

struct Fnv1a {
  std::uint64_t state = 1469598103934665603ull;
  void feed_byte(unsigned char b) {
    state ^= b;
    state *= 1099511628211ull;
  }
  void feed(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) feed_byte(static_cast<unsigned char>(v >> (8 * i)));
  }
  void feed(double v) { feed(std::bit_cast<std::uint64_t>(v)); }
  void feed(int v) { feed(static_cast<std::uint64_t>(static_cast<std::int64_t>(v))); }
};

}  // namespace

std::uint64_t Scenario::hash() const {
  Fnv1a h;
  h.feed(num_uavs);
  h.feed(num_users);
  h.feed(altitude_m);
  h.feed(area_min_m);
  h.feed(area_max_m);
  h.feed(p_min_mw);
  h.feed(p_max_mw);
  h.feed(constants.noise_power_mw);
  h.feed(constants.ref_channel_gain);
  h.feed(constants.bandwidth_hz);
  h.feed(constants.light_speed_mps);
  for (const auto& w : user_positions) {
    h.feed(w[0]);
    h.feed(w[1]);
  }
  for (double v : rcs_mag) h.feed(v);
  return h.state;
}

}  // namespace uavisac::isac
