#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace uavisac::isac {

// Physical-layer constants shared by every link in a scenario. All powers are
// linear milliwatts and all gains are linear ratios; dB/dBm conversions happen
// at the configuration boundary, never inside the model.
struct PhysicalConstants {
  double noise_power_mw = 0.0;    // receiver noise power
  double ref_channel_gain = 0.0;  // channel power gain at 1 m reference distance
  double bandwidth_hz = 0.0;      // total downlink bandwidth, shared evenly
  double light_speed_mps = 2.998e8;
  // Sensing information scale: 8*pi^2*bandwidth^2 / (noise * c^2).
  // Precomputed once because it multiplies every Fisher-information term.
  double xi = 0.0;

  static PhysicalConstants make(double noise_power_mw, double ref_channel_gain,
                                double bandwidth_hz,
                                double light_speed_mps = 2.998e8);
  void validate() const;  // throws std::invalid_argument
};

// A fixed problem instance: users on the ground, UAV count, power bounds and
// the sensing cross-section magnitudes for every (tx UAV, user, rx UAV)
// triple. Everything the objectives need besides the decision vector.
struct Scenario {
  int num_uavs = 0;
  int num_users = 0;
  double altitude_m = 0.0;  // common flight altitude
  double area_min_m = 0.0;  // square deployment region [min, max]^2
  double area_max_m = 0.0;
  double p_min_mw = 0.0;  // per-UAV total transmit power bounds
  double p_max_mw = 0.0;
  std::vector<std::array<double, 2>> user_positions;  // num_users entries
  std::vector<double> rcs_mag;  // num_uavs*num_users*num_uavs, see rcs()
  PhysicalConstants constants;

  // Reflection magnitude for the path tx UAV k -> user m -> rx UAV j.
  double rcs(int k, int m, int j) const {
    return rcs_mag[(static_cast<std::size_t>(k) * num_users + m) * num_uavs +
                   j];
  }

  int dim() const { return 4 * num_uavs; }

  void validate() const;  // throws std::invalid_argument

  // FNV-1a over every physical input, byte-exact. Two runs may only be
  // compared when their scenario hashes agree.
  std::uint64_t hash() const;
};

// A decoded candidate: UAV positions plus the per-UAV power split.
struct Deployment {
  std::vector<std::array<double, 2>> uav_xy;
  std::vector<double> p_com_mw;  // communication share
  std::vector<double> p_rad_mw;  // sensing share
};

}  // namespace uavisac::isac
