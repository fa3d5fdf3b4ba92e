#include "uavisac/isac/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace uavisac::isac {

double range(const std::array<double, 2>& uav_xy, double altitude_m,
             const std::array<double, 2>& user_xy) {
  const double dx = uav_xy[0] - user_xy[0];
  const double dy = uav_xy[1] - user_xy[1];
  return std::sqrt(dx * dx + dy * dy + altitude_m * altitude_m);
}

double channel_gain(double range_m, const PhysicalConstants& consts) {
  return consts.ref_channel_gain / (range_m * range_m);
}

namespace {

// range of every (UAV k, user m) pair, row-major k*num_users + m.
std::vector<double> all_ranges(const Deployment& dep, const Scenario& scn) {
  std::vector<double> r(static_cast<std::size_t>(scn.num_uavs) *
                        scn.num_users);
  for (int k = 0; k < scn.num_uavs; ++k)
    for (int m = 0; m < scn.num_users; ++m)
      r[static_cast<std::size_t>(k) * scn.num_users + m] =
          range(dep.uav_xy[k], scn.altitude_m, scn.user_positions[m]);
  return r;
}

}  // namespace

std::vector<double> sinr_matrix(const Deployment& dep, const Scenario& scn) {
  const int kc = scn.num_uavs;
  const int mc = scn.num_users;
  const auto r = all_ranges(dep, scn);
  std::vector<double> gain(r.size());
  for (std::size_t i = 0; i < r.size(); ++i)
    gain[i] = channel_gain(r[i], scn.constants);

  std::vector<double> out(r.size());
  for (int m = 0; m < mc; ++m) {
    for (int k = 0; k < kc; ++k) {
      // Interference summed term by term (not total-minus-own) so the value
      // matches the defining sum bit for bit.
      double interf = 0.0;
      for (int j = 0; j < kc; ++j)
        if (j != k)
          interf += dep.p_com_mw[j] *
                    gain[static_cast<std::size_t>(j) * mc + m];
      const double own =
          dep.p_com_mw[k] * gain[static_cast<std::size_t>(k) * mc + m];
      out[static_cast<std::size_t>(k) * mc + m] =
          own / (interf + scn.constants.noise_power_mw);
    }
  }
  return out;
}

UtilityResult network_utility(const Deployment& dep, const Scenario& scn) {
  const auto gamma = sinr_matrix(dep, scn);
  const double share = scn.constants.bandwidth_hz / scn.num_users;
  UtilityResult res;
  for (int m = 0; m < scn.num_users; ++m) {
    double rate_sum = 0.0;
    for (int k = 0; k < scn.num_uavs; ++k)
      rate_sum +=
          share *
          std::log2(1.0 +
                    gamma[static_cast<std::size_t>(k) * scn.num_users + m]);
    if (rate_sum <= 0.0) {
      res.zero_rate = true;
      return res;
    }
    res.value += std::log(rate_sum);
  }
  return res;
}

FimCoefficients fim_coefficients(const Deployment& dep, const Scenario& scn,
                                 int user) {
  const int kc = scn.num_uavs;
  const auto& w = scn.user_positions[user];

  std::vector<double> r(kc), cx(kc), cy(kc);
  for (int k = 0; k < kc; ++k) {
    r[k] = range(dep.uav_xy[k], scn.altitude_m, w);
    cx[k] = (dep.uav_xy[k][0] - w[0]) / r[k];  // direction cosines towards x/y
    cy[k] = (dep.uav_xy[k][1] - w[1]) / r[k];
  }

  FimCoefficients fim;
  fim.b_a.assign(kc, 0.0);
  fim.b_b.assign(kc, 0.0);
  fim.b_c.assign(kc, 0.0);
  const double xi = scn.constants.xi;
  for (int k = 0; k < kc; ++k) {
    double a = 0.0, b = 0.0, c = 0.0;
    for (int j = 0; j < kc; ++j) {
      const double refl = scn.rcs(k, user, j);
      const double atten = 1.0 / (r[k] * r[k] * r[j] * r[j]);
      const double gx = cx[k] + cx[j];  // bistatic geometry gradient
      const double gy = cy[k] + cy[j];
      const double s = xi * atten * refl * refl;
      a += s * gx * gx;
      b += s * gy * gy;
      c += s * gx * gy;
    }
    fim.b_a[k] = a;
    fim.b_b[k] = b;
    fim.b_c[k] = c;
  }
  return fim;
}

double crb_trace(const FimCoefficients& fim, std::span<const double> p_rad_mw) {
  if (fim.b_a.size() != p_rad_mw.size())
    throw std::invalid_argument("crb_trace: coefficient/power size mismatch");
  double a = 0.0, b = 0.0, c = 0.0;
  for (std::size_t k = 0; k < p_rad_mw.size(); ++k) {
    a += fim.b_a[k] * p_rad_mw[k];
    b += fim.b_b[k] * p_rad_mw[k];
    c += fim.b_c[k] * p_rad_mw[k];
  }
  // Compensated determinant (Kahan): a*b - c*c computed to ~1.5 ulp of the
  // true value even when the products nearly cancel. Near-collinear
  // geometries make the naive expression lose all significant digits, which
  // would both corrupt the error bound and destabilize the singularity test.
  const double w = c * c;
  const double e = std::fma(c, c, -w);
  const double det = std::fma(a, b, -w) - e;
  // With one UAV the two gradient rows are collinear, so det is zero up to
  // roundoff; the relative test catches that at any power scale.
  if (!(det > kDetRelThreshold * a * b)) return kCrbPenalty;
  return (a + b) / det;
}

Deployment decode(std::span<const double> genes, const Scenario& scn) {
  if (genes.size() != static_cast<std::size_t>(scn.dim()))
    throw std::invalid_argument("decode: gene count must be 4*num_uavs");
  Deployment dep;
  dep.uav_xy.resize(scn.num_uavs);
  dep.p_com_mw.resize(scn.num_uavs);
  dep.p_rad_mw.resize(scn.num_uavs);
  const double span = scn.area_max_m - scn.area_min_m;
  for (int k = 0; k < scn.num_uavs; ++k) {
    const double gx = std::clamp(genes[4 * k + 0], 0.0, 1.0);
    const double gy = std::clamp(genes[4 * k + 1], 0.0, 1.0);
    const double gp = std::clamp(genes[4 * k + 2], 0.0, 1.0);
    const double gb = std::clamp(genes[4 * k + 3], 0.0, 1.0);
    dep.uav_xy[k] = {scn.area_min_m + gx * span, scn.area_min_m + gy * span};
    const double p_tx = scn.p_min_mw + gp * (scn.p_max_mw - scn.p_min_mw);
    dep.p_com_mw[k] = gb * p_tx;
    dep.p_rad_mw[k] = (1.0 - gb) * p_tx;
  }
  return dep;
}

ObjectiveVector objectives(std::span<const double> genes,
                           const Scenario& scn) {
  const Deployment dep = decode(genes, scn);

  // Degenerate geometry (only possible at zero altitude with a UAV parked on
  // a user) would blow up both objectives; return the penalties instead.
  for (int k = 0; k < scn.num_uavs; ++k)
    for (int m = 0; m < scn.num_users; ++m)
      if (range(dep.uav_xy[k], scn.altitude_m, scn.user_positions[m]) <=
          kMinRange)
        return {kUtilityPenalty, std::log(scn.num_users * kCrbPenalty)};

  const UtilityResult util = network_utility(dep, scn);

  double crb_sum = 0.0;
  for (int m = 0; m < scn.num_users; ++m)
    crb_sum += crb_trace(fim_coefficients(dep, scn, m), dep.p_rad_mw);

  return {util.zero_rate ? kUtilityPenalty : -util.value, std::log(crb_sum)};
}

}  // namespace uavisac::isac
