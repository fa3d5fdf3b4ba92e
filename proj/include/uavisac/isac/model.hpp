#pragma once

#include <array>
#include <span>
#include <vector>

#include "uavisac/isac/scenario.hpp"
#include "uavisac/objective.hpp"

namespace uavisac::isac {

// Substitute written in place of a user's error-bound trace when the Fisher
// information matrix is (numerically) singular, e.g. with a single UAV.
inline constexpr double kCrbPenalty = 1e12;
// f1_tilde assigned when some user receives zero total rate.
inline constexpr double kUtilityPenalty = 1e12;
// FIM determinants below this fraction of the diagonal product count as
// singular; absolute thresholds are useless across ~20 orders of magnitude.
inline constexpr double kDetRelThreshold = 1e-12;
// UAV-user ranges at or below this (metres) make path loss meaningless.
inline constexpr double kMinRange = 1e-9;

double range(const std::array<double, 2>& uav_xy, double altitude_m,
             const std::array<double, 2>& user_xy);

// Free-space power gain at the given range: ref_channel_gain / range^2.
double channel_gain(double range_m, const PhysicalConstants& consts);

// SINR of each (UAV k, user m) downlink, row-major k*num_users + m. The
// interference sum runs over the other UAVs' communication power only.
std::vector<double> sinr_matrix(const Deployment& dep, const Scenario& scn);

struct UtilityResult {
  double value = 0.0;
  bool zero_rate = false;  // some user ended up with no rate at all
};

// Sum over users of ln(sum over UAVs of per-link rate), each link getting an
// equal bandwidth share.
UtilityResult network_utility(const Deployment& dep, const Scenario& scn);

// Per-UAV coefficients of the 2x2 location Fisher information matrix of one
// user; the matrix is linear in the sensing powers:
//   A = sum_k b_a[k]*p_rad[k], B = sum_k b_b[k]*p_rad[k],
//   C = sum_k b_c[k]*p_rad[k], FIM = [[A, C], [C, B]].
struct FimCoefficients {
  std::vector<double> b_a;
  std::vector<double> b_b;
  std::vector<double> b_c;
};

FimCoefficients fim_coefficients(const Deployment& dep, const Scenario& scn,
                                 int user);

// Trace of the inverted FIM, (A+B)/(A*B - C^2), or kCrbPenalty when the
// matrix is singular within kDetRelThreshold.
double crb_trace(const FimCoefficients& fim, std::span<const double> p_rad_mw);

// Map genes in [0,1]^{4K} to a deployment. Genes outside [0,1] are clamped
// first, so any real vector decodes to a feasible deployment.
Deployment decode(std::span<const double> genes, const Scenario& scn);

// Full bi-objective evaluation: f1_tilde = -utility (or the penalty when a
// user has zero rate), f2_tilde = ln(sum of per-user CRB traces). Always
// finite, never NaN.
ObjectiveVector objectives(std::span<const double> genes, const Scenario& scn);

}  // namespace uavisac::isac
