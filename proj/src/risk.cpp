#include "sharedctl/risk.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "sharedctl/errors.hpp"

namespace sharedctl {

void ApfParams::validate() const {
  if (!(alpha_f > 0 && sigma_y > 0 && d_c > 0 && v_w > 0)) {
    throw ConfigError("apf: all parameters must be positive");
  }
}

void DpfParams::validate() const {
  if (!(alpha > 0 && a_f > 0 && sigma_x > 0 && a_max > 0 && t_r >= 0 && t_i >= 0 && d_o >= 0)) {
    throw ConfigError("dpf: gains, sigma_x and a_max must be positive; times and d_o non-negative");
  }
  if (!(b >= 1.0)) throw ConfigError("dpf: shape exponent b must be >= 1");
}

void TaskWeights::validate() const {
  double sum = 0.0;
  for (double x : w) {
    if (!(x >= 0.0)) throw ConfigError("weights: must be non-negative");
    sum += x;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw ConfigError("weights: must sum to 1");
}

std::string_view role_name(NeighborRole role) {
  switch (role) {
    case NeighborRole::Follower:
      return "follower";
    case NeighborRole::Leader:
      return "leader";
    case NeighborRole::Preceding:
      return "preceding";
  }
  return "?";
}

std::optional<NeighborRole> parse_role(std::string_view name) {
  if (name == "follower") return NeighborRole::Follower;
  if (name == "leader") return NeighborRole::Leader;
  if (name == "preceding") return NeighborRole::Preceding;
  return std::nullopt;
}

double boundary_potential(double r_b, const ApfParams& p) {
  if (r_b > p.cutoff()) return 0.0;
  return p.alpha_f * std::exp(-(r_b * r_b) / (p.sigma_y * p.sigma_y));
}

LateralRisk lateral_risk(const SafeArea& area, Point2 predicted, const ApfParams& p) {
  LateralRisk out;
  out.distance = distance_to_boundaries(area, predicted);
  out.potential = boundary_potential(out.distance, p);
  out.r_y = std::clamp(out.potential / p.alpha_f, 0.0, 1.0);
  return out;
}

double bessel_i0(double x) {
  const double q = 0.25 * x * x;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 500; ++k) {
    term *= q / (static_cast<double>(k) * k);
    sum += term;
    if (term < 1e-15 * sum) break;
  }
  return sum;
}

double log_bessel_i0(double x) {
  const double ax = std::abs(x);
  if (ax < 500.0) return std::log(bessel_i0(ax));
  // Asymptotic expansion; the series overflows well past the scenario range.
  const double inv = 1.0 / (8.0 * ax);
  return ax - 0.5 * std::log(2.0 * std::numbers::pi * ax) + std::log1p(inv + 4.5 * inv * inv);
}

double closing_speed(double ego_x, double ego_v, double other_x, double other_v) {
  return ego_x <= other_x ? ego_v - other_v : other_v - ego_v;
}

double log_dpf(double closing, double signed_gap, const DpfParams& p) {
  if (!(closing > 0.0)) return -std::numeric_limits<double>::infinity();
  const double log_u_eo = std::log(p.alpha) + closing - std::log(2.0 * std::numbers::pi) - log_bessel_i0(closing);
  const double ratio = std::abs(signed_gap) / p.sigma_x;
  const double log_u_rd = std::log(p.a_f) - 0.5 * std::pow(ratio, 2.0 * p.b);
  return log_u_eo + log_u_rd;
}

double dpf(double closing, double signed_gap, const DpfParams& p) {
  return std::exp(log_dpf(closing, signed_gap, p));
}

double safe_distance(double v_e, double v_o, const DpfParams& p) {
  return std::abs(v_e * v_e - v_o * v_o) / (2.0 * p.a_max) + std::max(v_o, v_e) * (p.t_r + 0.5 * p.t_i) + p.d_o;
}

LongitudinalRisk longitudinal_risk(const LongitudinalKinematics& ego,
                                   const std::array<std::optional<LongitudinalKinematics>, 3>& neighbors,
                                   const TaskWeights& w, const DpfParams& p) {
  LongitudinalRisk out;
  for (int i = 0; i < 3; ++i) {
    NeighborRisk& nr = out.pairs[i];
    nr.role = static_cast<NeighborRole>(i);
    nr.log_potential = -std::numeric_limits<double>::infinity();
    if (!neighbors[i]) continue;
    const LongitudinalKinematics& o = *neighbors[i];
    nr.present = true;
    nr.gap = o.x - ego.x;
    nr.closing = closing_speed(ego.x, ego.v, o.x, o.v);
    nr.safe_distance = safe_distance(ego.v, o.v, p);
    nr.log_potential = log_dpf(nr.closing, nr.gap, p);
    nr.potential = std::exp(nr.log_potential);
    if (nr.closing > 0.0) {
      // Normalizer: the same closing speed at the minimal safe distance.
      const double log_max = log_dpf(nr.closing, nr.safe_distance, p);
      nr.ratio = std::clamp(std::exp(nr.log_potential - log_max), 0.0, 1.0);
    }
    out.r_x += w.w[i] * nr.ratio;
  }
  out.r_x = std::clamp(out.r_x, 0.0, 1.0);
  return out;
}

}  // namespace sharedctl
