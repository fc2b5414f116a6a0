#pragma once

#include <array>
#include <optional>
#include <string_view>

#include "sharedctl/geometry.hpp"
#include "sharedctl/safe_area.hpp"

namespace sharedctl {

// Boundary potential field parameters.
struct ApfParams {
  double alpha_f = 30.0;  // peak potential
  double sigma_y = 1.0;   // lateral convergence [m]
  double d_c = 0.8;       // safety margin [m]
  double v_w = 2.0;       // vehicle width [m]

  double cutoff() const { return d_c + 0.5 * v_w; }
  void validate() const;
};

// Dynamic potential field parameters.
struct DpfParams {
  double alpha = 10.0;
  double a_f = 2.0;
  double sigma_x = 4.0;
  double b = 2.0;
  double a_max = 7.0;
  double t_r = 0.1;
  double t_i = 0.1;
  double d_o = 2.0;

  void validate() const;
};

enum class NeighborRole { Follower = 0, Leader = 1, Preceding = 2 };

std::string_view role_name(NeighborRole role);
std::optional<NeighborRole> parse_role(std::string_view name);

// Per-role weights in follower, leader, preceding order.
struct TaskWeights {
  std::array<double, 3> w{0.1, 0.2, 0.7};

  static TaskWeights lane_keep() { return {{0.1, 0.2, 0.7}}; }
  static TaskWeights lane_change() { return {{0.8, 0.1, 0.1}}; }
  double operator[](NeighborRole role) const { return w[static_cast<int>(role)]; }
  void validate() const;
};

struct LateralRisk {
  double distance = 0.0;   // r_b
  double potential = 0.0;  // P^r
  double r_y = 0.0;
};

// Potential of a point at distance r_b from the corridor boundary.
double boundary_potential(double r_b, const ApfParams& p);

LateralRisk lateral_risk(const SafeArea& area, Point2 predicted, const ApfParams& p);

// Modified Bessel function of the first kind, order 0, by its power series.
double bessel_i0(double x);
// log(I_0(|x|)), stable for large arguments.
double log_bessel_i0(double x);

// Closing speed c: positive when ego and neighbor approach each other.
double closing_speed(double ego_x, double ego_v, double other_x, double other_v);

// U^d for a closing speed and a signed longitudinal gap (other minus ego).
// Zero whenever c <= 0.
double dpf(double closing, double signed_gap, const DpfParams& p);
// log U^d for c > 0; -inf otherwise. Survives gap^(2b) exponents that underflow dpf().
double log_dpf(double closing, double signed_gap, const DpfParams& p);

double safe_distance(double v_e, double v_o, const DpfParams& p);

struct LongitudinalKinematics {
  double x = 0.0;
  double v = 0.0;
};

struct NeighborRisk {
  NeighborRole role = NeighborRole::Preceding;
  bool present = false;
  double closing = 0.0;
  double gap = 0.0;
  double safe_distance = 0.0;
  double potential = 0.0;      // U^d (may underflow to 0)
  double log_potential = 0.0;  // log U^d, -inf when not closing
  double ratio = 0.0;          // clamp(U^d / U^d_max, 0, 1)
};

struct LongitudinalRisk {
  double r_x = 0.0;
  std::array<NeighborRisk, 3> pairs{};
};

LongitudinalRisk longitudinal_risk(const LongitudinalKinematics& ego,
                                   const std::array<std::optional<LongitudinalKinematics>, 3>& neighbors,
                                   const TaskWeights& w, const DpfParams& p);

struct RiskReport {
  LateralRisk lateral;
  LongitudinalRisk longitudinal;

  double r_y() const { return lateral.r_y; }
  double r_x() const { return longitudinal.r_x; }
};

}  // namespace sharedctl
