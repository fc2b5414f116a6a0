#pragma once

#include <array>
#include <span>
#include <vector>

#include "sharedctl/vehicle.hpp"

namespace sharedctl {

// Triangular membership with optional shoulders: a left shoulder holds 1 for
// x <= peak, a right shoulder holds 1 for x >= peak.
struct MembershipFn {
  double left = 0.0;
  double peak = 0.0;
  double right = 0.0;
  bool left_shoulder = false;
  bool right_shoulder = false;

  double operator()(double x) const;
};

// Evenly spaced triangular partition of [0, 1] with shouldered end sets.
std::vector<MembershipFn> uniform_partition(int count);

struct FuzzySets {
  std::vector<MembershipFn> lateral = uniform_partition(5);       // VS S M B VB
  std::vector<MembershipFn> longitudinal = uniform_partition(5);  // VS S M L VL
  std::vector<MembershipFn> output = uniform_partition(7);        // VVL .. VVH
  int resolution = 201;

  void validate() const;
};

struct RuleBase {
  // table[i][j]: output level for lateral level i and longitudinal level j.
  std::vector<std::vector<int>> table;

  // level = clamp(6 - i - j, 0, 6)
  static RuleBase standard();
  void validate(const FuzzySets& sets) const;
};

// Mamdani inference: min implication, max aggregation, centroid over an
// evenly sampled output universe. Inputs are clamped to [0, 1].
double fis_alpha(double r_y, double r_x, const FuzzySets& sets, const RuleBase& rules);

struct AllocationParams {
  double epsilon = 1e-6;
  double tolerance = 0.02;  // |ratio - 1| below this counts as healthy

  void validate() const;
};

enum class AllocationBranch { Healthy = 1, PassThrough = 2, Capped = 3 };

struct ComponentAllocation {
  double value = 0.0;
  double ratio = 0.0;
  AllocationBranch branch = AllocationBranch::Healthy;
};

ComponentAllocation allocate_component(double u_des, double u_f, double alpha, const AllocationParams& p);

struct Allocation {
  ControlVector u_act;
  std::array<ComponentAllocation, 2> components{};
};

Allocation allocate(ControlVector u_des, ControlVector u_f, double alpha, const AllocationParams& p);

// Guarded ratio u_f / (u_des + eps * sign(u_des)), with sign(0) = +1.
double allocation_ratio(double u_des, double u_f, double epsilon);

}  // namespace sharedctl
