#include "sharedctl/authority.hpp"

#include <algorithm>
#include <cmath>

#include "sharedctl/errors.hpp"

namespace sharedctl {

double MembershipFn::operator()(double x) const {
  if (x <= peak) {
    if (left_shoulder) return 1.0;
    if (x <= left) return 0.0;
    return (x - left) / (peak - left);
  }
  if (right_shoulder) return 1.0;
  if (x >= right) return 0.0;
  return (right - x) / (right - peak);
}

std::vector<MembershipFn> uniform_partition(int count) {
  std::vector<MembershipFn> sets;
  const double step = 1.0 / (count - 1);
  for (int k = 0; k < count; ++k) {
    const double peak = k * step;
    sets.push_back({peak - step, peak, peak + step, k == 0, k == count - 1});
  }
  return sets;
}

void FuzzySets::validate() const {
  if (lateral.empty() || longitudinal.empty() || output.empty()) throw ConfigError("fis: empty partition");
  if (resolution < 2) throw ConfigError("fis: resolution must be >= 2");
}

RuleBase RuleBase::standard() {
  RuleBase rb;
  rb.table.assign(5, std::vector<int>(5, 0));
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 5; ++j) rb.table[i][j] = std::clamp(6 - i - j, 0, 6);
  }
  return rb;
}

void RuleBase::validate(const FuzzySets& sets) const {
  if (table.size() != sets.lateral.size()) throw ConfigError("fis: rule table rows must match lateral sets");
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (table[i].size() != sets.longitudinal.size()) {
      throw ConfigError("fis: rule table columns must match longitudinal sets");
    }
    for (std::size_t j = 0; j < table[i].size(); ++j) {
      const int level = table[i][j];
      if (level < 0 || level >= static_cast<int>(sets.output.size())) throw ConfigError("fis: rule level out of range");
      if (i > 0 && level > table[i - 1][j]) throw ConfigError("fis: rule table must be non-increasing in lateral risk");
      if (j > 0 && level > table[i][j - 1]) {
        throw ConfigError("fis: rule table must be non-increasing in longitudinal risk");
      }
    }
  }
}

double fis_alpha(double r_y, double r_x, const FuzzySets& sets, const RuleBase& rules) {
  const double y = std::clamp(r_y, 0.0, 1.0);
  const double x = std::clamp(r_x, 0.0, 1.0);

  // Strongest firing per output level.
  std::vector<double> level_strength(sets.output.size(), 0.0);
  for (std::size_t i = 0; i < sets.lateral.size(); ++i) {
    const double mu_i = sets.lateral[i](y);
    if (mu_i <= 0.0) continue;
    for (std::size_t j = 0; j < sets.longitudinal.size(); ++j) {
      const double mu_j = sets.longitudinal[j](x);
      if (mu_j <= 0.0) continue;
      double& s = level_strength[rules.table[i][j]];
      s = std::max(s, std::min(mu_i, mu_j));
    }
  }

  double num = 0.0;
  double den = 0.0;
  const int n = sets.resolution;
  for (int k = 0; k < n; ++k) {
    const double z = static_cast<double>(k) / (n - 1);
    double mu = 0.0;
    for (std::size_t l = 0; l < sets.output.size(); ++l) {
      if (level_strength[l] > 0.0) mu = std::max(mu, std::min(level_strength[l], sets.output[l](z)));
    }
    num += mu * z;
    den += mu;
  }
  if (den <= 0.0) return 0.0;
  return std::clamp(num / den, 0.0, 1.0);
}

void AllocationParams::validate() const {
  if (!(epsilon > 0.0)) throw ConfigError("allocation: epsilon must be positive");
  if (!(tolerance >= 0.0)) throw ConfigError("allocation: tolerance must be non-negative");
}

double allocation_ratio(double u_des, double u_f, double epsilon) {
  const double sign = u_des < 0.0 ? -1.0 : 1.0;
  return u_f / (u_des + epsilon * sign);
}

ComponentAllocation allocate_component(double u_des, double u_f, double alpha, const AllocationParams& p) {
  ComponentAllocation c;
  c.ratio = allocation_ratio(u_des, u_f, p.epsilon);
  if (std::abs(c.ratio - 1.0) <= p.tolerance) {
    c.value = u_f;
    c.branch = AllocationBranch::Healthy;
  } else if (c.ratio > 0.0 && c.ratio < alpha) {
    c.value = u_f;
    c.branch = AllocationBranch::PassThrough;
  } else {
    c.value = alpha * u_des;
    c.branch = AllocationBranch::Capped;
  }
  return c;
}

Allocation allocate(ControlVector u_des, ControlVector u_f, double alpha, const AllocationParams& p) {
  Allocation out;
  for (int i = 0; i < 2; ++i) {
    out.components[i] = allocate_component(u_des[i], u_f[i], alpha, p);
    out.u_act[i] = out.components[i].value;
  }
  return out;
}

}  // namespace sharedctl
