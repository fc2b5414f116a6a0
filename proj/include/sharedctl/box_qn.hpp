#pragma once

#include <functional>
#include <vector>

namespace sharedctl {

struct SolverSettings {
  int max_iterations = 40;
  double gradient_tolerance = 1e-6;
  double fd_step = 1e-6;
  int max_backtracks = 30;

  void validate() const;
};

struct SolveResult {
  std::vector<double> x;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
  // Objective after every accepted iterate, starting with the initial point.
  std::vector<double> history;
};

// Projected quasi-Newton (BFGS on the free variables) with forward-difference
// gradients and Armijo backtracking. Bounds are enforced by projection, so
// every evaluated point is feasible. Fully deterministic.
SolveResult minimize_box(const std::function<double(const std::vector<double>&)>& f, std::vector<double> x0,
                         const std::vector<double>& lower, const std::vector<double>& upper,
                         const SolverSettings& settings);

}  // namespace sharedctl
