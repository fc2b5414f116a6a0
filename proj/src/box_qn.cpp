#include "sharedctl/box_qn.hpp"

#include <algorithm>
#include <cmath>

#include "sharedctl/errors.hpp"

namespace sharedctl {

void SolverSettings::validate() const {
  if (max_iterations < 1) throw ConfigError("solver: max_iterations must be >= 1");
  if (!(gradient_tolerance > 0.0) || !(fd_step > 0.0)) {
    throw ConfigError("solver: gradient_tolerance and fd_step must be positive");
  }
  if (max_backtracks < 1) throw ConfigError("solver: max_backtracks must be >= 1");
}

namespace {

using Vec = std::vector<double>;

void project(Vec& x, const Vec& lo, const Vec& hi) {
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::clamp(x[i], lo[i], hi[i]);
}

// One-sided differences, forward by default. A side that would leave the
// box is swapped for the other.
Vec gradient(const std::function<double(const Vec&)>& f, const Vec& x, double fx, const Vec& lo, const Vec& hi,
             double h) {
  Vec g(x.size());
  Vec probe = x;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double step = h;
    if (h > 0.0 ? x[i] + h > hi[i] : x[i] + h < lo[i]) step = -h;
    probe[i] = x[i] + step;
    g[i] = (f(probe) - fx) / step;
    probe[i] = x[i];
  }
  return g;
}

}  // namespace

SolveResult minimize_box(const std::function<double(const Vec&)>& f, Vec x0, const Vec& lower, const Vec& upper,
                         const SolverSettings& settings) {
  const std::size_t n = x0.size();
  project(x0, lower, upper);
  SolveResult res;
  res.x = x0;
  res.value = f(res.x);
  res.history.push_back(res.value);
  if (n == 0) {
    res.converged = true;
    return res;
  }

  Vec g = gradient(f, res.x, res.value, lower, upper, settings.fd_step);
  // Inverse Hessian approximation, row-major.
  Vec hinv(n * n, 0.0);
  auto reset_h = [&] {
    std::fill(hinv.begin(), hinv.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) hinv[i * n + i] = 1.0;
  };
  reset_h();

  const double bound_tol = 1e-12;
  for (int it = 0; it < settings.max_iterations; ++it) {
    // Projected-gradient stationarity measure.
    std::vector<bool> active(n, false);
    auto stationarity = [&] {
      double pg = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double moved = std::clamp(res.x[i] - g[i], lower[i], upper[i]) - res.x[i];
        pg = std::max(pg, std::abs(moved));
        active[i] =
            (res.x[i] <= lower[i] + bound_tol && g[i] > 0.0) || (res.x[i] >= upper[i] - bound_tol && g[i] < 0.0);
      }
      return pg;
    };
    if (stationarity() < settings.gradient_tolerance) {
      res.converged = true;
      break;
    }

    auto direction = [&] {
      Vec d(n, 0.0);
      for (std::size_t i = 0; i < n; ++i) {
        if (active[i]) continue;
        for (std::size_t j = 0; j < n; ++j) {
          if (!active[j]) d[i] -= hinv[i * n + j] * g[j];
        }
      }
      double slope = 0.0;
      for (std::size_t i = 0; i < n; ++i) slope += d[i] * g[i];
      if (!(slope < 0.0)) {
        reset_h();
        for (std::size_t i = 0; i < n; ++i) d[i] = active[i] ? 0.0 : -g[i];
      }
      // A gradient taken across a jump in f can be huge; never step further
      // than the box itself.
      double reach = 0.0;
      for (std::size_t i = 0; i < n; ++i) reach = std::max(reach, std::abs(d[i]) / (upper[i] - lower[i]));
      if (reach > 1.0) {
        for (double& di : d) di /= reach;
      }
      return d;
    };

    Vec x_new(n);
    double f_new = 0.0;
    auto line_search = [&](const Vec& d, double c1) {
      double t = 1.0;
      for (int bt = 0; bt < settings.max_backtracks; ++bt) {
        for (std::size_t i = 0; i < n; ++i) x_new[i] = res.x[i] + t * d[i];
        project(x_new, lower, upper);
        double decrease = 0.0;
        for (std::size_t i = 0; i < n; ++i) decrease += g[i] * (x_new[i] - res.x[i]);
        f_new = f(x_new);
        if (f_new <= res.value + c1 * decrease && f_new < res.value) return true;
        t *= 0.5;
      }
      return false;
    };

    bool accepted = line_search(direction(), 1e-4);
    if (!accepted) {
      // Next to a jump in f the forward slope is meaningless. Retry along the
      // steepest descent of the backward differences, accepting any decrease.
      reset_h();
      g = gradient(f, res.x, res.value, lower, upper, -settings.fd_step);
      if (stationarity() >= settings.gradient_tolerance) accepted = line_search(direction(), 0.0);
    }
    res.iterations = it + 1;
    if (!accepted) break;

    const Vec g_new = gradient(f, x_new, f_new, lower, upper, settings.fd_step);
    Vec s(n), y(n);
    double sy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      s[i] = x_new[i] - res.x[i];
      y[i] = g_new[i] - g[i];
      sy += s[i] * y[i];
    }
    if (sy > 1e-12) {
      // H+ = (I - rho s y^T) H (I - rho y s^T) + rho s s^T
      const double rho = 1.0 / sy;
      Vec hy(n, 0.0);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) hy[i] += hinv[i * n + j] * y[j];
      }
      double yhy = 0.0;
      for (std::size_t i = 0; i < n; ++i) yhy += y[i] * hy[i];
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          hinv[i * n + j] += -rho * (hy[i] * s[j] + s[i] * hy[j]) + (rho * rho * yhy + rho) * s[i] * s[j];
        }
      }
    }
    res.x = x_new;
    res.value = f_new;
    res.history.push_back(f_new);
    g = g_new;
  }
  return res;
}

}  // namespace sharedctl
