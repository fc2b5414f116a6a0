#include "sharedctl/road.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "sharedctl/errors.hpp"

namespace sharedctl {

namespace {
constexpr double kMinVehicleWidth = 2.0;
}

RoadModel::RoadModel(Kind kind, double lane_width, int lane_count, double radius, double length)
    : kind_(kind), lane_width_(lane_width), lane_count_(lane_count), radius_(radius), length_(length) {
  if (!(lane_width > kMinVehicleWidth)) {
    throw ConfigError("road: lane_width must exceed the vehicle width (2 m)");
  }
  if (lane_count < 1) throw ConfigError("road: lane_count must be >= 1");
  if (!(length > 0.0)) throw ConfigError("road: length must be positive");
  if (kind == Kind::ConstantRadiusCurve) {
    if (!(radius > 0.0)) throw ConfigError("road: curve radius must be positive");
    // Inner road edge must keep a positive radius.
    if (radius - (lane_count - 0.5) * lane_width <= 0.0) {
      throw ConfigError("road: curve radius too small for the lane count");
    }
  }
}

RoadModel RoadModel::straight(double lane_width, int lane_count, double length) {
  return RoadModel(Kind::StraightMultiLane, lane_width, lane_count, 0.0, length);
}

RoadModel RoadModel::curve(double lane_width, int lane_count, double radius, double length) {
  return RoadModel(Kind::ConstantRadiusCurve, lane_width, lane_count, radius, length);
}

void RoadModel::check_station(double s) const {
  if (!(s >= 0.0 && s <= length_)) {
    throw ExtentError("road: station " + std::to_string(s) + " outside [0, " + std::to_string(length_) +
                      "]");
  }
}

double RoadModel::heading(double s) const {
  check_station(s);
  if (kind_ == Kind::StraightMultiLane) return 0.0;
  return s / radius_;
}

double RoadModel::lane_offset(int lane) const {
  if (lane < 0 || lane >= lane_count_) {
    throw ExtentError("road: lane index " + std::to_string(lane) + " out of range");
  }
  return (lane + 0.5) * lane_width_;
}

Point2 RoadModel::lane_center(int lane, double s) const {
  check_station(s);
  return to_world({s, lane_offset(lane)});
}

Point2 RoadModel::to_world(RoadPoint rp) const {
  if (kind_ == Kind::StraightMultiLane) return {rp.s, rp.n};
  const double theta = rp.s / radius_;
  const double rho = radius_ - (rp.n - lane_offset(0));
  const Point2 c = curve_center();
  return {c.x + rho * std::sin(theta), c.y - rho * std::cos(theta)};
}

RoadPoint RoadModel::to_road(Point2 world, double hint_s) const {
  if (kind_ == Kind::StraightMultiLane) return {world.x, world.y};
  const Point2 c = curve_center();
  const Point2 d = world - c;
  const double rho = norm(d);
  double theta = std::atan2(d.x, -d.y);
  const double hint_theta = hint_s / radius_;
  const double two_pi = 2.0 * std::numbers::pi;
  theta += two_pi * std::round((hint_theta - theta) / two_pi);
  return {theta * radius_, lane_offset(0) + radius_ - rho};
}

double RoadModel::station_rate(double n) const {
  if (kind_ == Kind::StraightMultiLane) return 1.0;
  return radius_ / (radius_ - (n - lane_offset(0)));
}

}  // namespace sharedctl
