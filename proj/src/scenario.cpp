#include "sharedctl/scenario.hpp"

#include <yaml-cpp/yaml.h>

#include <cmath>
#include <set>
#include <sstream>

#include "sharedctl/errors.hpp"

namespace sharedctl {

std::string to_string(Mode mode) { return mode == Mode::Shared ? "shared" : "automation-only"; }

std::optional<Mode> parse_mode(const std::string& s) {
  if (s == "shared") return Mode::Shared;
  if (s == "automation-only") return Mode::AutomationOnly;
  return std::nullopt;
}

namespace {

// Reads one mapping, rejecting keys it was not asked about.
class Section {
 public:
  Section(const YAML::Node& node, std::string path)
      : node_(node), present_(node.IsDefined() && !node.IsNull()), path_(std::move(path)) {
    if (present_ && !node_.IsMap()) throw ConfigError(path_ + ": expected a mapping");
  }

  ~Section() noexcept(false) {
    if (std::uncaught_exceptions() > 0 || !present_) return;
    for (const auto& kv : node_) {
      const std::string key = kv.first.as<std::string>();
      if (!used_.count(key)) throw ConfigError("unknown key '" + path(key) + "'");
    }
  }

  template <typename T>
  void get(const std::string& key, T& out) {
    used_.insert(key);
    if (!present_ || !node_[key]) return;
    try {
      out = node_[key].as<T>();
    } catch (const YAML::Exception&) {
      throw ConfigError(path(key) + ": wrong type");
    }
  }

  YAML::Node child(const std::string& key) {
    used_.insert(key);
    if (!present_) return YAML::Node();
    return node_[key];
  }

  std::string path(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

 private:
  YAML::Node node_;
  bool present_;
  std::string path_;
  std::set<std::string> used_;
};

std::vector<MembershipFn> partition_from_peaks(const std::vector<double>& peaks, const std::string& where) {
  if (peaks.size() < 2) throw ConfigError(where + ": need at least two peaks");
  std::vector<MembershipFn> sets;
  for (std::size_t k = 0; k < peaks.size(); ++k) {
    if (k > 0 && !(peaks[k] > peaks[k - 1])) throw ConfigError(where + ": peaks must increase");
    const double left = k == 0 ? peaks[0] - (peaks[1] - peaks[0]) : peaks[k - 1];
    const double right = k + 1 == peaks.size() ? peaks[k] + (peaks[k] - peaks[k - 1]) : peaks[k + 1];
    sets.push_back({left, peaks[k], right, k == 0, k + 1 == peaks.size()});
  }
  return sets;
}

void parse_weights(Section& s, const std::string& key, TaskWeights& w) {
  std::vector<double> v(w.w.begin(), w.w.end());
  s.get(key, v);
  if (v.size() != 3) throw ConfigError(s.path(key) + ": expected [w_f, w_l, w_p]");
  w.w = {v[0], v[1], v[2]};
}

}  // namespace

int ScenarioConfig::steps() const { return static_cast<int>(std::llround(duration / dt)); }

RoadModel ScenarioConfig::make_road() const {
  if (road.kind == RoadModel::Kind::StraightMultiLane) {
    return RoadModel::straight(road.lane_width, road.lane_count, road.length);
  }
  return RoadModel::curve(road.lane_width, road.lane_count, road.radius, road.length);
}

void ScenarioConfig::validate() const {
  if (!(dt > 0.0)) throw ConfigError("dt must be positive");
  if (!(duration >= 0.0)) throw ConfigError("duration must be non-negative");
  if (std::abs(duration / dt - steps()) > 1e-9) throw ConfigError("duration must be an integral number of steps");
  if (std::abs(mpc.dt - dt) > 1e-15) throw ConfigError("mpc.dt must equal dt (single-rate loop)");
  vehicle.validate();
  if (!(road.lane_width > vehicle.width)) throw ConfigError("road.lane_width must exceed vehicle.width");
  const RoadModel rm = make_road();
  if (ego.lane < 0 || ego.lane >= road.lane_count) throw ConfigError("ego.lane out of range");
  if (reference.lane < 0 || reference.lane >= road.lane_count) throw ConfigError("reference.lane out of range");
  if (!(ego.speed > vehicle.vx_floor)) throw ConfigError("ego.speed must exceed the model speed floor");
  if (!(ego.station >= 0.0 && ego.station <= road.length)) throw ConfigError("ego.station outside the road");
  std::set<int> roles;
  for (const NeighborSpec& n : neighbors) {
    if (!roles.insert(static_cast<int>(n.role)).second) throw ConfigError("neighbors: duplicate role");
    if (n.lane < 0 || n.lane >= road.lane_count) throw ConfigError("neighbors: lane out of range");
    if (!(n.speed >= 0.0)) throw ConfigError("neighbors: speed must be non-negative");
    if (!(n.gap >= 0.0)) throw ConfigError("neighbors: gap must be non-negative");
  }
  prediction.validate();
  apf.validate();
  dpf.validate();
  lane_keep_weights.validate();
  lane_change_weights.validate();
  fuzzy_sets.validate();
  rules.validate(fuzzy_sets);
  allocation.validate();
  mpc.validate();
  driver.validate();
  corridor.validate();
  fault.validate();
  (void)rm;
}

YAML::Node load_yaml_file(const std::string& path) {
  try {
    return YAML::LoadFile(path);
  } catch (const YAML::Exception& e) {
    throw ConfigError("cannot read scenario '" + path + "': " + e.what());
  }
}

ScenarioConfig parse_scenario(const YAML::Node& root) {
  ScenarioConfig cfg;
  if (!root || !root.IsMap()) throw ConfigError("scenario: top level must be a mapping");
  {
    Section top(root, "");
    top.get("name", cfg.name);
    top.get("duration", cfg.duration);
    top.get("dt", cfg.dt);
    std::string mode = to_string(cfg.mode);
    top.get("mode", mode);
    if (auto m = parse_mode(mode)) {
      cfg.mode = *m;
    } else {
      throw ConfigError("mode: expected 'shared' or 'automation-only'");
    }
    std::string task = "lane_keep";
    top.get("task", task);
    if (task == "lane_keep") {
      cfg.task = Task::LaneKeep;
    } else if (task == "lane_change") {
      cfg.task = Task::LaneChange;
    } else {
      throw ConfigError("task: expected 'lane_keep' or 'lane_change'");
    }

    {
      Section s(top.child("road"), "road");
      std::string kind = "straight";
      s.get("kind", kind);
      if (kind == "straight") {
        cfg.road.kind = RoadModel::Kind::StraightMultiLane;
      } else if (kind == "curve") {
        cfg.road.kind = RoadModel::Kind::ConstantRadiusCurve;
      } else {
        throw ConfigError("road.kind: expected 'straight' or 'curve'");
      }
      s.get("lane_width", cfg.road.lane_width);
      s.get("lane_count", cfg.road.lane_count);
      s.get("radius", cfg.road.radius);
      s.get("length", cfg.road.length);
    }
    {
      Section s(top.child("ego"), "ego");
      s.get("lane", cfg.ego.lane);
      s.get("station", cfg.ego.station);
      s.get("speed", cfg.ego.speed);
    }
    if (YAML::Node list = top.child("neighbors")) {
      if (!list.IsSequence()) throw ConfigError("neighbors: expected a list");
      for (std::size_t i = 0; i < list.size(); ++i) {
        Section s(list[i], "neighbors[" + std::to_string(i) + "]");
        NeighborSpec n;
        std::string role;
        s.get("role", role);
        const auto r = parse_role(role);
        if (!r) throw ConfigError("neighbors: role must be preceding, leader or follower");
        n.role = *r;
        s.get("lane", n.lane);
        s.get("gap", n.gap);
        s.get("speed", n.speed);
        cfg.neighbors.push_back(n);
      }
    }
    {
      Section s(top.child("reference"), "reference");
      s.get("lane", cfg.reference.lane);
      double speed = -1.0;
      s.get("speed", speed);
      if (speed >= 0.0) cfg.reference.speed = speed;
    }
    {
      Section s(top.child("fault"), "fault");
      std::string channel = "steering";
      s.get("channel", channel);
      if (channel == "steering") {
        cfg.fault.channel = FaultChannel::Steering;
      } else if (channel == "acceleration") {
        cfg.fault.channel = FaultChannel::Acceleration;
      } else {
        throw ConfigError("fault.channel: expected 'steering' or 'acceleration'");
      }
      s.get("onset", cfg.fault.onset);
      s.get("ramp", cfg.fault.ramp);
      s.get("plateau", cfg.fault.plateau);
      s.get("scale", cfg.fault.scale);
    }
    {
      Section s(top.child("vehicle"), "vehicle");
      s.get("lf", cfg.vehicle.lf);
      s.get("lr", cfg.vehicle.lr);
      s.get("mass", cfg.vehicle.mass);
      s.get("iz", cfg.vehicle.iz);
      s.get("c_alpha_f", cfg.vehicle.c_alpha_f);
      s.get("c_alpha_r", cfg.vehicle.c_alpha_r);
      s.get("width", cfg.vehicle.width);
      s.get("length", cfg.vehicle.length);
      s.get("vx_floor", cfg.vehicle.vx_floor);
    }
    {
      Section s(top.child("prediction"), "prediction");
      s.get("horizon", cfg.prediction.horizon);
      s.get("yaw_rate_eps", cfg.prediction.yaw_rate_eps);
    }
    {
      Section s(top.child("apf"), "apf");
      s.get("alpha_f", cfg.apf.alpha_f);
      s.get("sigma_y", cfg.apf.sigma_y);
      s.get("d_c", cfg.apf.d_c);
      s.get("v_w", cfg.apf.v_w);
    }
    {
      Section s(top.child("dpf"), "dpf");
      s.get("alpha", cfg.dpf.alpha);
      s.get("a_f", cfg.dpf.a_f);
      s.get("sigma_x", cfg.dpf.sigma_x);
      s.get("b", cfg.dpf.b);
      s.get("a_max", cfg.dpf.a_max);
      s.get("t_r", cfg.dpf.t_r);
      s.get("t_i", cfg.dpf.t_i);
      s.get("d_o", cfg.dpf.d_o);
    }
    {
      Section s(top.child("task_weights"), "task_weights");
      parse_weights(s, "lane_keep", cfg.lane_keep_weights);
      parse_weights(s, "lane_change", cfg.lane_change_weights);
    }
    {
      Section s(top.child("fis"), "fis");
      s.get("resolution", cfg.fuzzy_sets.resolution);
      std::vector<double> peaks;
      s.get("lateral_peaks", peaks);
      if (!peaks.empty()) cfg.fuzzy_sets.lateral = partition_from_peaks(peaks, "fis.lateral_peaks");
      peaks.clear();
      s.get("longitudinal_peaks", peaks);
      if (!peaks.empty()) cfg.fuzzy_sets.longitudinal = partition_from_peaks(peaks, "fis.longitudinal_peaks");
      peaks.clear();
      s.get("output_peaks", peaks);
      if (!peaks.empty()) cfg.fuzzy_sets.output = partition_from_peaks(peaks, "fis.output_peaks");
      s.get("rules", cfg.rules.table);
    }
    {
      Section s(top.child("allocation"), "allocation");
      s.get("epsilon", cfg.allocation.epsilon);
      s.get("tolerance", cfg.allocation.tolerance);
    }
    {
      Section s(top.child("mpc"), "mpc");
      s.get("hp", cfg.mpc.hp);
      s.get("hc", cfg.mpc.hc);
      {
        Section w(s.child("weights"), "mpc.weights");
        w.get("potential", cfg.mpc.weights.potential);
        w.get("lateral", cfg.mpc.weights.lateral);
        w.get("speed", cfg.mpc.weights.speed);
        w.get("yaw_accel", cfg.mpc.weights.yaw_accel);
        w.get("accel", cfg.mpc.weights.accel);
        w.get("steer", cfg.mpc.weights.steer);
        w.get("corridor", cfg.mpc.weights.corridor);
      }
      {
        Section b(s.child("bounds"), "mpc.bounds");
        b.get("a_min", cfg.mpc.bounds.min.a);
        b.get("a_max", cfg.mpc.bounds.max.a);
        b.get("delta_min", cfg.mpc.bounds.min.delta);
        b.get("delta_max", cfg.mpc.bounds.max.delta);
      }
      {
        Section v(s.child("solver"), "mpc.solver");
        v.get("max_iterations", cfg.mpc.solver.max_iterations);
        v.get("gradient_tolerance", cfg.mpc.solver.gradient_tolerance);
        v.get("fd_step", cfg.mpc.solver.fd_step);
        v.get("max_backtracks", cfg.mpc.solver.max_backtracks);
      }
    }
    {
      Section s(top.child("driver"), "driver");
      s.get("k_h", cfg.driver.k_h);
      s.get("t_h", cfg.driver.t_h);
    }
    {
      Section s(top.child("safe_area"), "safe_area");
      s.get("behind", cfg.corridor.behind);
      s.get("ahead", cfg.corridor.ahead);
      s.get("lane_clip", cfg.corridor.lane_clip);
      s.get("clip_lanes", cfg.corridor.clip_lanes);
      s.get("final_gap", cfg.corridor.final_gap);
    }
  }
  cfg.mpc.dt = cfg.dt;
  cfg.validate();
  return cfg;
}

ScenarioConfig load_scenario(const std::string& path) { return parse_scenario(load_yaml_file(path)); }

void set_yaml_path(YAML::Node& root, const std::string& dotted, const std::string& value) {
  std::vector<std::string> keys;
  std::stringstream ss(dotted);
  for (std::string part; std::getline(ss, part, '.');) keys.push_back(part);
  if (keys.empty()) throw ConfigError("sweep: empty parameter path");
  // yaml-cpp nodes are handles; walk with fresh handles to avoid rebinding.
  std::vector<YAML::Node> chain{root};
  for (std::size_t i = 0; i + 1 < keys.size(); ++i) {
    YAML::Node next = chain.back()[keys[i]];
    if (next.IsDefined() && !next.IsNull() && !next.IsMap()) {
      throw ConfigError("sweep: '" + keys[i] + "' on path " + dotted + " is not a section");
    }
    chain.push_back(next);
  }
  chain.back()[keys.back()] = YAML::Load(value);
}

}  // namespace sharedctl
