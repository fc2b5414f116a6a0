#include "sharedctl/io.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "json.hpp"
#include "sharedctl/errors.hpp"

namespace sharedctl {

using nlohmann::json;

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

const std::vector<std::string>& trace_columns() {
  static const std::vector<std::string> cols = {
      "k", "t", "x", "y", "psi", "vx", "vy", "r", "s", "n",
      "follower_s", "follower_n", "follower_v", "leader_s", "leader_n", "leader_v",
      "preceding_s", "preceding_n", "preceding_v",
      "a_a_des", "delta_a_des", "a_a_f", "delta_a_f", "a_a_act", "delta_a_act",
      "a_h_des", "delta_h_des", "a_h_act", "delta_h_act", "a", "delta",
      "pred_s", "pred_n", "r_y", "r_x", "alpha", "branch_a", "branch_delta",
      "corridor_violation", "gap_preceding", "automation_converged", "driver_converged", "corridor_fallback"};
  return cols;
}

void write_trace_csv(std::ostream& os, const std::vector<TraceRecord>& trace) {
  const auto& cols = trace_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
  os << '\n';
  const double nan = std::nan("");
  for (const TraceRecord& r : trace) {
    std::vector<double> v = {static_cast<double>(r.k), r.t, r.ego.x, r.ego.y, r.ego.psi, r.ego.vx, r.ego.vy,
                             r.ego.r, r.ego_road.s, r.ego_road.n};
    for (const auto& nb : r.neighbors) {
      v.push_back(nb ? nb->s : nan);
      v.push_back(nb ? nb->n : nan);
      v.push_back(nb ? nb->v : nan);
    }
    for (const ControlVector& u : {r.u_a_des, r.u_a_f, r.u_a_act, r.u_h_des, r.u_h_act, r.u}) {
      v.push_back(u.a);
      v.push_back(u.delta);
    }
    v.insert(v.end(), {r.predicted.s, r.predicted.n, r.r_y, r.r_x, r.alpha, static_cast<double>(r.branch[0]),
                       static_cast<double>(r.branch[1]), r.corridor_violation, r.gap_preceding,
                       r.automation_converged ? 1.0 : 0.0, r.driver_converged ? 1.0 : 0.0,
                       r.corridor_fallback ? 1.0 : 0.0});
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << format_number(v[i]);
    os << '\n';
  }
}

namespace {

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json points(const Polyline& pl) {
  json a = json::array();
  for (const Point2& p : pl) a.push_back({p.x, p.y});
  return a;
}

}  // namespace

void write_summary_json(std::ostream& os, const Summary& s) {
  json j;
  j["name"] = s.name;
  j["mode"] = to_string(s.mode);
  j["steps"] = s.steps;
  j["duration"] = s.duration;
  j["min_gap_preceding"] = finite_or_null(s.min_gap_preceding);
  j["max_lateral_deviation"] = s.max_lateral_deviation;
  j["max_corridor_violation"] = s.max_corridor_violation;
  j["collision"] = s.collision;
  j["max_r_y"] = s.max_r_y;
  j["max_r_x"] = s.max_r_x;
  j["min_alpha"] = s.min_alpha;
  j["max_alpha"] = s.max_alpha;
  j["automation_nonconverged"] = s.automation_nonconverged;
  j["driver_nonconverged"] = s.driver_nonconverged;
  j["corridor_fallbacks"] = s.corridor_fallbacks;
  j["aborted"] = s.aborted;
  j["abort_reason"] = s.abort_reason;
  os << j.dump(2) << '\n';
}

void write_geometry_line(std::ostream& os, int k, const SafeArea& area) {
  const Triangulation& tri = area.triangulation;
  json j;
  j["k"] = k;
  j["vertices"] = points(tri.vertices);
  json tris = json::array();
  for (const auto& t : tri.triangles) tris.push_back({t[0], t[1], t[2]});
  j["triangles"] = std::move(tris);
  json cons = json::array();
  for (const auto& e : tri.constrained_edges) cons.push_back({e[0], e[1]});
  j["constrained_edges"] = std::move(cons);
  j["channel"] = area.channel;
  j["spine"] = points(area.spine);
  j["upper_boundary"] = points(area.upper_boundary);
  j["lower_boundary"] = points(area.lower_boundary);
  j["start"] = {area.start.x, area.start.y};
  j["final"] = {area.final_point.x, area.final_point.y};
  os << j.dump() << '\n';
}

namespace {

template <typename T>
void read_opt(const json& obj, const char* key, T& out) {
  if (obj.contains(key)) out = obj.at(key).get<T>();
}

void reject_unknown(const json& obj, std::initializer_list<const char*> keys, const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char* k : keys) ok = ok || it.key() == k;
    if (!ok) throw ConfigError(where + ": unknown key '" + it.key() + "'");
  }
}

}  // namespace

// Request layout:
// { "lateral": {"distance": r_b},
//   "ego": {"x": s, "v": v},
//   "neighbors": [{"role": "preceding", "x": s, "v": v}, ...],
//   "task": "lane_keep" | "lane_change" | "weights": [w_f, w_l, w_p],
//   "apf": {...}, "dpf": {...} }
std::string evaluate_risk_json(const std::string& request) {
  json req;
  try {
    req = json::parse(request);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("risk-eval: invalid JSON: ") + e.what());
  }
  try {
    if (!req.is_object()) throw ConfigError("risk-eval: expected an object");
    reject_unknown(req, {"lateral", "ego", "neighbors", "task", "weights", "apf", "dpf"}, "risk-eval");
    ApfParams apf;
    DpfParams dpf;
    if (req.contains("apf")) {
      const json& a = req.at("apf");
      reject_unknown(a, {"alpha_f", "sigma_y", "d_c", "v_w"}, "apf");
      read_opt(a, "alpha_f", apf.alpha_f);
      read_opt(a, "sigma_y", apf.sigma_y);
      read_opt(a, "d_c", apf.d_c);
      read_opt(a, "v_w", apf.v_w);
    }
    if (req.contains("dpf")) {
      const json& d = req.at("dpf");
      reject_unknown(d, {"alpha", "a_f", "sigma_x", "b", "a_max", "t_r", "t_i", "d_o"}, "dpf");
      read_opt(d, "alpha", dpf.alpha);
      read_opt(d, "a_f", dpf.a_f);
      read_opt(d, "sigma_x", dpf.sigma_x);
      read_opt(d, "b", dpf.b);
      read_opt(d, "a_max", dpf.a_max);
      read_opt(d, "t_r", dpf.t_r);
      read_opt(d, "t_i", dpf.t_i);
      read_opt(d, "d_o", dpf.d_o);
    }
    apf.validate();
    dpf.validate();
    TaskWeights w = TaskWeights::lane_keep();
    const std::string task = req.value("task", std::string("lane_keep"));
    if (task == "lane_change") {
      w = TaskWeights::lane_change();
    } else if (task != "lane_keep") {
      throw ConfigError("risk-eval: task must be lane_keep or lane_change");
    }
    if (req.contains("weights")) {
      const auto v = req.at("weights").get<std::vector<double>>();
      if (v.size() != 3) throw ConfigError("risk-eval: weights needs three entries");
      w.w = {v[0], v[1], v[2]};
    }
    w.validate();

    RiskReport report;
    if (req.contains("lateral")) {
      const json& l = req.at("lateral");
      reject_unknown(l, {"distance"}, "lateral");
      const double rb = l.at("distance").get<double>();
      report.lateral.distance = rb;
      report.lateral.potential = boundary_potential(rb, apf);
      report.lateral.r_y = std::max(0.0, report.lateral.potential / apf.alpha_f);
    }
    LongitudinalKinematics ego{};
    if (req.contains("ego")) {
      const json& e = req.at("ego");
      reject_unknown(e, {"x", "v"}, "ego");
      ego = {e.at("x").get<double>(), e.at("v").get<double>()};
    }
    std::array<std::optional<LongitudinalKinematics>, 3> others{};
    if (req.contains("neighbors")) {
      for (const json& n : req.at("neighbors")) {
        reject_unknown(n, {"role", "x", "v"}, "neighbors");
        const auto role = parse_role(n.at("role").get<std::string>());
        if (!role) throw ConfigError("risk-eval: unknown neighbor role");
        others[static_cast<int>(*role)] = LongitudinalKinematics{n.at("x").get<double>(), n.at("v").get<double>()};
      }
    }
    report.longitudinal = longitudinal_risk(ego, others, w, dpf);

    json out;
    out["r_y"] = report.r_y();
    out["r_x"] = report.r_x();
    out["lateral"] = {{"distance", report.lateral.distance},
                      {"potential", report.lateral.potential},
                      {"r_y", report.lateral.r_y}};
    json pairs = json::array();
    for (const NeighborRisk& p : report.longitudinal.pairs) {
      if (!p.present) continue;
      pairs.push_back({{"role", std::string(role_name(p.role))},
                       {"closing", p.closing},
                       {"gap", p.gap},
                       {"safe_distance", p.safe_distance},
                       {"potential", p.potential},
                       {"log_potential", finite_or_null(p.log_potential)},
                       {"ratio", p.ratio}});
    }
    out["pairs"] = std::move(pairs);
    return out.dump(2);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("risk-eval: malformed request: ") + e.what());
  }
}

}  // namespace sharedctl
