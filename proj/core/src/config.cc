// Copyright 2026 The Horizon Bench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "horizon/config.h"

#include <fstream>
#include <set>

#include <nlohmann/json.hpp>

namespace horizon {

using nlohmann::json;

namespace {

// Tracks which keys of one JSON object were consumed; unconsumed keys are
// reported as errors with their full path.
class StrictObject {
 public:
  StrictObject(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(path_ + ": expected an object");
  }

  bool Has(const std::string& key) {
    consumed_.insert(key);
    return j_.contains(key);
  }

  const json& At(const std::string& key) {
    consumed_.insert(key);
    if (!j_.contains(key)) throw ConfigError(Path(key) + ": missing required key");
    return j_.at(key);
  }

  template <typename T>
  T Get(const std::string& key, T fallback) {
    consumed_.insert(key);
    if (!j_.contains(key)) return fallback;
    try {
      return j_.at(key).get<T>();
    } catch (const json::exception&) {
      throw ConfigError(Path(key) + ": wrong type");
    }
  }

  template <typename T>
  T Require(const std::string& key) {
    const json& v = At(key);
    try {
      return v.get<T>();
    } catch (const json::exception&) {
      throw ConfigError(Path(key) + ": wrong type");
    }
  }

  std::string Path(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

  void Finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      if (consumed_.find(it.key()) == consumed_.end())
        throw ConfigError("unknown config key: " + Path(it.key()));
    }
  }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> consumed_;
};

ContactParams ParseContact(const json& j, const std::string& path) {
  StrictObject o(j, path);
  ContactParams c;
  c.stiffness = o.Get("stiffness", c.stiffness);
  c.damping = o.Get("damping", c.damping);
  c.friction = o.Get("friction", c.friction);
  c.smoothing_velocity = o.Get("smoothing_velocity", c.smoothing_velocity);
  o.Finish();
  return c;
}

BoxParams ParseBox(const json& j, const std::string& path) {
  StrictObject o(j, path);
  BoxParams b;
  b.mass = o.Get("mass", b.mass);
  b.half_width = o.Get("half_width", b.half_width);
  b.height = o.Get("height", b.height);
  b.friction = o.Get("friction", b.friction);
  b.stiffness = o.Get("stiffness", b.stiffness);
  b.damping = o.Get("damping", b.damping);
  b.start_x = o.Get("start_x", b.start_x);
  o.Finish();
  return b;
}

BipedParams ParseModel(const json& j, const std::string& path) {
  StrictObject o(j, path);
  BipedParams m;
  m.torso_mass = o.Get("torso_mass", m.torso_mass);
  m.torso_length = o.Get("torso_length", m.torso_length);
  m.torso_com = o.Get("torso_com", m.torso_com);
  m.torso_inertia = o.Get("torso_inertia", m.torso_inertia);
  m.thigh_mass = o.Get("thigh_mass", m.thigh_mass);
  m.thigh_length = o.Get("thigh_length", m.thigh_length);
  m.thigh_com = o.Get("thigh_com", m.thigh_com);
  m.thigh_inertia = o.Get("thigh_inertia", m.thigh_inertia);
  m.shank_mass = o.Get("shank_mass", m.shank_mass);
  m.shank_length = o.Get("shank_length", m.shank_length);
  m.shank_com = o.Get("shank_com", m.shank_com);
  m.shank_inertia = o.Get("shank_inertia", m.shank_inertia);
  if (o.Has("hand_offset")) {
    const auto v = o.Require<std::vector<double>>("hand_offset");
    if (v.size() != 2) throw ConfigError(o.Path("hand_offset") + ": expected [x, z]");
    m.hand_offset = Vec2(v[0], v[1]);
  }
  m.foot_radius = o.Get("foot_radius", m.foot_radius);
  m.knee_radius = o.Get("knee_radius", m.knee_radius);
  m.pelvis_radius = o.Get("pelvis_radius", m.pelvis_radius);
  m.head_radius = o.Get("head_radius", m.head_radius);
  m.hand_radius = o.Get("hand_radius", m.hand_radius);
  m.actuator_limit = o.Get("actuator_limit", m.actuator_limit);
  m.joint_damping = o.Get("joint_damping", m.joint_damping);
  m.gravity = o.Get("gravity", m.gravity);
  m.physics_dt = o.Get("physics_dt", m.physics_dt);
  m.control_dt = o.Get("control_dt", m.control_dt);
  if (o.Has("contact")) m.contact = ParseContact(o.At("contact"), o.Path("contact"));
  if (o.Has("box")) m.box = ParseBox(o.At("box"), o.Path("box"));
  o.Finish();
  return m;
}

PlannerConfig ParsePlanner(const json& j, const std::string& path) {
  StrictObject o(j, path);
  PlannerConfig p;
  if (o.Has("kind")) p.kind = PlannerKindFromString(o.Require<std::string>("kind"));
  p.horizon_s = o.Get("horizon_s", p.horizon_s);
  p.iterations = o.Get("iterations", p.iterations);
  p.lambda_init = o.Get("lambda_init", p.lambda_init);
  p.lambda_scale = o.Get("lambda_scale", p.lambda_scale);
  p.lambda_max = o.Get("lambda_max", p.lambda_max);
  p.candidates = o.Get("candidates", p.candidates);
  p.noise_scale = o.Get("noise_scale", p.noise_scale);
  p.knots = o.Get("knots", p.knots);
  o.Finish();
  try {
    p.Validate();
  } catch (const ContractViolation& e) {
    throw ConfigError(path + ": " + e.what());
  }
  return p;
}

json PlannerToJson(const PlannerConfig& p) {
  return json{{"kind", ToString(p.kind)},
              {"horizon_s", p.horizon_s},
              {"iterations", p.iterations},
              {"lambda_init", p.lambda_init},
              {"lambda_scale", p.lambda_scale},
              {"lambda_max", p.lambda_max},
              {"candidates", p.candidates},
              {"noise_scale", p.noise_scale},
              {"knots", p.knots}};
}

json ContactToJson(const ContactParams& c) {
  return json{{"stiffness", c.stiffness},
              {"damping", c.damping},
              {"friction", c.friction},
              {"smoothing_velocity", c.smoothing_velocity}};
}

json BoxToJson(const BoxParams& b) {
  return json{{"mass", b.mass},         {"half_width", b.half_width},
              {"height", b.height},     {"friction", b.friction},
              {"stiffness", b.stiffness}, {"damping", b.damping},
              {"start_x", b.start_x}};
}

json ModelToJson(const BipedParams& m) {
  json j{{"torso_mass", m.torso_mass},       {"torso_length", m.torso_length},
         {"torso_com", m.torso_com},         {"torso_inertia", m.torso_inertia},
         {"thigh_mass", m.thigh_mass},       {"thigh_length", m.thigh_length},
         {"thigh_com", m.thigh_com},         {"thigh_inertia", m.thigh_inertia},
         {"shank_mass", m.shank_mass},       {"shank_length", m.shank_length},
         {"shank_com", m.shank_com},         {"shank_inertia", m.shank_inertia},
         {"hand_offset", {m.hand_offset.x(), m.hand_offset.y()}},
         {"foot_radius", m.foot_radius},     {"knee_radius", m.knee_radius},
         {"pelvis_radius", m.pelvis_radius}, {"head_radius", m.head_radius},
         {"hand_radius", m.hand_radius},     {"actuator_limit", m.actuator_limit},
         {"joint_damping", m.joint_damping}, {"gravity", m.gravity},
         {"physics_dt", m.physics_dt},       {"control_dt", m.control_dt},
         {"contact", ContactToJson(m.contact)}};
  if (m.box) j["box"] = BoxToJson(*m.box);
  return j;
}

std::string RuleToString(TerminationRule r) {
  return r == TerminationRule::kBoxAtTarget ? "box_at_target" : "none";
}
std::string RuleToString(RespawnRule r) {
  return r == RespawnRule::kRespawnOnSuccess ? "respawn_on_success" : "none";
}

TerminationRule TerminationFromString(const std::string& s, const std::string& path) {
  if (s == "none") return TerminationRule::kNone;
  if (s == "box_at_target") return TerminationRule::kBoxAtTarget;
  throw ConfigError(path + ": unknown termination rule '" + s + "'");
}

RespawnRule RespawnFromString(const std::string& s, const std::string& path) {
  if (s == "none") return RespawnRule::kNone;
  if (s == "respawn_on_success") return RespawnRule::kRespawnOnSuccess;
  throw ConfigError(path + ": unknown respawn rule '" + s + "'");
}

}  // namespace

json CostSpecToJson(const CostSpec& spec) {
  json terms = json::array();
  for (const CostTerm& t : spec.terms) {
    terms.push_back(json{{"residual", t.residual},
                         {"norm", ToString(t.norm.kind)},
                         {"p", t.norm.p},
                         {"weight", t.weight}});
  }
  return json{{"name", spec.name}, {"terms", terms}};
}

CostSpec CostSpecFromJson(const json& j, const std::string& key_path) {
  StrictObject o(j, key_path);
  CostSpec spec;
  spec.name = o.Get<std::string>("name", "");
  const json& terms = o.At("terms");
  if (!terms.is_array()) throw ConfigError(key_path + ".terms: expected an array");
  int idx = 0;
  for (const json& tj : terms) {
    StrictObject to(tj, key_path + ".terms[" + std::to_string(idx) + "]");
    CostTerm term;
    term.residual = to.Require<std::string>("residual");
    term.norm.kind = NormKindFromString(to.Require<std::string>("norm"));
    term.norm.p = to.Get("p", term.norm.p);
    term.weight = to.Require<double>("weight");
    to.Finish();
    if (!ResidualSet::IsKnown(term.residual))
      throw ConfigError(key_path + ".terms[" + std::to_string(idx) + "].residual: unknown id '" +
                        term.residual + "'");
    spec.terms.push_back(term);
    ++idx;
  }
  try {
    spec.Validate();
  } catch (const ContractViolation& e) {
    throw ConfigError(key_path + ": " + e.what());
  }
  return spec;
}

ExperimentConfig ParseExperimentConfig(const json& j) {
  StrictObject o(j, "");
  const int version = o.Require<int>("version");
  if (version != kConfigVersion)
    throw ConfigError("version: expected " + std::to_string(kConfigVersion));

  ExperimentConfig c;
  c.task = TaskIdFromString(o.Require<std::string>("task"));
  c.variant = VariantFromString(o.Get<std::string>("variant", "ours"));
  if (c.task == TaskId::kPush) c.respawn = RespawnRule::kRespawnOnSuccess;
  c.episode_length_s = o.Get("episode_length_s", c.episode_length_s);
  c.seeds = o.Get("seeds", c.seeds);
  c.sweep_lengths_s = o.Get("sweep_lengths_s", c.sweep_lengths_s);
  if (o.Has("planner")) c.planner = ParsePlanner(o.At("planner"), "planner");
  if (o.Has("model")) c.model = ParseModel(o.At("model"), "model");

  // Default posture matches MakeTask's canonical crouch.
  c.q_star.resize(4);
  c.q_star << 0.25, -0.5, 0.25, -0.5;

  if (o.Has("task_params")) {
    StrictObject t(o.At("task_params"), "task_params");
    if (t.Has("q_star")) {
      const auto v = t.Require<std::vector<double>>("q_star");
      if (v.size() != 4) throw ConfigError("task_params.q_star: expected 4 joint angles");
      for (int i = 0; i < 4; ++i) c.q_star(i) = v[i];
    }
    c.walk_target_speed = t.Get("walk_target_speed", c.walk_target_speed);
    c.init_noise_amplitude = t.Get("init_noise_amplitude", c.init_noise_amplitude);
    if (t.Has("termination"))
      c.termination =
          TerminationFromString(t.Require<std::string>("termination"), "task_params.termination");
    if (t.Has("respawn"))
      c.respawn = RespawnFromString(t.Require<std::string>("respawn"), "task_params.respawn");
    c.success_threshold = t.Get("success_threshold", c.success_threshold);
    if (t.Has("workspace")) {
      const auto v = t.Require<std::vector<double>>("workspace");
      if (v.size() != 2) throw ConfigError("task_params.workspace: expected [lo, hi]");
      c.workspace_lo = v[0];
      c.workspace_hi = v[1];
    }
    c.box_target_x = t.Get("box_target_x", c.box_target_x);
    c.stand_head_min_frac = t.Get("stand_head_min_frac", c.stand_head_min_frac);
    c.stand_head_margin = t.Get("stand_head_margin", c.stand_head_margin);
    c.push_sigma = t.Get("push_sigma", c.push_sigma);
    c.push_hand_sigma = t.Get("push_hand_sigma", c.push_hand_sigma);
    t.Finish();
  }

  if (o.Has("cost")) {
    c.cost = CostSpecFromJson(o.At("cost"), "cost");
    c.has_cost_override = true;
  }

  if (o.Has("bench")) {
    const json& bench = o.At("bench");
    if (!bench.is_array()) throw ConfigError("bench: expected an array");
    int idx = 0;
    for (const json& cell_j : bench) {
      StrictObject bo(cell_j, "bench[" + std::to_string(idx) + "]");
      BenchCell cell;
      cell.task = TaskIdFromString(bo.Require<std::string>("task"));
      cell.variant = VariantFromString(bo.Get<std::string>("variant", "ours"));
      cell.episode_length_s = bo.Require<double>("episode_length_s");
      cell.planner =
          ParsePlanner(bo.At("planner"), "bench[" + std::to_string(idx) + "].planner");
      bo.Finish();
      c.bench.push_back(cell);
      ++idx;
    }
  }

  o.Finish();
  return c;
}

ExperimentConfig LoadExperimentConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError(path + ": " + e.what());
  }
  return ParseExperimentConfig(j);
}

void ApplyOverride(json* doc, const std::string& assignment) {
  const size_t eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0)
    throw ConfigError("override must look like dotted.key=value: " + assignment);
  const std::string path = assignment.substr(0, eq);
  const std::string value = assignment.substr(eq + 1);

  json parsed;
  try {
    parsed = json::parse(value);
  } catch (const json::exception&) {
    parsed = value;  // bare strings are allowed unquoted
  }

  json* node = doc;
  size_t start = 0;
  while (true) {
    const size_t dot = path.find('.', start);
    const std::string key = path.substr(start, dot - start);
    if (key.empty()) throw ConfigError("empty key segment in override: " + assignment);
    if (dot == std::string::npos) {
      (*node)[key] = parsed;
      break;
    }
    node = &(*node)[key];
    start = dot + 1;
  }
}

json ToJson(const ExperimentConfig& c) {
  json j;
  j["version"] = kConfigVersion;
  j["task"] = ToString(c.task);
  j["variant"] = ToString(c.variant);
  j["episode_length_s"] = c.episode_length_s;
  j["seeds"] = c.seeds;
  j["sweep_lengths_s"] = c.sweep_lengths_s;
  j["planner"] = PlannerToJson(c.planner);
  j["model"] = ModelToJson(c.model);
  j["task_params"] = json{{"q_star", {c.q_star(0), c.q_star(1), c.q_star(2), c.q_star(3)}},
                          {"walk_target_speed", c.walk_target_speed},
                          {"init_noise_amplitude", c.init_noise_amplitude},
                          {"termination", RuleToString(c.termination)},
                          {"respawn", RuleToString(c.respawn)},
                          {"success_threshold", c.success_threshold},
                          {"workspace", {c.workspace_lo, c.workspace_hi}},
                          {"box_target_x", c.box_target_x},
                          {"stand_head_min_frac", c.stand_head_min_frac},
                          {"stand_head_margin", c.stand_head_margin},
                          {"push_sigma", c.push_sigma},
                          {"push_hand_sigma", c.push_hand_sigma}};
  const CostSpec cost = c.has_cost_override ? c.cost : DefaultCostSpec(c.task, c.variant);
  j["cost"] = CostSpecToJson(cost);
  if (!c.bench.empty()) {
    j["bench"] = json::array();
    for (const BenchCell& cell : c.bench) {
      j["bench"].push_back(json{{"task", ToString(cell.task)},
                                {"variant", ToString(cell.variant)},
                                {"episode_length_s", cell.episode_length_s},
                                {"planner", PlannerToJson(cell.planner)}});
    }
  }
  return j;
}

namespace {

TaskSpec BuildTaskImpl(const ExperimentConfig& c, TaskId task, CostVariant variant,
                       double episode_length_s) {
  TaskSpec spec = MakeTask(task, variant, c.model);
  spec.episode_length_s = episode_length_s;
  spec.termination = c.termination;
  spec.respawn = c.respawn;
  spec.success_threshold = c.success_threshold;
  spec.workspace_lo = c.workspace_lo;
  spec.workspace_hi = c.workspace_hi;
  spec.init_noise_amplitude = c.init_noise_amplitude;
  spec.walk_target_speed = task == TaskId::kWalk ? c.walk_target_speed : 0.0;
  spec.box_target_x = c.box_target_x;
  spec.stand_head_min_frac = c.stand_head_min_frac;
  spec.stand_head_margin = c.stand_head_margin;
  spec.push_sigma = c.push_sigma;
  spec.push_hand_sigma = c.push_hand_sigma;

  // Calibrate the residual targets for the configured posture.
  spec.q_star = c.q_star;
  const State canon = CanonicalState(spec);
  spec.target_head_height = GetSitePose(spec.model, canon, spec.head_site).position.y();
  spec.target_pelvis_feet_gap =
      GetSitePose(spec.model, canon, spec.pelvis_site).position.y() -
      0.5 * (GetSitePose(spec.model, canon, spec.left_foot_site).position.y() +
             GetSitePose(spec.model, canon, spec.right_foot_site).position.y());

  if (c.has_cost_override) {
    spec.cost = c.cost;
  } else {
    spec.cost = DefaultCostSpec(task, variant);
  }
  spec.Validate();
  return spec;
}

}  // namespace

TaskSpec BuildTask(const ExperimentConfig& c) {
  return BuildTaskImpl(c, c.task, c.variant, c.episode_length_s);
}

TaskSpec BuildBenchTask(const ExperimentConfig& c, const BenchCell& cell) {
  ExperimentConfig cell_config = c;
  cell_config.has_cost_override = false;  // bench cells run the default cost sets
  cell_config.termination = TerminationRule::kNone;
  cell_config.respawn =
      cell.task == TaskId::kPush ? RespawnRule::kRespawnOnSuccess : RespawnRule::kNone;
  return BuildTaskImpl(cell_config, cell.task, cell.variant, cell.episode_length_s);
}

}  // namespace horizon
