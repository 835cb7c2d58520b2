// Copyright 2026 The resilient-te Authors
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

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "rte/harness.h"

namespace rte {
namespace {

using nlohmann::json;

template <typename T>
T get(const json& j, const char* key) {
  if (!j.contains(key)) throw Error(ErrorCode::kParse, std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("field '") + key + "': " + e.what());
  }
}

template <typename T>
std::optional<T> get_opt(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return get<T>(j, key);
}

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
  return get_opt<T>(j, key).value_or(std::move(fallback));
}

const json& array_field(const json& doc, const char* key) {
  static const json kEmpty = json::array();
  if (!doc.contains(key)) return kEmpty;
  const json& a = doc.at(key);
  if (!a.is_array()) throw Error(ErrorCode::kParse, std::string("'") + key + "' must be an array");
  return a;
}

json condition_json(const Condition& c) {
  return {{"id", c.id}, {"alive", c.alive_links}, {"dead", c.dead_links}};
}

Condition condition_from(const json& j) {
  Condition c;
  c.id = get<std::string>(j, "id");
  c.alive_links = get_or<std::vector<std::string>>(j, "alive", {});
  c.dead_links = get_or<std::vector<std::string>>(j, "dead", {});
  return c;
}

json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kParse, e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kInvalidArgument, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

NetworkInstance instance_from_json(const std::string& text) {
  const json doc = parse_text(text);
  if (!doc.is_object()) throw Error(ErrorCode::kParse, "instance must be a JSON object");
  const std::string schema = get_or<std::string>(doc, "schema", "");
  if (schema != kInstanceSchema) {
    throw Error(ErrorCode::kParse, "unsupported schema '" + schema + "'");
  }
  NetworkInstance in;
  in.name = get_or<std::string>(doc, "name", "");
  in.nodes = get<std::vector<std::string>>(doc, "nodes");
  for (const json& j : array_field(doc, "links")) {
    Link l;
    l.id = get<std::string>(j, "id");
    l.u = get<std::string>(j, "u");
    l.v = get<std::string>(j, "v");
    l.capacity = get<double>(j, "capacity");
    l.fail_prob = get_opt<double>(j, "fail_prob");
    in.links.push_back(std::move(l));
  }
  for (const json& j : array_field(doc, "demands")) {
    FlowDemand f;
    f.flow_id = get<std::string>(j, "id");
    f.src = get<std::string>(j, "src");
    f.dst = get<std::string>(j, "dst");
    f.demand = get<double>(j, "demand");
    f.loss_threshold = get_opt<double>(j, "loss_threshold");
    f.beta = get_opt<double>(j, "beta");
    in.demands.push_back(std::move(f));
  }
  for (const json& j : array_field(doc, "tunnels")) {
    in.tunnels.push_back({get<std::string>(j, "id"), get<std::string>(j, "src"),
                          get<std::string>(j, "dst"),
                          get<std::vector<std::string>>(j, "path")});
  }
  for (const json& j : array_field(doc, "sequences")) {
    in.sequences.push_back({get<std::string>(j, "id"), get<std::string>(j, "src"),
                            get<std::string>(j, "dst"),
                            get<std::vector<std::string>>(j, "hops"),
                            get_or<std::string>(j, "condition", "")});
  }
  for (const json& j : array_field(doc, "conditions")) in.conditions.push_back(condition_from(j));
  for (const json& j : array_field(doc, "scenarios")) {
    Scenario s;
    s.failed_links = get<std::vector<std::string>>(j, "failed");
    s.prob = get_opt<double>(j, "prob");
    in.scenarios.push_back(std::move(s));
  }
  in.beta = get_opt<double>(doc, "beta");
  in.scenario_cutoff = get_opt<double>(doc, "scenario_cutoff");
  return in;
}

std::string instance_to_json(const NetworkInstance& in) {
  json doc;
  doc["schema"] = kInstanceSchema;
  doc["name"] = in.name;
  doc["nodes"] = in.nodes;
  doc["links"] = json::array();
  for (const Link& l : in.links) {
    json j = {{"id", l.id}, {"u", l.u}, {"v", l.v}, {"capacity", l.capacity}};
    if (l.fail_prob) j["fail_prob"] = *l.fail_prob;
    doc["links"].push_back(std::move(j));
  }
  doc["demands"] = json::array();
  for (const FlowDemand& f : in.demands) {
    json j = {{"id", f.flow_id}, {"src", f.src}, {"dst", f.dst}, {"demand", f.demand}};
    if (f.loss_threshold) j["loss_threshold"] = *f.loss_threshold;
    if (f.beta) j["beta"] = *f.beta;
    doc["demands"].push_back(std::move(j));
  }
  doc["tunnels"] = json::array();
  for (const Tunnel& t : in.tunnels) {
    doc["tunnels"].push_back({{"id", t.id}, {"src", t.src}, {"dst", t.dst}, {"path", t.path}});
  }
  doc["sequences"] = json::array();
  for (const LogicalSequence& q : in.sequences) {
    json j = {{"id", q.id}, {"src", q.src}, {"dst", q.dst}, {"hops", q.hops}};
    if (!q.condition.empty()) j["condition"] = q.condition;
    doc["sequences"].push_back(std::move(j));
  }
  doc["conditions"] = json::array();
  for (const Condition& c : in.conditions) doc["conditions"].push_back(condition_json(c));
  doc["scenarios"] = json::array();
  for (const Scenario& s : in.scenarios) {
    json j = {{"failed", s.failed_links}};
    if (s.prob) j["prob"] = *s.prob;
    doc["scenarios"].push_back(std::move(j));
  }
  if (in.beta) doc["beta"] = *in.beta;
  if (in.scenario_cutoff) doc["scenario_cutoff"] = *in.scenario_cutoff;
  return doc.dump(2) + "\n";
}

NetworkInstance load_instance(const std::string& path) {
  return instance_from_json(read_file(path));
}

void save_instance(const std::string& path, const NetworkInstance& instance) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kInvalidArgument, "cannot write " + path);
  out << instance_to_json(instance);
}

std::string plan_to_json(const Network& net, const ReservationPlan& plan) {
  json doc;
  doc["schema"] = kPlanSchema;
  doc["instance"] = net.instance().name;
  doc["model"] = model_name(plan.model);
  doc["mode"] = mode_name(plan.mode);
  doc["objective"] = objective_name(plan.objective);
  doc["k"] = plan.failure.k;
  if (plan.failure.srlg()) {
    doc["k_groups"] = plan.failure.k_groups;
    doc["srlg_groups"] = json::array();
    for (const Condition& c : plan.failure.srlg_groups) {
      doc["srlg_groups"].push_back(condition_json(c));
    }
  }
  doc["objective_value"] = plan.objective_value;
  doc["tunnels"] = json::object();
  for (int l = 0; l < net.num_tunnels() && l < static_cast<int>(plan.tunnel_res.size()); ++l) {
    doc["tunnels"][net.instance().tunnels[l].id] = plan.tunnel_res[l];
  }
  doc["sequences"] = json::object();
  for (int q = 0; q < net.num_sequences() && q < static_cast<int>(plan.sequence_res.size());
       ++q) {
    doc["sequences"][net.instance().sequences[q].id] = plan.sequence_res[q];
  }
  doc["scale"] = json::array();
  for (const auto& [p, z] : plan.z) {
    doc["scale"].push_back(
        {{"src", net.node_id(p.src)}, {"dst", net.node_id(p.dst)}, {"value", z}});
  }
  return doc.dump(2) + "\n";
}

ReservationPlan plan_from_json(const Network& net, const std::string& text) {
  const json doc = parse_text(text);
  if (!doc.is_object() || get_or<std::string>(doc, "schema", "") != kPlanSchema) {
    throw Error(ErrorCode::kParse, std::string("plan must carry schema ") + kPlanSchema);
  }
  ReservationPlan plan;
  try {
    plan.model = parse_model(get<std::string>(doc, "model"));
    plan.mode = parse_mode(get_or<std::string>(doc, "mode", "dual"));
    plan.objective = parse_objective(get<std::string>(doc, "objective"));
  } catch (const Error& e) {
    throw Error(ErrorCode::kParse, e.what());
  }
  plan.failure.k = get<int>(doc, "k");
  plan.failure.k_groups = get_or<int>(doc, "k_groups", 0);
  for (const json& j : array_field(doc, "srlg_groups")) {
    plan.failure.srlg_groups.push_back(condition_from(j));
  }
  plan.objective_value = get_or<double>(doc, "objective_value", 0.0);
  plan.tunnel_res.assign(net.num_tunnels(), 0.0);
  plan.sequence_res.assign(net.num_sequences(), 0.0);
  if (doc.contains("tunnels")) {
    for (const auto& [id, v] : doc.at("tunnels").items()) {
      plan.tunnel_res[net.tunnel(id)] = v.get<double>();
    }
  }
  if (doc.contains("sequences")) {
    for (const auto& [id, v] : doc.at("sequences").items()) {
      plan.sequence_res[net.sequence(id)] = v.get<double>();
    }
  }
  for (const json& j : array_field(doc, "scale")) {
    const NodePair p{net.node(get<std::string>(j, "src")), net.node(get<std::string>(j, "dst"))};
    plan.z[p] = get<double>(j, "value");
  }
  return plan;
}

}  // namespace rte
