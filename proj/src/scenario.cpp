/*
 * Copyright 2026 pamdi-sim authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include "pamdi/scenario.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace pamdi {

using nlohmann::json;
namespace fs = std::filesystem;

const char* algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::PaMdi: return "PA-MDI";
    case Algorithm::ArMdi: return "AR-MDI";
    case Algorithm::MsMdi: return "MS-MDI";
    case Algorithm::Local: return "Local";
  }
  return "?";
}

std::optional<Algorithm> algorithm_from_name(const std::string& name) {
  if (name == "PA-MDI") return Algorithm::PaMdi;
  if (name == "AR-MDI") return Algorithm::ArMdi;
  if (name == "MS-MDI") return Algorithm::MsMdi;
  if (name == "Local") return Algorithm::Local;
  return std::nullopt;
}

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw std::runtime_error("scenario: " + path + ": " + what);
}

void expect_keys(const json& obj, const std::string& path, const std::set<std::string>& allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!allowed.count(it.key())) fail(path + "." + it.key(), "unknown key");
  }
}

double get_num(const json& obj, const std::string& path, const char* key, bool required,
               double def = 0.0) {
  if (!obj.contains(key)) {
    if (required) fail(path + "." + key, "missing");
    return def;
  }
  if (!obj[key].is_number()) fail(path + "." + key, "expected a number");
  return obj[key].get<double>();
}

std::string get_str(const json& obj, const std::string& path, const char* key, bool required,
                    const std::string& def = "") {
  if (!obj.contains(key)) {
    if (required) fail(path + "." + key, "missing");
    return def;
  }
  if (!obj[key].is_string()) fail(path + "." + key, "expected a string");
  return obj[key].get<std::string>();
}

bool get_bool(const json& obj, const std::string& path, const char* key, bool def) {
  if (!obj.contains(key)) return def;
  if (!obj[key].is_boolean()) fail(path + "." + key, "expected a boolean");
  return obj[key].get<bool>();
}

std::uint64_t as_bytes(double v, const std::string& path) {
  if (v < 0) fail(path, "byte count must be >= 0");
  return static_cast<std::uint64_t>(v + 0.5);
}

ModelSpec parse_model_json(const json& m, const std::string& path) {
  expect_keys(m, path, {"model_id", "input_size_bytes", "output_size_bytes", "layers"});
  ModelSpec spec;
  spec.model_id = get_str(m, path, "model_id", true);
  spec.input_size_bytes = as_bytes(get_num(m, path, "input_size_bytes", true), path + ".input_size_bytes");
  spec.output_size_bytes =
      as_bytes(get_num(m, path, "output_size_bytes", true), path + ".output_size_bytes");
  if (!m.contains("layers") || !m["layers"].is_array()) fail(path + ".layers", "expected an array");
  int idx = 0;
  for (const auto& lj : m["layers"]) {
    const std::string lpath = path + ".layers[" + std::to_string(idx) + "]";
    expect_keys(lj, lpath, {"layer_index", "flops", "output_bytes"});
    LayerSpec layer;
    layer.layer_index = static_cast<int>(get_num(lj, lpath, "layer_index", false, idx + 1));
    layer.flops = get_num(lj, lpath, "flops", true);
    layer.output_bytes = as_bytes(get_num(lj, lpath, "output_bytes", true), lpath + ".output_bytes");
    spec.layers.push_back(layer);
    ++idx;
  }
  return spec;
}

json model_to_json(const ModelSpec& m) {
  json out;
  out["model_id"] = m.model_id;
  out["input_size_bytes"] = m.input_size_bytes;
  out["output_size_bytes"] = m.output_size_bytes;
  json layers = json::array();
  for (const auto& l : m.layers) {
    layers.push_back({{"layer_index", l.layer_index}, {"flops", l.flops},
                      {"output_bytes", l.output_bytes}});
  }
  out["layers"] = layers;
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

ModelSpec parse_model(const std::string& json_text) {
  json j = json::parse(json_text);
  return parse_model_json(j, "model");
}

std::string serialize_model(const ModelSpec& model) { return model_to_json(model).dump(2); }

ModelSpec load_model_file(const std::string& path) {
  try {
    return parse_model(read_file(path));
  } catch (const json::exception& e) {
    throw std::runtime_error("model file " + path + ": " + e.what());
  }
}

ScenarioConfig parse_scenario(const std::string& json_text, const std::string& base_dir) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("scenario: malformed JSON: ") + e.what());
  }
  ScenarioConfig cfg;
  expect_keys(j, "scenario",
              {"name", "description", "models", "workers", "links", "full_mesh", "link_defaults",
               "sources", "algorithm", "ring_chains", "churn", "seed", "max_sim_time",
               "control_payload_bytes", "rtc_timeout_sec", "status_timeout_sec", "contention",
               "ring_realloc_every", "failure_probs"});
  cfg.name = get_str(j, "scenario", "name", true);
  cfg.description = get_str(j, "scenario", "description", false);

  if (!j.contains("models") || !j["models"].is_array()) fail("scenario.models", "expected an array");
  int idx = 0;
  for (const auto& mj : j["models"]) {
    const std::string path = "scenario.models[" + std::to_string(idx) + "]";
    if (mj.is_object() && mj.contains("file")) {
      expect_keys(mj, path, {"file"});
      const std::string rel = get_str(mj, path, "file", true);
      const fs::path full = base_dir.empty() ? fs::path(rel) : fs::path(base_dir) / rel;
      cfg.models.push_back(load_model_file(full.string()));
    } else {
      cfg.models.push_back(parse_model_json(mj, path));
    }
    ++idx;
  }

  if (!j.contains("workers") || !j["workers"].is_array())
    fail("scenario.workers", "expected an array");
  idx = 0;
  for (const auto& wj : j["workers"]) {
    const std::string path = "scenario.workers[" + std::to_string(idx) + "]";
    expect_keys(wj, path, {"id", "seconds_per_flop", "mobile"});
    WorkerConfig w;
    w.id = get_str(wj, path, "id", true);
    w.seconds_per_flop = get_num(wj, path, "seconds_per_flop", true);
    w.mobile = get_bool(wj, path, "mobile", false);
    cfg.workers.push_back(w);
    ++idx;
  }

  if (j.contains("link_defaults")) {
    const auto& d = j["link_defaults"];
    expect_keys(d, "scenario.link_defaults",
                {"bandwidth_bytes_per_sec", "propagation_delay_sec"});
    cfg.default_bandwidth_bytes_per_sec =
        get_num(d, "scenario.link_defaults", "bandwidth_bytes_per_sec", false,
                cfg.default_bandwidth_bytes_per_sec);
    cfg.default_propagation_delay_sec = get_num(
        d, "scenario.link_defaults", "propagation_delay_sec", false,
        cfg.default_propagation_delay_sec);
  }
  cfg.full_mesh = get_bool(j, "scenario", "full_mesh", false);
  if (j.contains("links")) {
    if (!j["links"].is_array()) fail("scenario.links", "expected an array");
    idx = 0;
    for (const auto& lj : j["links"]) {
      const std::string path = "scenario.links[" + std::to_string(idx) + "]";
      expect_keys(lj, path, {"a", "b", "bandwidth_bytes_per_sec", "propagation_delay_sec"});
      LinkConfig l;
      l.a = get_str(lj, path, "a", true);
      l.b = get_str(lj, path, "b", true);
      l.bandwidth_bytes_per_sec = get_num(lj, path, "bandwidth_bytes_per_sec", false, 0.0);
      l.propagation_delay_sec = get_num(lj, path, "propagation_delay_sec", false, -1.0);
      if (lj.contains("bandwidth_bytes_per_sec") && !(l.bandwidth_bytes_per_sec > 0))
        fail(path + ".bandwidth_bytes_per_sec", "must be > 0");
      if (lj.contains("propagation_delay_sec") && l.propagation_delay_sec < 0)
        fail(path + ".propagation_delay_sec", "must be >= 0");
      cfg.links.push_back(l);
      ++idx;
    }
  }

  if (!j.contains("sources") || !j["sources"].is_array())
    fail("scenario.sources", "expected an array");
  idx = 0;
  for (const auto& sj : j["sources"]) {
    const std::string path = "scenario.sources[" + std::to_string(idx) + "]";
    expect_keys(sj, path,
                {"id", "host", "model", "priority_weight", "accuracy_gain", "num_data_points",
                 "partitions"});
    SourceConfig s;
    s.id = get_str(sj, path, "id", true);
    s.host = get_str(sj, path, "host", true);
    s.model = get_str(sj, path, "model", true);
    s.priority_weight = get_num(sj, path, "priority_weight", false, 1.0);
    s.accuracy_gain = get_num(sj, path, "accuracy_gain", false, 1.0);
    s.num_data_points = static_cast<int>(get_num(sj, path, "num_data_points", true));
    if (sj.contains("partitions")) {
      const auto& pj = sj["partitions"];
      if (pj.is_number()) {
        s.partitions = pj.get<int>();
      } else if (pj.is_object()) {
        expect_keys(pj, path + ".partitions", {"cuts"});
        if (!pj.contains("cuts") || !pj["cuts"].is_array())
          fail(path + ".partitions.cuts", "expected an array");
        for (const auto& cj : pj["cuts"]) {
          if (!cj.is_array() || cj.size() != 2)
            fail(path + ".partitions.cuts", "each cut is [begin_layer, end_layer]");
          s.explicit_cuts.push_back({cj[0].get<int>(), cj[1].get<int>()});
        }
        s.partitions = static_cast<int>(s.explicit_cuts.size());
      } else {
        fail(path + ".partitions", "expected a number or {\"cuts\": ...}");
      }
    }
    cfg.sources.push_back(s);
    ++idx;
  }

  const std::string alg = get_str(j, "scenario", "algorithm", true);
  auto a = algorithm_from_name(alg);
  if (!a) fail("scenario.algorithm", "unknown algorithm '" + alg + "'");
  cfg.algorithm = *a;

  if (j.contains("ring_chains")) {
    const auto& rj = j["ring_chains"];
    if (!rj.is_object()) fail("scenario.ring_chains", "expected an object");
    for (auto it = rj.begin(); it != rj.end(); ++it) {
      if (!it.value().is_array()) fail("scenario.ring_chains." + it.key(), "expected an array");
      std::vector<WorkerId> chain;
      for (const auto& wid : it.value()) chain.push_back(wid.get<std::string>());
      cfg.ring_chains[it.key()] = chain;
    }
  }

  if (j.contains("churn")) {
    const auto& cj = j["churn"];
    expect_keys(cj, "scenario.churn", {"mobile", "mean_interval_sec", "rng_seed"});
    ChurnProcess churn;
    if (!cj.contains("mobile") || !cj["mobile"].is_array())
      fail("scenario.churn.mobile", "expected an array");
    for (const auto& wid : cj["mobile"]) churn.mobile_workers.push_back(wid.get<std::string>());
    churn.mean_interval_sec = get_num(cj, "scenario.churn", "mean_interval_sec", false, 50.0);
    churn.rng_seed =
        static_cast<std::uint64_t>(get_num(cj, "scenario.churn", "rng_seed", false, 0.0));
    cfg.churn = churn;
  }

  cfg.seed = static_cast<std::uint64_t>(get_num(j, "scenario", "seed", false, 1.0));
  cfg.max_sim_time = get_num(j, "scenario", "max_sim_time", false, cfg.max_sim_time);
  cfg.control_payload_bytes = as_bytes(
      get_num(j, "scenario", "control_payload_bytes", false, 1024.0),
      "scenario.control_payload_bytes");
  cfg.rtc_timeout_sec = get_num(j, "scenario", "rtc_timeout_sec", false, 0.0);
  cfg.status_timeout_sec = get_num(j, "scenario", "status_timeout_sec", false, 0.0);
  const std::string cont = get_str(j, "scenario", "contention", false, "per_link");
  if (cont == "per_link") {
    cfg.contention = ContentionModel::PerLink;
  } else if (cont == "shared_medium") {
    cfg.contention = ContentionModel::SharedMedium;
  } else {
    fail("scenario.contention", "expected 'per_link' or 'shared_medium'");
  }
  cfg.ring_realloc_every =
      static_cast<int>(get_num(j, "scenario", "ring_realloc_every", false, 10.0));
  if (j.contains("failure_probs")) {
    const auto& fj = j["failure_probs"];
    if (!fj.is_object()) fail("scenario.failure_probs", "expected an object");
    for (auto it = fj.begin(); it != fj.end(); ++it)
      cfg.failure_probs[it.key()] = it.value().get<double>();
  }
  return cfg;
}

std::string serialize_scenario(const ScenarioConfig& cfg) {
  json j;
  j["name"] = cfg.name;
  if (!cfg.description.empty()) j["description"] = cfg.description;
  json models = json::array();
  for (const auto& m : cfg.models) models.push_back(model_to_json(m));
  j["models"] = models;
  json workers = json::array();
  for (const auto& w : cfg.workers) {
    json wj{{"id", w.id}, {"seconds_per_flop", w.seconds_per_flop}};
    if (w.mobile) wj["mobile"] = true;
    workers.push_back(wj);
  }
  j["workers"] = workers;
  j["link_defaults"] = {{"bandwidth_bytes_per_sec", cfg.default_bandwidth_bytes_per_sec},
                        {"propagation_delay_sec", cfg.default_propagation_delay_sec}};
  if (cfg.full_mesh) j["full_mesh"] = true;
  if (!cfg.links.empty()) {
    json links = json::array();
    for (const auto& l : cfg.links) {
      json lj{{"a", l.a}, {"b", l.b}};
      if (l.bandwidth_bytes_per_sec > 0) lj["bandwidth_bytes_per_sec"] = l.bandwidth_bytes_per_sec;
      if (l.propagation_delay_sec >= 0) lj["propagation_delay_sec"] = l.propagation_delay_sec;
      links.push_back(lj);
    }
    j["links"] = links;
  }
  json sources = json::array();
  for (const auto& s : cfg.sources) {
    json sj{{"id", s.id},
            {"host", s.host},
            {"model", s.model},
            {"priority_weight", s.priority_weight},
            {"accuracy_gain", s.accuracy_gain},
            {"num_data_points", s.num_data_points}};
    if (!s.explicit_cuts.empty()) {
      json cuts = json::array();
      for (const auto& c : s.explicit_cuts) cuts.push_back({c.begin_layer, c.end_layer});
      sj["partitions"] = {{"cuts", cuts}};
    } else {
      sj["partitions"] = s.partitions;
    }
    sources.push_back(sj);
  }
  j["sources"] = sources;
  j["algorithm"] = algorithm_name(cfg.algorithm);
  if (!cfg.ring_chains.empty()) {
    json rj;
    for (const auto& [sid, chain] : cfg.ring_chains) rj[sid] = chain;
    j["ring_chains"] = rj;
  }
  if (cfg.churn) {
    j["churn"] = {{"mobile", cfg.churn->mobile_workers},
                  {"mean_interval_sec", cfg.churn->mean_interval_sec},
                  {"rng_seed", cfg.churn->rng_seed}};
  }
  j["seed"] = cfg.seed;
  j["max_sim_time"] = cfg.max_sim_time;
  j["control_payload_bytes"] = cfg.control_payload_bytes;
  if (cfg.rtc_timeout_sec > 0) j["rtc_timeout_sec"] = cfg.rtc_timeout_sec;
  if (cfg.status_timeout_sec > 0) j["status_timeout_sec"] = cfg.status_timeout_sec;
  j["contention"] =
      cfg.contention == ContentionModel::PerLink ? "per_link" : "shared_medium";
  j["ring_realloc_every"] = cfg.ring_realloc_every;
  if (!cfg.failure_probs.empty()) {
    json fj;
    for (const auto& [w, p] : cfg.failure_probs) fj[w] = p;
    j["failure_probs"] = fj;
  }
  return j.dump(2);
}

ScenarioConfig load_scenario_file(const std::string& path) {
  const fs::path p(path);
  return parse_scenario(read_file(path), p.parent_path().string());
}

namespace {

void validate_model(const ModelSpec& m, std::vector<std::string>& out) {
  const std::string where = "models[" + m.model_id + "]";
  if (m.layers.empty()) {
    out.push_back(where + ".layers: must be non-empty");
    return;
  }
  for (size_t i = 0; i < m.layers.size(); ++i) {
    const auto& l = m.layers[i];
    if (l.layer_index != static_cast<int>(i) + 1)
      out.push_back(where + ".layers[" + std::to_string(i) + "].layer_index: expected " +
                    std::to_string(i + 1) + ", got " + std::to_string(l.layer_index));
    if (!(l.flops > 0))
      out.push_back(where + ".layers[" + std::to_string(i) + "].flops: must be > 0");
    if (l.output_bytes == 0)
      out.push_back(where + ".layers[" + std::to_string(i) + "].output_bytes: must be > 0");
  }
}

void validate_cuts(const std::vector<Cut>& cuts, int layer_count, const std::string& where,
                   std::vector<std::string>& out) {
  if (cuts.empty()) {
    out.push_back(where + ": needs at least one partition");
    return;
  }
  int expected_begin = 1;
  for (size_t i = 0; i < cuts.size(); ++i) {
    const Cut& c = cuts[i];
    const std::string cw = where + ".cuts[" + std::to_string(i) + "]";
    if (c.begin_layer != expected_begin)
      out.push_back(cw + ": begins at " + std::to_string(c.begin_layer) + ", expected " +
                    std::to_string(expected_begin) + " (gap or overlap)");
    if (c.end_layer < c.begin_layer)
      out.push_back(cw + ": end_layer before begin_layer");
    expected_begin = c.end_layer + 1;
  }
  if (expected_begin != layer_count + 1)
    out.push_back(where + ": cuts cover 1.." + std::to_string(expected_begin - 1) +
                  " but the model has " + std::to_string(layer_count) + " layers");
}

}  // namespace

std::vector<std::string> validate_scenario(const ScenarioConfig& cfg) {
  std::vector<std::string> out;
  std::map<std::string, const ModelSpec*> models;
  for (const auto& m : cfg.models) {
    if (models.count(m.model_id))
      out.push_back("models[" + m.model_id + "]: duplicate model id");
    models[m.model_id] = &m;
    validate_model(m, out);
  }

  std::map<WorkerId, const WorkerConfig*> workers;
  for (const auto& w : cfg.workers) {
    const std::string where = "workers[" + w.id + "]";
    if (workers.count(w.id)) out.push_back(where + ": duplicate worker id");
    workers[w.id] = &w;
    if (!(w.seconds_per_flop > 0)) out.push_back(where + ".seconds_per_flop: must be > 0");
  }

  if (!(cfg.default_bandwidth_bytes_per_sec > 0))
    out.push_back("link_defaults.bandwidth_bytes_per_sec: must be > 0");
  if (cfg.default_propagation_delay_sec < 0)
    out.push_back("link_defaults.propagation_delay_sec: must be >= 0");
  std::set<std::pair<WorkerId, WorkerId>> seen_links;
  for (size_t i = 0; i < cfg.links.size(); ++i) {
    const auto& l = cfg.links[i];
    const std::string where = "links[" + std::to_string(i) + "]";
    if (!workers.count(l.a)) out.push_back(where + ".a: unknown worker '" + l.a + "'");
    if (!workers.count(l.b)) out.push_back(where + ".b: unknown worker '" + l.b + "'");
    if (l.a == l.b) out.push_back(where + ": self-link at '" + l.a + "'");
    auto key = std::minmax(l.a, l.b);
    if (!seen_links.insert({key.first, key.second}).second)
      out.push_back(where + ": duplicate link " + l.a + "-" + l.b);
    if (l.bandwidth_bytes_per_sec < 0)
      out.push_back(where + ".bandwidth_bytes_per_sec: must be > 0");
  }
  if (!cfg.full_mesh && cfg.links.empty() && cfg.workers.size() > 1 &&
      cfg.algorithm != Algorithm::Local)
    out.push_back("links: empty and full_mesh is false");

  std::set<SourceId> source_ids;
  std::set<WorkerId> hosts;
  for (const auto& s : cfg.sources) {
    const std::string where = "sources[" + s.id + "]";
    if (!source_ids.insert(s.id).second) out.push_back(where + ": duplicate source id");
    if (!(s.priority_weight > 0)) out.push_back(where + ".priority_weight: must be > 0");
    if (!(s.accuracy_gain > 0)) out.push_back(where + ".accuracy_gain: must be > 0");
    if (s.num_data_points < 1) out.push_back(where + ".num_data_points: must be >= 1");
    auto wit = workers.find(s.host);
    if (wit == workers.end()) {
      out.push_back(where + ".host: unknown worker '" + s.host + "'");
    } else {
      hosts.insert(s.host);
      if (wit->second->mobile)
        out.push_back(where + ".host: source host '" + s.host +
                      "' is mobile; source nodes must be stationary");
    }
    auto mit = models.find(s.model);
    if (mit == models.end()) {
      out.push_back(where + ".model: unknown model '" + s.model + "'");
    } else if (!mit->second->layers.empty()) {
      const int layer_count = mit->second->layer_count();
      if (!s.explicit_cuts.empty()) {
        validate_cuts(s.explicit_cuts, layer_count, where + ".partitions", out);
      } else if (s.partitions < 1) {
        out.push_back(where + ".partitions: must be >= 1");
      } else if (s.partitions > layer_count) {
        out.push_back(where + ".partitions: " + std::to_string(s.partitions) +
                      " parts exceed the model's " + std::to_string(layer_count) + " layers");
      }
    }
  }
  if (cfg.sources.empty()) out.push_back("sources: must be non-empty");

  if (cfg.algorithm == Algorithm::ArMdi || cfg.algorithm == Algorithm::MsMdi) {
    for (const auto& s : cfg.sources) {
      auto it = cfg.ring_chains.find(s.id);
      if (it == cfg.ring_chains.end()) {
        out.push_back("ring_chains." + s.id + ": missing (required by " +
                      algorithm_name(cfg.algorithm) + ")");
        continue;
      }
      const auto& chain = it->second;
      const std::string where = "ring_chains." + s.id;
      if (chain.empty()) {
        out.push_back(where + ": empty chain");
        continue;
      }
      if (chain.front() != s.host)
        out.push_back(where + ": chain must start at the source host '" + s.host + "'");
      std::set<WorkerId> seen;
      for (const auto& w : chain) {
        if (!workers.count(w)) out.push_back(where + ": unknown worker '" + w + "'");
        if (!seen.insert(w).second) out.push_back(where + ": worker '" + w + "' appears twice");
      }
      auto mit = models.find(s.model);
      if (mit != models.end() && static_cast<int>(chain.size()) > mit->second->layer_count())
        out.push_back(where + ": chain longer than the model's layer count");
    }
  }
  for (const auto& [sid, _] : cfg.ring_chains) {
    if (!source_ids.count(sid))
      out.push_back("ring_chains." + sid + ": unknown source id");
  }

  if (cfg.churn) {
    const std::string where = "churn";
    if (!(cfg.churn->mean_interval_sec > 0))
      out.push_back(where + ".mean_interval_sec: must be > 0");
    if (cfg.churn->mobile_workers.empty()) out.push_back(where + ".mobile: must be non-empty");
    std::set<WorkerId> seen;
    for (const auto& w : cfg.churn->mobile_workers) {
      if (!workers.count(w)) {
        out.push_back(where + ".mobile: unknown worker '" + w + "'");
        continue;
      }
      if (!seen.insert(w).second) out.push_back(where + ".mobile: worker '" + w + "' listed twice");
      if (hosts.count(w))
        out.push_back(where + ".mobile: worker '" + w +
                      "' hosts a source; source nodes must be stationary");
      if (!workers.at(w)->mobile)
        out.push_back(where + ".mobile: worker '" + w + "' is not flagged mobile");
    }
  }
  for (const auto& w : cfg.workers) {
    if (w.mobile && hosts.count(w.id))
      out.push_back("workers[" + w.id + "].mobile: source hosts must be stationary");
  }

  if (!(cfg.max_sim_time > 0)) out.push_back("max_sim_time: must be > 0");
  if (cfg.control_payload_bytes == 0) out.push_back("control_payload_bytes: must be > 0");
  if (cfg.ring_realloc_every < 1) out.push_back("ring_realloc_every: must be >= 1");
  if (cfg.rtc_timeout_sec < 0) out.push_back("rtc_timeout_sec: must be >= 0");
  if (cfg.status_timeout_sec < 0) out.push_back("status_timeout_sec: must be >= 0");
  for (const auto& [w, p] : cfg.failure_probs) {
    if (!workers.count(w)) out.push_back("failure_probs." + w + ": unknown worker");
    if (p < 0 || p > 1) out.push_back("failure_probs." + w + ": must be in [0,1]");
  }
  return out;
}

ResolvedScenario resolve_scenario(const ScenarioConfig& cfg) {
  auto violations = validate_scenario(cfg);
  if (!violations.empty()) {
    std::string msg = "invalid scenario:";
    for (const auto& v : violations) msg += "\n  " + v;
    throw std::runtime_error(msg);
  }
  ResolvedScenario r;
  r.config = cfg;
  for (const auto& m : cfg.models) r.models[m.model_id] = m;

  std::set<WorkerId> hosts;
  for (const auto& s : cfg.sources) hosts.insert(s.host);
  for (const auto& w : cfg.workers) {
    WorkerProfile p;
    p.worker_id = w.id;
    p.seconds_per_flop = w.seconds_per_flop;
    p.mobile = w.mobile;
    p.is_source_host = hosts.count(w.id) > 0;
    r.topology.add_worker(p);
  }
  auto make_link = [&](const LinkConfig& l) {
    LinkSpec spec;
    spec.a = l.a;
    spec.b = l.b;
    spec.bandwidth_bytes_per_sec =
        l.bandwidth_bytes_per_sec > 0 ? l.bandwidth_bytes_per_sec : cfg.default_bandwidth_bytes_per_sec;
    spec.propagation_delay_sec =
        l.propagation_delay_sec >= 0 ? l.propagation_delay_sec : cfg.default_propagation_delay_sec;
    return spec;
  };
  std::set<std::pair<WorkerId, WorkerId>> have;
  for (const auto& l : cfg.links) {
    r.topology.add_link(make_link(l));
    auto key = std::minmax(l.a, l.b);
    have.insert({key.first, key.second});
  }
  if (cfg.full_mesh) {
    auto ids = r.topology.worker_ids();
    for (size_t i = 0; i < ids.size(); ++i) {
      for (size_t k = i + 1; k < ids.size(); ++k) {
        if (have.count({ids[i], ids[k]})) continue;
        r.topology.add_link(make_link(LinkConfig{ids[i], ids[k], 0.0, -1.0}));
      }
    }
  }

  for (const auto& s : cfg.sources) {
    ResolvedSource rs;
    rs.spec.source_id = s.id;
    rs.spec.host_worker = s.host;
    rs.spec.model_id = s.model;
    rs.spec.priority_weight = s.priority_weight;
    rs.spec.accuracy_gain = s.accuracy_gain;
    rs.spec.num_data_points = s.num_data_points;
    rs.model = &r.models.at(s.model);
    if (!s.explicit_cuts.empty()) {
      rs.plan.model_id = s.model;
      rs.plan.cuts = s.explicit_cuts;
    } else {
      rs.plan = uniform_partition(*rs.model, s.partitions);
    }
    r.sources[s.id] = rs;
  }
  return r;
}

}  // namespace pamdi
