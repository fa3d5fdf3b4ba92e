#include "uavisac/exp/config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "uavisac/llm/prompt.hpp"
#include "uavisac/rng.hpp"

namespace uavisac::exp {

using nlohmann::json;

double dbm_to_mw(double dbm) { return std::pow(10.0, dbm / 10.0); }
double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

const char* algo_name(Algo a) {
  switch (a) {
    case Algo::kLedma: return "ledma";
    case Algo::kMoeadGa: return "moead-ga";
    case Algo::kMoeadDe: return "moead-de";
    case Algo::kRandom: return "random";
  }
  return "?";
}

Algo algo_from_name(const std::string& name) {
  if (name == "ledma") return Algo::kLedma;
  if (name == "moead-ga") return Algo::kMoeadGa;
  if (name == "moead-de") return Algo::kMoeadDe;
  if (name == "random") return Algo::kRandom;
  throw ConfigError("unknown algorithm '" + name +
                    "' (expected ledma, moead-ga, moead-de or random)");
}

const char* backend_name(BackendKind b) {
  return b == BackendKind::kMock ? "mock" : "http";
}

BackendKind backend_from_name(const std::string& name) {
  if (name == "mock") return BackendKind::kMock;
  if (name == "http") return BackendKind::kHttp;
  throw ConfigError("unknown backend '" + name + "' (expected mock or http)");
}

void require_backend_key(const RunConfig& cfg) {
  if (cfg.algo != Algo::kLedma || cfg.backend != BackendKind::kHttp) return;
  const char* key = std::getenv(cfg.llm.api_key_env.c_str());
  if (key == nullptr || *key == '\0')
    throw ConfigError("backend 'http' needs the API key in the environment "
                      "variable " +
                      cfg.llm.api_key_env);
}

namespace {

void check_keys(const json& obj, const std::string& where,
                std::initializer_list<const char*> allowed) {
  for (const auto& item : obj.items()) {
    bool ok = false;
    for (const char* key : allowed)
      if (item.key() == key) {
        ok = true;
        break;
      }
    if (!ok)
      throw ConfigError("unknown config key '" + where + item.key() + "'");
  }
}

double get_num(const json& obj, const std::string& where, const char* key,
               double def) {
  if (!obj.contains(key)) return def;
  const auto& v = obj.at(key);
  if (!v.is_number())
    throw ConfigError("config key '" + where + key + "' must be a number");
  return v.get<double>();
}

int get_int(const json& obj, const std::string& where, const char* key,
            int def) {
  if (!obj.contains(key)) return def;
  const auto& v = obj.at(key);
  if (!v.is_number_integer())
    throw ConfigError("config key '" + where + key + "' must be an integer");
  return v.get<int>();
}

std::uint64_t get_seed(const json& obj, const std::string& where,
                       const char* key, std::uint64_t def) {
  if (!obj.contains(key)) return def;
  const auto& v = obj.at(key);
  if (!v.is_number_integer() || (v.is_number_integer() && v.get<long long>() < 0))
    throw ConfigError("config key '" + where + key +
                      "' must be a non-negative integer");
  return v.get<std::uint64_t>();
}

std::string get_str(const json& obj, const std::string& where, const char* key,
                    const std::string& def) {
  if (!obj.contains(key)) return def;
  const auto& v = obj.at(key);
  if (!v.is_string())
    throw ConfigError("config key '" + where + key + "' must be a string");
  return v.get<std::string>();
}

void parse_scenario(const json& obj, ScenarioConfig& sc) {
  sc.num_uavs = get_int(obj, "", "num_uavs", sc.num_uavs);
  sc.num_users = get_int(obj, "", "num_users", sc.num_users);
  sc.area_min_m = get_num(obj, "", "area_min_m", sc.area_min_m);
  sc.area_max_m = get_num(obj, "", "area_max_m", sc.area_max_m);
  sc.altitude_m = get_num(obj, "", "altitude_m", sc.altitude_m);
  sc.p_min_dbm = get_num(obj, "", "p_min_dbm", sc.p_min_dbm);
  sc.p_max_dbm = get_num(obj, "", "p_max_dbm", sc.p_max_dbm);
  sc.noise_dbm = get_num(obj, "", "noise_dbm", sc.noise_dbm);
  sc.ref_gain_db = get_num(obj, "", "ref_gain_db", sc.ref_gain_db);
  sc.bandwidth_hz = get_num(obj, "", "bandwidth_hz", sc.bandwidth_hz);
  sc.rcs_min = get_num(obj, "", "rcs_min", sc.rcs_min);
  sc.rcs_max = get_num(obj, "", "rcs_max", sc.rcs_max);
  sc.placement_seed = get_seed(obj, "", "placement_seed", sc.placement_seed);
  if (obj.contains("user_positions")) {
    const auto& arr = obj.at("user_positions");
    if (!arr.is_array())
      throw ConfigError(
          "config key 'user_positions' must be an array of [x, y] pairs");
    sc.user_positions.clear();
    for (const auto& pos : arr) {
      if (!pos.is_array() || pos.size() != 2 || !pos[0].is_number() ||
          !pos[1].is_number())
        throw ConfigError(
            "config key 'user_positions' must hold [x, y] number pairs");
      sc.user_positions.push_back({pos[0].get<double>(), pos[1].get<double>()});
    }
  }
  if (sc.rcs_min <= 0.0 || sc.rcs_min > sc.rcs_max)
    throw ConfigError("config: need 0 < rcs_min <= rcs_max");
  if (!sc.user_positions.empty() &&
      sc.user_positions.size() != static_cast<std::size_t>(sc.num_users))
    throw ConfigError(
        "config: user_positions, when given, must list exactly num_users "
        "pairs");
  if (!(sc.p_min_dbm < sc.p_max_dbm))
    throw ConfigError("config: need p_min_dbm < p_max_dbm");
}

void parse_optimizer(const json& obj, moead::AlgoParams& p) {
  p.population = get_int(obj, "", "population", p.population);
  p.neighbor_size = get_int(obj, "", "neighbor_size", p.neighbor_size);
  p.num_parents = get_int(obj, "", "num_parents", p.num_parents);
  p.offspring_per_call =
      get_int(obj, "", "offspring_per_call", p.offspring_per_call);
  p.iterations = get_int(obj, "", "iterations", p.iterations);
  p.neighbor_prob = get_num(obj, "", "neighbor_prob", p.neighbor_prob);
}

void parse_llm(const json& obj, llm::LlmConfig& c) {
  check_keys(obj, "llm.",
             {"endpoint", "model", "temperature", "max_retries", "timeout_s",
              "api_key_env", "backoff_base_ms", "max_in_flight"});
  c.endpoint = get_str(obj, "llm.", "endpoint", c.endpoint);
  c.model = get_str(obj, "llm.", "model", c.model);
  c.temperature = get_num(obj, "llm.", "temperature", c.temperature);
  c.max_retries = get_int(obj, "llm.", "max_retries", c.max_retries);
  c.timeout_s = get_num(obj, "llm.", "timeout_s", c.timeout_s);
  c.api_key_env = get_str(obj, "llm.", "api_key_env", c.api_key_env);
  c.backoff_base_ms =
      get_int(obj, "llm.", "backoff_base_ms", c.backoff_base_ms);
  c.max_in_flight = get_int(obj, "llm.", "max_in_flight", c.max_in_flight);
}

}  // namespace

RunConfig parse_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!root.is_object()) throw ConfigError("config root must be an object");
  check_keys(root, "",
             {// scenario
              "num_uavs", "num_users", "area_min_m", "area_max_m",
              "altitude_m", "p_min_dbm", "p_max_dbm", "noise_dbm",
              "ref_gain_db", "bandwidth_hz", "rcs_min", "rcs_max",
              "placement_seed", "user_positions",
              // optimizer
              "population", "neighbor_size", "num_parents",
              "offspring_per_call", "iterations", "neighbor_prob",
              // run
              "algo", "backend", "seed", "out_dir", "llm",
              // informational blocks emitted by config_echo_json; accepted
              // (and ignored) so an echoed config can be fed back in
              "resolved", "prompt_template"});

  RunConfig cfg;
  parse_scenario(root, cfg.scenario);
  parse_optimizer(root, cfg.params);
  if (root.contains("llm")) {
    if (!root.at("llm").is_object())
      throw ConfigError("config key 'llm' must be an object");
    parse_llm(root.at("llm"), cfg.llm);
  }
  cfg.algo = algo_from_name(get_str(root, "", "algo", "ledma"));
  cfg.backend = backend_from_name(get_str(root, "", "backend", "mock"));
  cfg.params.seed = get_seed(root, "", "seed", cfg.params.seed);
  cfg.out_dir = get_str(root, "", "out_dir", cfg.out_dir);

  try {
    cfg.params.validate();
    cfg.llm.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  require_backend_key(cfg);
  // Fail on inconsistent physics now, not after the optimizer starts.
  try {
    build_scenario(cfg.scenario);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

isac::Scenario build_scenario(const ScenarioConfig& sc) {
  isac::Scenario scn;
  scn.num_uavs = sc.num_uavs;
  scn.num_users = sc.num_users;
  scn.altitude_m = sc.altitude_m;
  scn.area_min_m = sc.area_min_m;
  scn.area_max_m = sc.area_max_m;
  scn.p_min_mw = dbm_to_mw(sc.p_min_dbm);
  scn.p_max_mw = dbm_to_mw(sc.p_max_dbm);
  scn.constants = isac::PhysicalConstants::make(
      dbm_to_mw(sc.noise_dbm), db_to_linear(sc.ref_gain_db), sc.bandwidth_hz);

  std::mt19937_64 gen(sc.placement_seed);
  if (!sc.user_positions.empty()) {
    scn.user_positions = sc.user_positions;
  } else {
    scn.user_positions.resize(sc.num_users);
    for (auto& w : scn.user_positions) {
      w[0] = rng::uniform(gen, sc.area_min_m, sc.area_max_m);
      w[1] = rng::uniform(gen, sc.area_min_m, sc.area_max_m);
    }
  }
  const std::size_t n_rcs = static_cast<std::size_t>(sc.num_uavs) *
                            sc.num_users * sc.num_uavs;
  scn.rcs_mag.resize(n_rcs);
  for (double& v : scn.rcs_mag) v = rng::uniform(gen, sc.rcs_min, sc.rcs_max);

  scn.validate();
  return scn;
}

std::string config_echo_json(const RunConfig& cfg) {
  const isac::Scenario scn = build_scenario(cfg.scenario);

  json resolved = {
      {"p_min_mw", scn.p_min_mw},
      {"p_max_mw", scn.p_max_mw},
      {"noise_mw", scn.constants.noise_power_mw},
      {"ref_gain_linear", scn.constants.ref_channel_gain},
      {"scenario_hash", [] (std::uint64_t h) {
         char buf[17];
         std::snprintf(buf, sizeof(buf), "%016llx",
                       static_cast<unsigned long long>(h));
         return std::string(buf);
       }(scn.hash())},
  };
  json positions = json::array();
  for (const auto& w : scn.user_positions)
    positions.push_back({w[0], w[1]});
  resolved["user_positions"] = positions;

  // Same flat layout the parser accepts, so a config echo is itself a valid
  // config reproducing the run (resolved/prompt_template are echo-only).
  json root = {
      {"num_uavs", cfg.scenario.num_uavs},
      {"num_users", cfg.scenario.num_users},
      {"area_min_m", cfg.scenario.area_min_m},
      {"area_max_m", cfg.scenario.area_max_m},
      {"altitude_m", cfg.scenario.altitude_m},
      {"p_min_dbm", cfg.scenario.p_min_dbm},
      {"p_max_dbm", cfg.scenario.p_max_dbm},
      {"noise_dbm", cfg.scenario.noise_dbm},
      {"ref_gain_db", cfg.scenario.ref_gain_db},
      {"bandwidth_hz", cfg.scenario.bandwidth_hz},
      {"rcs_min", cfg.scenario.rcs_min},
      {"rcs_max", cfg.scenario.rcs_max},
      {"placement_seed", cfg.scenario.placement_seed},
  };
  if (!cfg.scenario.user_positions.empty()) {
    json explicit_pos = json::array();
    for (const auto& w : cfg.scenario.user_positions)
      explicit_pos.push_back({w[0], w[1]});
    root["user_positions"] = explicit_pos;
  }
  json rest = {
      {"population", cfg.params.population},
      {"neighbor_size", cfg.params.neighbor_size},
      {"num_parents", cfg.params.num_parents},
      {"offspring_per_call", cfg.params.offspring_per_call},
      {"iterations", cfg.params.iterations},
      {"neighbor_prob", cfg.params.neighbor_prob},
      {"algo", algo_name(cfg.algo)},
      {"backend", backend_name(cfg.backend)},
      {"seed", cfg.params.seed},
      // out_dir is deliberately absent: where artifacts land is part of the
      // invocation, not of the run, and its absence keeps repeat runs into
      // different locations byte-identical.
      {"llm",
       {{"endpoint", cfg.llm.endpoint},
        {"model", cfg.llm.model},
        {"temperature", cfg.llm.temperature},
        {"max_retries", cfg.llm.max_retries},
        {"timeout_s", cfg.llm.timeout_s},
        {"api_key_env", cfg.llm.api_key_env},
        {"backoff_base_ms", cfg.llm.backoff_base_ms},
        {"max_in_flight", cfg.llm.max_in_flight}}},
      {"resolved", resolved},
      {"prompt_template", llm::prompt_template_version()},
  };
  root.update(rest);
  return root.dump(2) + "\n";
}

}  // namespace uavisac::exp
