#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "uavisac/isac/scenario.hpp"
#include "uavisac/llm/backend.hpp"
#include "uavisac/moead/algorithm.hpp"

namespace uavisac::exp {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// dB-scale inputs live only in config files; the model works in linear mW.
double dbm_to_mw(double dbm);
double db_to_linear(double db);

// Scenario description as written in config files (dB/dBm units).
struct ScenarioConfig {
  int num_uavs = 2;
  int num_users = 4;
  double area_min_m = 0.0;
  double area_max_m = 2000.0;
  double altitude_m = 100.0;
  double p_min_dbm = 0.0;
  double p_max_dbm = 20.0;
  double noise_dbm = -110.0;
  double ref_gain_db = -60.0;
  double bandwidth_hz = 51.2e6;
  double rcs_min = 0.8;
  double rcs_max = 1.0;
  std::uint64_t placement_seed = 7;
  // Explicit user positions override the seeded placement when non-empty.
  std::vector<std::array<double, 2>> user_positions;
};

enum class Algo { kLedma, kMoeadGa, kMoeadDe, kRandom };
enum class BackendKind { kMock, kHttp };

const char* algo_name(Algo a);
Algo algo_from_name(const std::string& name);          // throws ConfigError
const char* backend_name(BackendKind b);
BackendKind backend_from_name(const std::string& name);  // throws ConfigError

struct RunConfig {
  ScenarioConfig scenario;
  moead::AlgoParams params;  // includes the run seed
  Algo algo = Algo::kLedma;
  BackendKind backend = BackendKind::kMock;
  llm::LlmConfig llm;
  std::string out_dir = "runs";
};

// Strict parse of the flat JSON schema: scenario fields, optimizer fields,
// "algo", "backend", "seed" and "out_dir" at the root, plus one nested
// "llm" object. Unknown keys, wrong types and out-of-range values all throw
// ConfigError naming the offending field. The http backend additionally
// requires the API-key environment variable to be set.
RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::string& path);

// The http backend is only usable when the configured environment variable
// holds an API key; throws ConfigError otherwise. parse_config applies this
// check, but callers that mutate algo/backend after parsing (e.g. CLI
// overrides) must re-apply it themselves.
void require_backend_key(const RunConfig& cfg);

// Materialize the physical instance: seeded user placement (when positions
// are not pinned) and seeded reflection magnitudes, both from
// placement_seed, independent of the optimizer seed.
isac::Scenario build_scenario(const ScenarioConfig& sc);

// Resolved-config echo written into every run directory; linear units
// included next to the dB inputs.
std::string config_echo_json(const RunConfig& cfg);

}  // namespace uavisac::exp
