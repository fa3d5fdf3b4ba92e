#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "uavisac/exp/config.hpp"

namespace uavisac::exp {

// What one experiment leaves behind. The directory holds:
//   config.json      resolved configuration echo
//   front.csv        final archive: objectives, normalized objectives,
//                    decoded deployment and raw genes per entry
//   ep_history.csv   archive objectives after every generation
//   hv_log.csv       per-generation hypervolume (fixed raw-space reference)
//                    and archive size
//   population.csv   final incumbent of every subproblem
//   transcripts.jsonl  one JSON record per model request (empty for
//                      classical operators)
//   summary.json     headline numbers; the only non-deterministic field
//                    anywhere is its wall_time_s
struct RunSummary {
  std::filesystem::path dir;
  std::string algorithm;
  std::uint64_t seed = 0;
  std::string scenario_hash;
  long long evaluations = 0;
  std::size_t ep_size = 0;
  // Self-normalized hypervolume at reference (1.1, 1.1), penalty entries
  // excluded; 0 when the front is too degenerate to normalize.
  double hv_self = 0.0;
  long long llm_calls = 0;
  double fallback_rate = 0.0;
  double wall_time_s = 0.0;
};

// Execute one configured run and write its artifact directory. The
// directory is assembled under a temporary name and renamed into place, so
// a crash never leaves a half-written run dir behind.
RunSummary run_experiment(const RunConfig& cfg);

}  // namespace uavisac::exp
