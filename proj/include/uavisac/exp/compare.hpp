#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "uavisac/metrics/normalize.hpp"

namespace uavisac::exp {

struct CompareRow {
  std::string run;  // run directory basename
  std::string algorithm;
  std::uint64_t seed = 0;
  std::size_t ep_size = 0;      // rows in the run's front
  std::size_t points_used = 0;  // rows surviving the penalty filter
  double hv = 0.0;              // union-normalized, reference (1.1, 1.1)
};

struct CompareResult {
  std::vector<CompareRow> rows;  // sorted by hv, best first
  metrics::FrontBounds bounds;   // union normalization actually applied
  std::string scenario_hash;
};

// Score previously written run directories against each other on one shared
// normalization fitted to the union of their fronts (penalty rows excluded
// everywhere except the merged dump). All runs must carry the same scenario
// hash. Writes hv_table.csv, merged_fronts.csv and normalization.json into
// out_dir and returns the table.
CompareResult compare_runs(const std::vector<std::filesystem::path>& run_dirs,
                           const std::filesystem::path& out_dir);

}  // namespace uavisac::exp
