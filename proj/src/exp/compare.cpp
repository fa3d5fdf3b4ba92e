#include "uavisac/exp/compare.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <stdexcept>

#include "json.hpp"
#include "uavisac/exp/config.hpp"
#include "uavisac/exp/csv.hpp"
#include "uavisac/metrics/hypervolume.hpp"
#include "uavisac/strfmt.hpp"

namespace uavisac::exp {

namespace fs = std::filesystem;

namespace {

struct LoadedRun {
  std::string run;
  std::string algorithm;
  std::uint64_t seed = 0;
  std::string scenario_hash;
  std::vector<ObjectiveVector> front;
};

double parse_double(const std::string& s, const std::string& what) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size())
    throw std::runtime_error("compare: bad number in " + what + ": '" + s +
                             "'");
  return v;
}

LoadedRun load_run(const fs::path& dir) {
  LoadedRun run;
  run.run = dir.filename().string();

  std::ifstream in(dir / "summary.json");
  if (!in)
    throw ConfigError("compare: " + dir.string() + " has no summary.json");
  nlohmann::json j;
  try {
    in >> j;
    run.algorithm = j.at("algorithm").get<std::string>();
    run.seed = j.at("seed").get<std::uint64_t>();
    run.scenario_hash = j.at("scenario_hash").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("compare: unreadable summary in " + dir.string() +
                      ": " + e.what());
  }

  const CsvTable front = read_csv((dir / "front.csv").string());
  const std::size_t c1 = front.column("f1_tilde");
  const std::size_t c2 = front.column("f2_tilde");
  for (const auto& row : front.rows)
    run.front.push_back({parse_double(row.at(c1), "front.csv"),
                         parse_double(row.at(c2), "front.csv")});
  return run;
}

}  // namespace

CompareResult compare_runs(const std::vector<fs::path>& run_dirs,
                           const fs::path& out_dir) {
  if (run_dirs.size() < 2)
    throw ConfigError("compare: need at least two run directories");

  std::vector<LoadedRun> runs;
  runs.reserve(run_dirs.size());
  for (const auto& dir : run_dirs) runs.push_back(load_run(dir));

  for (const auto& r : runs)
    if (r.scenario_hash != runs[0].scenario_hash)
      throw ConfigError("compare: " + r.run + " was produced on a different "
                        "scenario (hash " + r.scenario_hash + " vs " +
                        runs[0].scenario_hash + "); refusing to mix");

  // One normalization for everyone, fitted on the union of usable points.
  std::vector<ObjectiveVector> pool;
  for (const auto& r : runs)
    for (const auto& p : metrics::drop_penalized(r.front)) pool.push_back(p);
  metrics::FrontBounds bounds;
  try {
    bounds = metrics::fit_bounds(pool);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("compare: fronts cannot be normalized "
                                  "together: ") + e.what());
  }

  const ObjectiveVector reference{1.1, 1.1};
  CompareResult res;
  res.bounds = bounds;
  res.scenario_hash = runs[0].scenario_hash;
  for (const auto& r : runs) {
    const auto usable = metrics::drop_penalized(r.front);
    CompareRow row;
    row.run = r.run;
    row.algorithm = r.algorithm;
    row.seed = r.seed;
    row.ep_size = r.front.size();
    row.points_used = usable.size();
    row.hv = metrics::hypervolume_2d(
        metrics::normalize_front(usable, bounds), reference);
    res.rows.push_back(row);
  }
  std::stable_sort(res.rows.begin(), res.rows.end(),
                   [](const CompareRow& a, const CompareRow& b) {
                     return a.hv > b.hv;
                   });

  fs::create_directories(out_dir);
  {
    std::ofstream out(out_dir / "hv_table.csv", std::ios::binary);
    write_csv_row(out,
                  {"algorithm", "seed", "run", "ep_size", "points_used", "hv"});
    for (const auto& row : res.rows)
      write_csv_row(out, {row.algorithm, std::to_string(row.seed), row.run,
                          std::to_string(row.ep_size),
                          std::to_string(row.points_used),
                          strfmt::shortest(row.hv)});
  }
  {
    std::ofstream out(out_dir / "merged_fronts.csv", std::ios::binary);
    write_csv_row(out, {"run", "algorithm", "seed", "f1_tilde", "f2_tilde",
                        "f1_norm", "f2_norm"});
    for (const auto& r : runs)
      for (const auto& p : r.front) {
        const auto n = metrics::normalize_point(p, bounds);
        write_csv_row(out, {r.run, r.algorithm, std::to_string(r.seed),
                            strfmt::shortest(p.f1_tilde),
                            strfmt::shortest(p.f2_tilde),
                            strfmt::shortest(n.f1_tilde),
                            strfmt::shortest(n.f2_tilde)});
      }
  }
  {
    const nlohmann::json j = {
        {"scenario_hash", res.scenario_hash},
        {"reference", {reference.f1_tilde, reference.f2_tilde}},
        {"bounds",
         {{"f1_min", bounds.f1_min},
          {"f1_max", bounds.f1_max},
          {"f2_min", bounds.f2_min},
          {"f2_max", bounds.f2_max}}},
        {"penalty_threshold", metrics::kPenaltyThreshold},
    };
    std::ofstream out(out_dir / "normalization.json", std::ios::binary);
    out << j.dump(2) << "\n";
  }

  std::cout << "algorithm      seed  ep_size  used  hv\n";
  for (const auto& row : res.rows) {
    char line[160];
    std::snprintf(line, sizeof(line), "%-14s %4llu %8zu %5zu  %s\n",
                  row.algorithm.c_str(),
                  static_cast<unsigned long long>(row.seed), row.ep_size,
                  row.points_used, strfmt::shortest(row.hv).c_str());
    std::cout << line;
  }
  std::cout << "comparison written to " << out_dir.string() << "\n";
  return res;
}

}  // namespace uavisac::exp
