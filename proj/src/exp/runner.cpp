#include "uavisac/exp/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <stdexcept>
#include <vector>

#include "json.hpp"
#include "uavisac/exp/csv.hpp"
#include "uavisac/isac/model.hpp"
#include "uavisac/llm/operator.hpp"
#include "uavisac/metrics/hypervolume.hpp"
#include "uavisac/metrics/normalize.hpp"
#include "uavisac/ops/operators.hpp"
#include "uavisac/strfmt.hpp"

namespace uavisac::exp {

namespace fs = std::filesystem;

namespace {

std::string utc_stamp() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y%m%d-%H%M%S", &tm);
  return buf;
}

std::string hash_hex(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

// Reference for the per-generation hypervolume log: componentwise max of
// the initial population's non-penalty objectives, pushed out by 5% of the
// observed range. Frozen before the loop, so the logged hypervolume can
// only grow as the archive improves.
ObjectiveVector raw_reference(const std::vector<ObjectiveVector>& initial) {
  auto usable = metrics::drop_penalized(initial);
  if (usable.empty()) usable = initial;  // all-penalty start; still well-defined
  double lo1 = usable[0].f1_tilde, hi1 = lo1;
  double lo2 = usable[0].f2_tilde, hi2 = lo2;
  for (const auto& p : usable) {
    lo1 = std::min(lo1, p.f1_tilde);
    hi1 = std::max(hi1, p.f1_tilde);
    lo2 = std::min(lo2, p.f2_tilde);
    hi2 = std::max(hi2, p.f2_tilde);
  }
  const double m1 = hi1 > lo1 ? 0.05 * (hi1 - lo1) : 1.0;
  const double m2 = hi2 > lo2 ? 0.05 * (hi2 - lo2) : 1.0;
  return {hi1 + m1, hi2 + m2};
}

std::string fmt(double v) { return strfmt::shortest(v); }

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

nlohmann::json transcript_json(const llm::Transcript& t) {
  return {{"generation", t.generation}, {"subproblem", t.subproblem},
          {"attempts", t.attempts},     {"parsed", t.parsed},
          {"outcome", t.outcome},       {"fallback", t.fallback},
          {"prompt", t.prompt},         {"response", t.response}};
}

}  // namespace

RunSummary run_experiment(const RunConfig& cfg) {
  const isac::Scenario scn = build_scenario(cfg.scenario);
  if (cfg.scenario.num_uavs * 4 < 1)
    throw ConfigError("scenario yields an empty decision vector");

  const auto objective = [&scn](const DecisionVector& x) {
    return isac::objectives(x, scn);
  };

  // Assemble the operator for the requested algorithm.
  std::vector<llm::Transcript> transcripts;
  std::unique_ptr<llm::ChatBackend> backend;
  std::unique_ptr<moead::OffspringOperator> op;
  llm::LlmOperator* llm_op = nullptr;
  switch (cfg.algo) {
    case Algo::kLedma: {
      if (cfg.backend == BackendKind::kMock)
        backend = std::make_unique<llm::MockBackend>();
      else
        backend = std::make_unique<llm::HttpBackend>(cfg.llm);
      auto owned = std::make_unique<llm::LlmOperator>(
          *backend, cfg.llm.max_retries, ops::GaParams{},
          [&transcripts](const llm::Transcript& t) {
            transcripts.push_back(t);
          });
      llm_op = owned.get();
      op = std::move(owned);
      break;
    }
    case Algo::kMoeadGa:
      op = std::make_unique<ops::GaOperator>();
      break;
    case Algo::kMoeadDe:
      op = std::make_unique<ops::DeOperator>();
      break;
    case Algo::kRandom:
      op = std::make_unique<ops::RandomOperator>();
      break;
  }

  const auto t0 = std::chrono::steady_clock::now();
  const moead::RunResult res =
      moead::run(scn.dim(), objective, *op, cfg.params);
  const double wall_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();

  // ---- derived numbers ----------------------------------------------------
  const auto front = res.archive.objective_snapshot();
  const auto usable_front = metrics::drop_penalized(front);

  std::optional<metrics::FrontBounds> bounds;
  double hv_self = 0.0;
  if (usable_front.size() >= 2) {
    try {
      bounds = metrics::fit_bounds(usable_front);
      hv_self = metrics::hypervolume_2d(
          metrics::normalize_front(usable_front, *bounds), {1.1, 1.1});
    } catch (const std::invalid_argument&) {
      bounds.reset();  // zero spread in some objective; no normalization
    }
  }
  const ObjectiveVector raw_ref = raw_reference(res.initial_objectives);

  // ---- artifact directory -------------------------------------------------
  const fs::path out_root = cfg.out_dir;
  fs::create_directories(out_root);
  std::string base = std::string(algo_name(cfg.algo)) + "-seed" +
                     std::to_string(cfg.params.seed) + "-" + utc_stamp();
  fs::path final_dir = out_root / base;
  for (int k = 2; fs::exists(final_dir); ++k)
    final_dir = out_root / (base + "-" + std::to_string(k));
  const fs::path tmp_dir =
      out_root / (".tmp-" + final_dir.filename().string());
  fs::create_directories(tmp_dir);

  write_text(tmp_dir / "config.json", config_echo_json(cfg));

  {  // front.csv: one row per archive entry, best f1 first
    std::ofstream out(tmp_dir / "front.csv", std::ios::binary);
    std::vector<std::string> header = {"f1_utility", "f2_log_crb", "f1_tilde",
                                       "f2_tilde"};
    for (int k = 0; k < scn.num_uavs; ++k) {
      const std::string s = std::to_string(k);
      header.push_back("x_" + s);
      header.push_back("y_" + s);
      header.push_back("p_rad_" + s);
      header.push_back("p_com_" + s);
    }
    header.push_back("f1_norm");
    header.push_back("f2_norm");
    for (int i = 0; i < scn.dim(); ++i)
      header.push_back("gene_" + std::to_string(i));
    write_csv_row(out, header);

    std::vector<const moead::ArchiveEntry*> order;
    for (const auto& e : res.archive.entries()) order.push_back(&e);
    std::sort(order.begin(), order.end(),
              [](const moead::ArchiveEntry* a, const moead::ArchiveEntry* b) {
                if (a->objectives.f1_tilde != b->objectives.f1_tilde)
                  return a->objectives.f1_tilde < b->objectives.f1_tilde;
                return a->objectives.f2_tilde < b->objectives.f2_tilde;
              });
    for (const auto* e : order) {
      std::vector<std::string> row;
      // Raw utility is only meaningful off the penalty branch.
      row.push_back(metrics::penalized(e->objectives)
                        ? ""
                        : fmt(-e->objectives.f1_tilde));
      row.push_back(fmt(e->objectives.f2_tilde));  // log-CRB as minimized
      row.push_back(fmt(e->objectives.f1_tilde));
      row.push_back(fmt(e->objectives.f2_tilde));
      const isac::Deployment dep = isac::decode(e->genes, scn);
      for (int k = 0; k < scn.num_uavs; ++k) {
        row.push_back(fmt(dep.uav_xy[k][0]));
        row.push_back(fmt(dep.uav_xy[k][1]));
        row.push_back(fmt(dep.p_rad_mw[k]));
        row.push_back(fmt(dep.p_com_mw[k]));
      }
      if (bounds) {
        const auto n = metrics::normalize_point(e->objectives, *bounds);
        row.push_back(fmt(n.f1_tilde));
        row.push_back(fmt(n.f2_tilde));
      } else {
        row.push_back("");
        row.push_back("");
      }
      for (double g : e->genes) row.push_back(fmt(g));
      write_csv_row(out, row);
    }
  }

  {  // ep_history.csv: archive objectives after every generation
    std::ofstream out(tmp_dir / "ep_history.csv", std::ios::binary);
    write_csv_row(out, {"generation", "f1_tilde", "f2_tilde"});
    for (const auto& stat : res.trace)
      for (const auto& p : stat.archive_objectives)
        write_csv_row(out, {std::to_string(stat.generation),
                            fmt(p.f1_tilde), fmt(p.f2_tilde)});
  }

  {  // hv_log.csv
    std::ofstream out(tmp_dir / "hv_log.csv", std::ios::binary);
    write_csv_row(out, {"generation", "evaluations", "hv", "ep_size"});
    for (const auto& stat : res.trace) {
      const double hv =
          metrics::hypervolume_2d(stat.archive_objectives, raw_ref);
      write_csv_row(out, {std::to_string(stat.generation),
                          std::to_string(stat.evaluations), fmt(hv),
                          std::to_string(stat.archive_objectives.size())});
    }
  }

  {  // population.csv: final incumbents
    std::ofstream out(tmp_dir / "population.csv", std::ios::binary);
    std::vector<std::string> header = {"subproblem", "w1", "w2", "f1_tilde",
                                       "f2_tilde"};
    for (int i = 0; i < scn.dim(); ++i)
      header.push_back("gene_" + std::to_string(i));
    write_csv_row(out, header);
    for (const auto& sp : res.population) {
      std::vector<std::string> row = {
          std::to_string(sp.index), fmt(sp.weight.w1), fmt(sp.weight.w2),
          fmt(sp.incumbent_f.f1_tilde), fmt(sp.incumbent_f.f2_tilde)};
      for (double g : sp.incumbent_x) row.push_back(fmt(g));
      write_csv_row(out, row);
    }
  }

  {  // transcripts.jsonl (sorted: concurrent backends may finish out of order)
    std::sort(transcripts.begin(), transcripts.end(),
              [](const llm::Transcript& a, const llm::Transcript& b) {
                if (a.generation != b.generation)
                  return a.generation < b.generation;
                return a.subproblem < b.subproblem;
              });
    std::ofstream out(tmp_dir / "transcripts.jsonl", std::ios::binary);
    for (const auto& t : transcripts) out << transcript_json(t).dump() << '\n';
  }

  RunSummary sum;
  sum.algorithm = algo_name(cfg.algo);
  sum.seed = cfg.params.seed;
  sum.scenario_hash = hash_hex(scn.hash());
  sum.evaluations = res.evaluations;
  sum.ep_size = res.archive.size();
  sum.hv_self = hv_self;
  sum.llm_calls = llm_op ? llm_op->calls() : 0;
  sum.fallback_rate =
      llm_op && llm_op->calls() > 0
          ? static_cast<double>(llm_op->fallbacks()) /
                static_cast<double>(llm_op->calls())
          : 0.0;
  sum.wall_time_s = wall_s;

  {  // summary.json
    nlohmann::json j = {
        {"algorithm", sum.algorithm},
        {"backend", backend_name(cfg.backend)},
        {"seed", sum.seed},
        {"scenario_hash", sum.scenario_hash},
        {"evaluations", sum.evaluations},
        {"ep_size", sum.ep_size},
        {"penalty_points", front.size() - usable_front.size()},
        {"hv_self", sum.hv_self},
        {"hv_reference", {1.1, 1.1}},
        {"hv_log_reference", {raw_ref.f1_tilde, raw_ref.f2_tilde}},
        {"llm_calls", sum.llm_calls},
        {"fallback_rate", sum.fallback_rate},
        {"prompt_template", llm::prompt_template_version()},
        {"wall_time_s", sum.wall_time_s},
    };
    if (bounds)
      j["normalization"] = {{"f1_min", bounds->f1_min},
                            {"f1_max", bounds->f1_max},
                            {"f2_min", bounds->f2_min},
                            {"f2_max", bounds->f2_max}};
    else
      j["normalization"] = nullptr;
    write_text(tmp_dir / "summary.json", j.dump(2) + "\n");
  }

  fs::rename(tmp_dir, final_dir);
  sum.dir = final_dir;

  std::cout << "run directory: " << final_dir.string() << "\n"
            << "  algorithm=" << sum.algorithm << " seed=" << sum.seed
            << " evaluations=" << sum.evaluations << " ep_size=" << sum.ep_size
            << " hv_self=" << fmt(sum.hv_self)
            << " fallback_rate=" << fmt(sum.fallback_rate) << "\n";
  return sum;
}

}  // namespace uavisac::exp
