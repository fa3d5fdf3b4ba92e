#include "uavisac/moead/algorithm.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "uavisac/rng.hpp"

namespace uavisac::moead {

void AlgoParams::validate() const {
  if (population < 2)
    throw std::invalid_argument("params: population must be at least 2");
  if (neighbor_size < 1 || neighbor_size > population)
    throw std::invalid_argument(
        "params: neighbor_size must be in [1, population]");
  if (num_parents < 1 || num_parents > population)
    throw std::invalid_argument(
        "params: num_parents must be in [1, population]");
  if (offspring_per_call < 1)
    throw std::invalid_argument("params: offspring_per_call must be positive");
  if (iterations < 0)
    throw std::invalid_argument("params: iterations must be non-negative");
  if (!(neighbor_prob >= 0.0 && neighbor_prob <= 1.0))
    throw std::invalid_argument("params: neighbor_prob must be in [0, 1]");
}

std::vector<ParentInfo> select_parents(int subproblem,
                                       const std::vector<Subproblem>& pop,
                                       const ReferencePoint& z,
                                       const AlgoParams& params,
                                       std::mt19937_64& rng) {
  const auto& sp = pop[subproblem];
  // One Bernoulli draw decides the pool; it is consumed even when the
  // neighborhood is too small, keeping the stream layout fixed.
  const bool want_hood = rng::uniform01(rng) < params.neighbor_prob;
  std::vector<int> pool;
  if (want_hood &&
      sp.neighbors.size() >= static_cast<std::size_t>(params.num_parents)) {
    pool = sp.neighbors;
  } else {
    pool.resize(pop.size());
    std::iota(pool.begin(), pool.end(), 0);
  }
  const auto picked =
      rng::sample_without_replacement(rng, std::move(pool), params.num_parents);

  std::vector<ParentInfo> parents;
  parents.reserve(picked.size());
  for (int idx : picked)
    parents.push_back({pop[idx].incumbent_x, pop[idx].incumbent_f,
                       tchebycheff(pop[idx].incumbent_f, sp.weight, z)});
  std::stable_sort(parents.begin(), parents.end(),
                   [](const ParentInfo& a, const ParentInfo& b) {
                     return a.fitness < b.fitness;
                   });
  return parents;
}

int update_neighbors(int subproblem, const DecisionVector& genes,
                     const ObjectiveVector& f, std::vector<Subproblem>& pop,
                     const ReferencePoint& z) {
  int replaced = 0;
  for (int idx : pop[subproblem].neighbors) {
    Subproblem& nb = pop[idx];
    if (tchebycheff(f, nb.weight, z) <=
        tchebycheff(nb.incumbent_f, nb.weight, z)) {
      nb.incumbent_x = genes;
      nb.incumbent_f = f;
      ++replaced;
    }
  }
  return replaced;
}

RunResult run(int dim, const ObjectiveFn& objective, OffspringOperator& op,
              const AlgoParams& params,
              const std::function<void(const GenerationStat&)>&
                  after_generation) {
  params.validate();
  if (dim < 1) throw std::invalid_argument("run: dim must be positive");

  const int n = params.population;
  const auto weights = das_dennis_weights(n);
  const auto hoods = build_neighborhoods(weights, params.neighbor_size);

  RunResult res;
  ReferencePoint z{std::numeric_limits<double>::infinity(),
                   std::numeric_limits<double>::infinity()};
  long long evals = 0;

  std::vector<Subproblem> pop(n);
  std::mt19937_64 init_rng(params.seed);
  for (int j = 0; j < n; ++j) {
    Subproblem& sp = pop[j];
    sp.index = j;
    sp.weight = weights[j];
    sp.neighbors = hoods[j];
    sp.incumbent_x.resize(dim);
    for (double& g : sp.incumbent_x) g = rng::uniform01(init_rng);
    sp.incumbent_f = objective(sp.incumbent_x);
    ++evals;
    z = update_reference(z, sp.incumbent_f);
  }
  for (const auto& sp : pop) {
    res.initial_objectives.push_back(sp.incumbent_f);
    res.archive.add(sp.incumbent_x, sp.incumbent_f);
  }

  auto record = [&](int gen) {
    res.trace.push_back({gen, evals, res.archive.objective_snapshot()});
    if (after_generation) after_generation(res.trace.back());
  };
  record(0);

  for (int gen = 1; gen <= params.iterations; ++gen) {
    // Phase 1: per-subproblem RNG streams and mating pools, all taken from
    // the state at the start of the generation.
    std::vector<std::mt19937_64> rngs;
    rngs.reserve(n);
    std::vector<OperatorContext> ctxs(n);
    for (int j = 0; j < n; ++j) {
      rngs.emplace_back(params.seed +
                        static_cast<std::uint64_t>(gen) * n + j);
      ctxs[j] =
          OperatorContext{gen,  j,   weights[j], z, dim,
                          params.offspring_per_call,
                          select_parents(j, pop, z, params, rngs[j])};
    }

    // Phase 2: offspring. Work is handed out by subproblem index; any
    // interleaving gives the same proposals because each call only touches
    // its own context and stream.
    std::vector<std::vector<DecisionVector>> proposals(n);
    const int workers = std::clamp(op.max_concurrency(), 1, n);
    if (workers == 1) {
      for (int j = 0; j < n; ++j) proposals[j] = op.propose(ctxs[j], rngs[j]);
    } else {
      std::atomic<int> next{0};
      std::vector<std::thread> threads;
      threads.reserve(workers);
      for (int t = 0; t < workers; ++t)
        threads.emplace_back([&] {
          for (int j = next.fetch_add(1); j < n; j = next.fetch_add(1))
            proposals[j] = op.propose(ctxs[j], rngs[j]);
        });
      for (auto& th : threads) th.join();
    }

    // Phase 3: evaluate and apply in ascending subproblem order.
    for (int j = 0; j < n; ++j) {
      auto& batch = proposals[j];
      if (static_cast<int>(batch.size()) > params.offspring_per_call)
        batch.resize(params.offspring_per_call);
      for (auto& child : batch) {
        if (child.size() != static_cast<std::size_t>(dim))
          throw std::logic_error("run: operator returned wrong dimension");
        for (double& g : child) g = std::clamp(g, 0.0, 1.0);
        const ObjectiveVector f = objective(child);
        ++evals;
        z = update_reference(z, f);
        update_neighbors(j, child, f, pop, z);
        res.archive.add(child, f);
      }
    }
    record(gen);
  }

  res.population = std::move(pop);
  res.reference = z;
  res.evaluations = evals;
  return res;
}

}  // namespace uavisac::moead
